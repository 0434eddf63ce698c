from typing import Literal, override

from ..jsonobj import JsonObj
from .autoencoder_config import AutoencoderConfig
from .hvg_config import HvgConfig
from .kmeans_config import KmeansConfig
from .subspace_spec import STRATEGIES, Strategy

type Orientation = Literal["cells-in-rows", "genes-in-rows"]

MAX_DIVISIONS = 20


class PipelineConfig(JsonObj):
    input_path: str = JsonObj.field(default="", desc="expression matrix (.tsv/.csv/.txt dense or .mtx sparse)")
    orientation: Orientation = JsonObj.field(default="cells-in-rows", desc="layout of a dense input file")
    delimiter: str = JsonObj.field(default="\t", desc="field delimiter of a dense input file")
    cell_ids_path: str = JsonObj.field(default="", desc="cell id file for .mtx input")
    gene_ids_path: str = JsonObj.field(default="", desc="gene id file for .mtx input")
    labels_path: str = JsonObj.field(default="", desc="ground-truth labels (cell_id, label)")
    preprocess: bool = JsonObj.field(default=True, desc="log-normalize and select highly variable genes")
    hvg: HvgConfig = JsonObj.field(default_factory=HvgConfig)
    impute: bool = JsonObj.field(default=True, desc="impute zeros with a denoising autoencoder")
    autoencoder: AutoencoderConfig = JsonObj.field(default_factory=AutoencoderConfig)
    compare_imputation: bool = JsonObj.field(default=False, desc="also sweep the non-imputed matrix")
    strategies: list[Strategy] = JsonObj.field(default_factory=lambda: list(STRATEGIES), desc="subspacing strategies to sweep")
    k_min: int = JsonObj.field(default=2, desc="smallest division count")
    k_max: int = JsonObj.field(default=MAX_DIVISIONS, desc="largest division count")
    allow_large_k: bool = JsonObj.field(default=False, desc=f"permit k_max above {MAX_DIVISIONS}")
    overlap_fraction: float = JsonObj.field(default=0.25, desc="overlap as a fraction of the base partition size")
    variance_threshold: float = JsonObj.field(default=0.95, desc="explained variance retained by each PCA")
    n_neighbors: int = JsonObj.field(default=15, desc="gene graph neighbours (gene_cluster strategy)")
    resolution: float = JsonObj.field(default=1.0, desc="Leiden modularity resolution (gene_cluster strategy)")
    kmeans: KmeansConfig = JsonObj.field(default_factory=KmeansConfig)
    seed: int = JsonObj.field(default=0, desc="master seed, every stage seed is derived from it")
    n_jobs: int = JsonObj.field(default=1, desc="threads for trials and per-block PCA")
    output_folder: str = JsonObj.field(default="featpca_out", desc="where reports and plot data are written")
    verbose_subspaces: bool = JsonObj.field(default=False, desc="write full gene index lists into the report")

    @override
    def _check(self):
        if self.k_min < 2:
            return "k_min must be >= 2"
        if self.k_max < self.k_min:
            return "k_max must be >= k_min"
        if self.k_max > MAX_DIVISIONS and not self.allow_large_k:
            return f"k_max must be <= {MAX_DIVISIONS} (set allow_large_k to override)"
        if not 0 < self.variance_threshold <= 1:
            return "variance_threshold must be in (0, 1]"
        if not 0 <= self.overlap_fraction < 1:
            return "overlap_fraction must be in [0, 1)"
        if self.n_neighbors < 1:
            return "n_neighbors must be >= 1"
        if not self.resolution > 0:
            return "resolution must be > 0"
        if self.n_jobs < 1:
            return "n_jobs must be >= 1"
        if len(set(self.strategies)) != len(self.strategies):
            return "strategies must not repeat"
        if self.impute and self.preprocess and self.autoencoder.bottleneck >= self.hvg.n_top_genes:
            return f"autoencoder.bottleneck ({self.autoencoder.bottleneck}) must be smaller than hvg.n_top_genes ({self.hvg.n_top_genes})"
        return None
