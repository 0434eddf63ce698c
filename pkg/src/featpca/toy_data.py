import numpy as np

from .data import ExpressionMatrix, LabelSet
from .errors import ValidationError


def make_toy_dataset(
    n_cells: int = 300,
    n_genes: int = 2000,
    n_clusters: int = 5,
    informative_per_cluster: int = 40,
    fold_change: float = 4.0,
    seed: int = 0,
) -> tuple[ExpressionMatrix, LabelSet]:
    """
    Synthetic count matrix with known cell types.

    Every gene has a gamma-distributed base rate. Cluster c over-expresses one
    contiguous block of `informative_per_cluster` genes by `fold_change`;
    the blocks are spread evenly along the gene axis and every other gene is
    noise. Counts are Poisson draws scaled by a per-cell library size.
    """
    if n_clusters < 1 or n_cells < n_clusters:
        raise ValidationError(f"cannot make {n_clusters} clusters from {n_cells} cells")
    if informative_per_cluster < 1 or n_clusters * informative_per_cluster > n_genes:
        raise ValidationError(f"{n_clusters} blocks of {informative_per_cluster} genes do not fit in {n_genes} genes")
    if not fold_change > 0:
        raise ValidationError("fold_change must be > 0")

    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.arange(n_cells) % n_clusters)
    base = rng.gamma(2.0, 1.0, size=n_genes)
    rates = np.tile(base, (n_cells, 1))
    stride = n_genes // n_clusters
    for c in range(n_clusters):
        block = slice(c * stride, c * stride + informative_per_cluster)
        rates[labels == c, block] *= fold_change
    size = rng.lognormal(0.0, 0.2, size=n_cells)
    counts = rng.poisson(rates * size[:, None]).astype(np.float64)

    # a cell without counts cannot be normalized
    empty = counts.sum(axis=1) == 0
    counts[empty, 0] = 1.0

    width = len(str(max(n_cells, n_genes)))
    m = ExpressionMatrix(
        counts,
        [f"cell_{i:0{width}d}" for i in range(n_cells)],
        [f"gene_{j:0{width}d}" for j in range(n_genes)],
    )
    return m, LabelSet(labels, tuple(f"type_{c}" for c in range(n_clusters)))
