# feature-subspace PCA clustering for single-cell expression data

from .errors import DataIOError, FeatpcaError, MatrixParseError, NumericalDivergenceError, ValidationError
from .jsonobj import JsonObj, JsonParseError
from .utils import Stage, derive_seed, round_sig

from .data import (
    AutoencoderConfig, AutoencoderModel, ClusterAssignment, CommunityPartition, ContingencyTable, EmbeddingBlock,
    ExpressionMatrix, GeneGraph, HvgConfig, KmeansConfig, LabelSet, PcaModel, PipelineConfig, PipelineReport,
    StrategyResult, SubspaceSpec, SubspaceSummary, TrialResult, STRATEGIES, MAX_DIVISIONS,
)

from .matrix_io import (
    load_dense, save_dense, load_matrix_market, load_matrix, load_labels, save_labels,
    save_report, load_report, save_embedding, load_embedding,
)
from .datasets import DATASETS, DatasetInfo, load_dataset
from .preprocess import normalize_log, gene_dispersions, select_hvg
from .impute import train, reconstruct, impute_zeros, save_model, load_model
from .subspace import sequential_subspaces, shuffled_subspaces, random_bucket_subspaces, make_subspaces
from .gene_graph import build_gene_knn_graph, leiden_partition, modularity, communities_to_subspaces, gene_cluster_subspaces
from .reduce import pca_fit, pca_transform, reduce_subspaces, merge_blocks
from .cluster import kmeans, labels_to_label_set
from .metrics import contingency_table, rand_index, adjusted_rand_index
from .pipeline import (
    prepare_matrix, run_baseline, run_trial, run_sweep, run_pipeline,
    best_division_count, win_case_table, emit_plot_data,
)
from .toy_data import make_toy_dataset
from .logger import get_log_fpath, get_log_fpath_all, add_logger, create_log_handler, ParametrizedLogger, TrialLogger
from .settings import Settings, load_settings

__all__ = [
    "DataIOError", "FeatpcaError", "MatrixParseError", "NumericalDivergenceError", "ValidationError",
    "JsonObj", "JsonParseError",
    "Stage", "derive_seed", "round_sig",

    "AutoencoderConfig", "AutoencoderModel", "ClusterAssignment", "CommunityPartition", "ContingencyTable", "EmbeddingBlock",
    "ExpressionMatrix", "GeneGraph", "HvgConfig", "KmeansConfig", "LabelSet", "PcaModel", "PipelineConfig", "PipelineReport",
    "StrategyResult", "SubspaceSpec", "SubspaceSummary", "TrialResult", "STRATEGIES", "MAX_DIVISIONS",

    "load_dense", "save_dense", "load_matrix_market", "load_matrix", "load_labels", "save_labels",
    "save_report", "load_report", "save_embedding", "load_embedding",
    "DATASETS", "DatasetInfo", "load_dataset",
    "normalize_log", "gene_dispersions", "select_hvg",
    "train", "reconstruct", "impute_zeros", "save_model", "load_model",
    "sequential_subspaces", "shuffled_subspaces", "random_bucket_subspaces", "make_subspaces",
    "build_gene_knn_graph", "leiden_partition", "modularity", "communities_to_subspaces", "gene_cluster_subspaces",
    "pca_fit", "pca_transform", "reduce_subspaces", "merge_blocks",
    "kmeans", "labels_to_label_set",
    "contingency_table", "rand_index", "adjusted_rand_index",
    "prepare_matrix", "run_baseline", "run_trial", "run_sweep", "run_pipeline",
    "best_division_count", "win_case_table", "emit_plot_data",
    "make_toy_dataset",
    "get_log_fpath", "get_log_fpath_all", "add_logger", "create_log_handler", "ParametrizedLogger", "TrialLogger",
    "Settings", "load_settings",
]
