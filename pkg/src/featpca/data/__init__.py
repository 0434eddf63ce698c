from .autoencoder_config import Activation, AutoencoderConfig
from .autoencoder_model import AutoencoderModel
from .cluster_assignment import ClusterAssignment
from .contingency_table import ContingencyTable
from .embedding_block import EmbeddingBlock
from .expression_matrix import ExpressionMatrix, FloatMatrix
from .gene_graph import CommunityPartition, Edge, GeneGraph
from .hvg_config import HvgConfig
from .kmeans_config import KmeansConfig
from .label_set import IntVector, LabelSet
from .pca_model import PcaModel
from .pipeline_config import MAX_DIVISIONS, Orientation, PipelineConfig
from .pipeline_report import PipelineReport, StrategyResult, TrialResult
from .subspace_spec import STRATEGIES, SpecStrategy, Strategy, SubspaceSpec, SubspaceSummary

__all__ = [
    "Activation", "AutoencoderConfig",
    "AutoencoderModel",
    "ClusterAssignment",
    "ContingencyTable",
    "EmbeddingBlock",
    "ExpressionMatrix", "FloatMatrix",
    "CommunityPartition", "Edge", "GeneGraph",
    "HvgConfig",
    "KmeansConfig",
    "IntVector", "LabelSet",
    "PcaModel",
    "MAX_DIVISIONS", "Orientation", "PipelineConfig",
    "PipelineReport", "StrategyResult", "TrialResult",
    "STRATEGIES", "SpecStrategy", "Strategy", "SubspaceSpec", "SubspaceSummary",
]
