from dataclasses import dataclass

from .expression_matrix import FloatMatrix
from .pca_model import PcaModel


@dataclass(frozen=True, eq=False)
class EmbeddingBlock:
    scores: FloatMatrix
    source_partition: int
    retained_variance: float
    model: PcaModel | None = None

    def __repr__(self):
        return f"<EmbeddingBlock> [{self.source_partition}] {self.n_cells}×{self.n_components} retained={self.retained_variance:.4f}"

    @property
    def n_cells(self):
        return self.scores.shape[0]

    @property
    def n_components(self):
        return self.scores.shape[1]
