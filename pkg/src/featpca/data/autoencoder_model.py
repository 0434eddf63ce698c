from dataclasses import dataclass, field

import numpy as np

from .autoencoder_config import Activation
from .expression_matrix import FloatMatrix


@dataclass(frozen=True, eq=False)
class AutoencoderModel:
    """One-hidden-layer autoencoder d' -> bottleneck -> d', linear output"""
    w_enc: FloatMatrix
    b_enc: FloatMatrix
    w_dec: FloatMatrix
    b_dec: FloatMatrix
    activation: Activation = "tanh"
    gene_ids: tuple[str, ...] = ()
    loss_history: list[float] = field(default_factory=list)

    def __repr__(self):
        return f"<AutoencoderModel> {self.n_genes}->{self.bottleneck}->{self.n_genes} ({self.activation})"

    @property
    def n_genes(self):
        return self.w_enc.shape[0]

    @property
    def bottleneck(self):
        return self.w_enc.shape[1]

    def params(self) -> list[FloatMatrix]:
        return [self.w_enc, self.b_enc, self.w_dec, self.b_dec]

    def is_finite(self):
        return all(bool(np.all(np.isfinite(p))) for p in self.params())
