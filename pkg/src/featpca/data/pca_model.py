from dataclasses import dataclass

import numpy as np

from .expression_matrix import FloatMatrix


@dataclass(frozen=True, eq=False)
class PcaModel:
    mean: FloatMatrix
    scale: FloatMatrix
    components: FloatMatrix
    eigenvalues: FloatMatrix
    explained_variance_ratio: FloatMatrix

    def __repr__(self):
        return f"<PcaModel> p={self.n_features} m={self.n_components} retained={self.retained_variance:.4f}"

    @property
    def n_features(self):
        return self.components.shape[0]

    @property
    def n_components(self):
        return self.components.shape[1]

    @property
    def retained_variance(self):
        return float(np.sum(self.explained_variance_ratio))
