from dataclasses import dataclass, field

import numpy as np

from .expression_matrix import FloatMatrix
from .label_set import IntVector, LabelSet


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    labels: IntVector
    inertia: float
    n_iter: int
    centers: FloatMatrix
    inertia_history: list[float] = field(default_factory=list)

    def __repr__(self):
        return f"<ClusterAssignment> {len(self.labels)} points, k={self.centers.shape[0]}, inertia={self.inertia:.6g}"

    def to_label_set(self):
        """Labels renumbered to [0, C) over the clusters actually used"""
        return LabelSet.from_values(np.asarray(self.labels))
