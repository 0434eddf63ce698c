from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..errors import ValidationError


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Counts of cells per (true class, predicted class)"""
    counts: npt.NDArray[np.int64]

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValidationError(f"contingency counts must be 2-d, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ValidationError("contingency counts must be non-negative")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    def __repr__(self):
        return f"<ContingencyTable> {self.counts.shape[0]}×{self.counts.shape[1]}, n={self.n}"

    @property
    def n(self):
        return int(self.counts.sum())

    @property
    def row_sums(self):
        return self.counts.sum(axis=1)

    @property
    def col_sums(self):
        return self.counts.sum(axis=0)
