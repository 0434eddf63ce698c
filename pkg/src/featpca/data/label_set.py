from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from ..errors import ValidationError

type IntVector = npt.NDArray[np.int64]


@dataclass(frozen=True, eq=False)
class LabelSet:
    """Per-cell integer labels in [0, C), every class present at least once"""
    labels: IntVector
    class_names: tuple[str, ...] | None = None

    def __post_init__(self):
        labels = np.array(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValidationError(f"labels must be 1-d, got shape {labels.shape}")
        n_classes = int(labels.max()) + 1 if len(labels) else 0
        if len(labels) and labels.min() < 0:
            raise ValidationError("labels must be non-negative")
        present = np.bincount(labels, minlength=n_classes) if len(labels) else np.zeros(0, np.int64)
        if np.any(present == 0):
            missing = int(np.flatnonzero(present == 0)[0])
            raise ValidationError(f"label {missing} does not appear (labels must cover [0, {n_classes}))")
        class_names = self.class_names
        if class_names is not None:
            class_names = tuple(str(v) for v in class_names)
            if len(class_names) != n_classes:
                raise ValidationError(f"{len(class_names)} class names for {n_classes} classes")
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_names", class_names)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"<LabelSet> {len(self)} cells, {self.n_classes} classes"

    def __eq__(self, other: object):
        if not isinstance(other, LabelSet):
            return NotImplemented
        return self.class_names == other.class_names and np.array_equal(self.labels, other.labels)

    @property
    def n_classes(self):
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    @staticmethod
    def from_values(values: Sequence[object] | npt.NDArray[np.generic]):
        """Encode arbitrary labels; classes are numbered in sorted order of their values"""
        arr = np.asarray(values)
        if arr.ndim != 1:
            raise ValidationError(f"labels must be 1-d, got shape {arr.shape}")
        uniques, inverse = np.unique(arr, return_inverse=True)
        return LabelSet(inverse.astype(np.int64), tuple(str(v) for v in uniques))
