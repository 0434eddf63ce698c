from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from ..errors import ValidationError

type FloatMatrix = npt.NDArray[np.float64]


def _check_unique(ids: Sequence[str], what: str):
    seen: set[str] = set()
    for i in ids:
        if i in seen:
            raise ValidationError(f"duplicate {what} id: {i!r}")
        seen.add(i)


@dataclass(frozen=True, eq=False)
class ExpressionMatrix:
    """
    Dense cells × genes expression matrix.

    `values` is stored as a read-only float64 array, so a matrix can be shared
    between threads without copying.
    """
    values: FloatMatrix
    cell_ids: tuple[str, ...]
    gene_ids: tuple[str, ...]

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, order="C")
        if values.ndim != 2:
            raise ValidationError(f"expression values must be 2-d, got shape {values.shape}")
        cell_ids = tuple(str(v) for v in self.cell_ids)
        gene_ids = tuple(str(v) for v in self.gene_ids)
        n, d = values.shape
        if n != len(cell_ids):
            raise ValidationError(f"matrix has {n} rows but {len(cell_ids)} cell ids")
        if d != len(gene_ids):
            raise ValidationError(f"matrix has {d} columns but {len(gene_ids)} gene ids")
        _check_unique(cell_ids, "cell")
        _check_unique(gene_ids, "gene")
        if not np.all(np.isfinite(values)):
            i, j = np.argwhere(~np.isfinite(values))[0]
            raise ValidationError(f"non-finite value at cell {cell_ids[i]!r}, gene {gene_ids[j]!r}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "cell_ids", cell_ids)
        object.__setattr__(self, "gene_ids", gene_ids)

    def __repr__(self):
        return f"<ExpressionMatrix> {self.n_cells} cells × {self.n_genes} genes"

    def __eq__(self, other: object):
        if not isinstance(other, ExpressionMatrix):
            return NotImplemented
        return (self.cell_ids == other.cell_ids and self.gene_ids == other.gene_ids
                and np.array_equal(self.values, other.values))

    @property
    def shape(self):
        return self.values.shape

    @property
    def n_cells(self):
        return self.values.shape[0]

    @property
    def n_genes(self):
        return self.values.shape[1]

    def with_values(self, values: FloatMatrix):
        """Same identifiers, new values of the same shape"""
        if values.shape != self.values.shape:
            raise ValidationError(f"shape mismatch: {values.shape} != {self.values.shape}")
        return ExpressionMatrix(values, self.cell_ids, self.gene_ids)

    def select_genes(self, indices: Sequence[int] | npt.NDArray[np.intp]):
        idx = np.asarray(indices, dtype=np.intp)
        return ExpressionMatrix(self.values[:, idx], self.cell_ids, tuple(self.gene_ids[i] for i in idx))

    def transpose(self):
        """Swap the roles of rows and columns (genes become cells)"""
        return ExpressionMatrix(self.values.T, self.gene_ids, self.cell_ids)
