from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np
import numpy.typing as npt

from .data import ContingencyTable, LabelSet
from .errors import ValidationError

type Labels = LabelSet | Sequence[int] | npt.NDArray[np.generic]


def _as_label_set(v: Labels) -> LabelSet:
    return v if isinstance(v, LabelSet) else LabelSet.from_values(np.asarray(v))


def contingency_table(a: Labels, b: Labels) -> ContingencyTable:
    la, lb = _as_label_set(a), _as_label_set(b)
    if len(la) != len(lb):
        raise ValidationError(f"labelings differ in length: {len(la)} != {len(lb)}")
    counts = np.zeros((la.n_classes, lb.n_classes), dtype=np.int64)
    np.add.at(counts, (la.labels, lb.labels), 1)
    return ContingencyTable(counts)


def _sum_pairs(values: npt.NDArray[np.int64]) -> int:
    return sum(comb(int(v), 2) for v in values.ravel())


def _pair_counts(a: Labels, b: Labels):
    """(pairs together in both, pairs together in a, pairs together in b, all pairs) as exact ints"""
    t = contingency_table(a, b)
    if t.n < 2:
        raise ValidationError(f"at least 2 cells are needed, got {t.n}")
    return _sum_pairs(t.counts), _sum_pairs(t.row_sums), _sum_pairs(t.col_sums), comb(t.n, 2)


def rand_index(a: Labels, b: Labels) -> float:
    """Fraction of cell pairs on which the two labelings agree"""
    both, in_a, in_b, total = _pair_counts(a, b)
    return float(Fraction(total + 2 * both - in_a - in_b, total))


def adjusted_rand_index(a: Labels, b: Labels) -> float:
    """
    Rand index corrected for chance, from the contingency table.
    Returns 0 when the correction leaves nothing to normalize by
    (both labelings put every cell in one class, or every cell alone).
    """
    both, in_a, in_b, total = _pair_counts(a, b)
    expected = Fraction(in_a * in_b, total)
    max_index = Fraction(in_a + in_b, 2)
    denom = max_index - expected
    if denom == 0:
        return 0.0
    return float((both - expected) / denom)
