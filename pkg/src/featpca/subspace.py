import math

import numpy as np
import numpy.typing as npt

from .data import Strategy, SubspaceSpec
from .errors import ValidationError


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _check_args(d_prime: int, k: int, overlap_fraction: float, min_k: int = 2):
    if k < min_k:
        raise ValidationError(f"division count must be >= {min_k}, got {k}")
    if d_prime < k:
        raise ValidationError(f"cannot split {d_prime} genes into {k} partitions")
    if not 0 <= overlap_fraction < 1:
        raise ValidationError(f"overlap_fraction must be in [0, 1), got {overlap_fraction}")


def window_geometry(d_prime: int, k: int, overlap_fraction: float):
    """(base, overlap, windows) of the sequential scheme; windows are half-open [start, end)"""
    base = math.ceil(d_prime / k)
    o = _round_half_up(overlap_fraction * base)
    size = base + o
    stride = size - o
    windows: list[tuple[int, int]] = []
    s = 0
    while s < d_prime:
        windows.append((s, min(s + size, d_prime)))
        s += stride
    # a last window that is pure overlap is folded into its predecessor
    if len(windows) > 2 and windows[-1][1] - windows[-1][0] <= o:
        windows.pop()
        windows[-1] = (windows[-1][0], d_prime)
    return base, o, windows


def _windows_over(order: npt.NDArray[np.intp], windows: list[tuple[int, int]]):
    return [order[a:b].tolist() for a, b in windows]


def sequential_subspaces(d_prime: int, k: int, overlap_fraction: float = 0.25) -> SubspaceSpec:
    """
    Contiguous windows of `ceil(d'/k) + o` genes where consecutive windows
    share `o = round(overlap_fraction * ceil(d'/k))` genes. `k=1` gives the
    whole gene set as a single partition.
    """
    _check_args(d_prime, k, overlap_fraction, min_k=1)
    _, o, windows = window_geometry(d_prime, k, overlap_fraction)
    spec = SubspaceSpec(
        partitions=_windows_over(np.arange(d_prime), windows),
        strategy="sequential" if k > 1 else "whole",
        overlap_fraction=overlap_fraction,
        overlap_size=o if k > 1 else 0,
    )
    return spec.check_cover(d_prime)


def shuffled_subspaces(d_prime: int, k: int, overlap_fraction: float = 0.25, seed: int = 0) -> SubspaceSpec:
    """Sequential windows over a seeded random permutation of the genes"""
    _check_args(d_prime, k, overlap_fraction)
    _, o, windows = window_geometry(d_prime, k, overlap_fraction)
    order = np.random.default_rng(seed).permutation(d_prime)
    spec = SubspaceSpec(
        partitions=_windows_over(order, windows),
        strategy="shuffled",
        overlap_fraction=overlap_fraction,
        overlap_size=o,
        seed=seed,
    )
    return spec.check_cover(d_prime)


def random_bucket_subspaces(d_prime: int, k: int, overlap_fraction: float = 0.25, seed: int = 0) -> SubspaceSpec:
    """
    Random gene selection into k buckets.

    Every gene first goes to exactly one bucket (a shuffled round-robin), then
    random (gene, bucket) pairs are added, skipping genes a bucket already
    holds, until there are `round((1 + overlap_fraction) * d')` assignments.
    """
    _check_args(d_prime, k, overlap_fraction)
    rng = np.random.default_rng(seed)
    buckets: list[set[int]] = [set() for _ in range(k)]
    for i, g in enumerate(rng.permutation(d_prime).tolist()):
        buckets[i % k].add(g)

    budget = _round_half_up((1 + overlap_fraction) * d_prime)
    total = d_prime
    while total < budget:
        g = int(rng.integers(d_prime))
        b = int(rng.integers(k))
        if g not in buckets[b]:
            buckets[b].add(g)
            total += 1

    spec = SubspaceSpec(
        partitions=[sorted(b) for b in buckets],
        strategy="random",
        overlap_fraction=overlap_fraction,
        overlap_size=budget - d_prime,
        seed=seed,
    )
    return spec.check_cover(d_prime)


def make_subspaces(strategy: Strategy, d_prime: int, k: int, overlap_fraction: float = 0.25, seed: int = 0) -> SubspaceSpec:
    """Strategies 1-3 by name; gene_cluster needs the expression matrix and lives in `gene_graph`"""
    if strategy == "sequential":
        return sequential_subspaces(d_prime, k, overlap_fraction)
    if strategy == "shuffled":
        return shuffled_subspaces(d_prime, k, overlap_fraction, seed)
    if strategy == "random":
        return random_bucket_subspaces(d_prime, k, overlap_fraction, seed)
    raise ValidationError(f"strategy {strategy!r} is not index-based; use gene_graph.gene_cluster_subspaces")
