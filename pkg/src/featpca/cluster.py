import logging

import numpy as np
import numpy.typing as npt

from .data import ClusterAssignment, FloatMatrix, IntVector, KmeansConfig, LabelSet
from .errors import ValidationError
from .utils import map_ordered


def _sq_dists(x: FloatMatrix, centers: FloatMatrix) -> FloatMatrix:
    d = np.empty((x.shape[0], centers.shape[0]))
    for j, c in enumerate(centers):
        diff = x - c
        d[:, j] = np.einsum("ij,ij->i", diff, diff)
    return d


def _assign(x: FloatMatrix, centers: FloatMatrix) -> tuple[IntVector, FloatMatrix]:
    d = _sq_dists(x, centers)
    labels = np.argmin(d, axis=1)
    return labels, d[np.arange(len(x)), labels]


def kmeans_plus_plus(x: FloatMatrix, k: int, rng: np.random.Generator) -> FloatMatrix:
    """k-means++ seeding: each new center is drawn with probability proportional to its squared distance"""
    n = len(x)
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.integers(n)]
    d2 = _sq_dists(x, centers[:1])[:, 0]
    for c in range(1, k):
        total = float(d2.sum())
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(d2), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        else:
            idx = int(rng.integers(n))
        centers[c] = x[idx]
        d2 = np.minimum(d2, _sq_dists(x, centers[c:c + 1])[:, 0])
    return centers


def _repair_empty(labels: IntVector, own: FloatMatrix, k: int):
    own = own.copy()
    for _ in range(k):
        empty = np.flatnonzero(np.bincount(labels, minlength=k) == 0)
        if len(empty) == 0:
            break
        for j in empty.tolist():
            far = int(np.argmax(own))
            labels[far] = j
            own[far] = -1.0
    return labels


def _lloyd(x: FloatMatrix, k: int, cfg: KmeansConfig, rng: np.random.Generator) -> ClusterAssignment:
    centers = kmeans_plus_plus(x, k, rng)
    history: list[float] = []
    n_iter = 0
    for n_iter in range(1, cfg.max_iter + 1):
        labels, own = _assign(x, centers)
        history.append(float(own.sum()))
        labels = _repair_empty(labels, own, k)
        new = np.empty_like(centers)
        for j in range(k):
            new[j] = x[labels == j].mean(axis=0)
        shift = float(np.max(np.linalg.norm(new - centers, axis=1)))
        centers = new
        if shift <= cfg.tol:
            break
    labels, own = _assign(x, centers)
    inertia = float(own.sum())
    history.append(inertia)
    return ClusterAssignment(labels.astype(np.int64), inertia, n_iter, centers, history)


def kmeans(points: npt.ArrayLike, cfg: KmeansConfig) -> ClusterAssignment:
    """
    Lloyd's algorithm from k-means++ seeds, best of `cfg.n_init` restarts.

    Restart seeds are spawned from `cfg.seed`, so the result does not depend on
    `cfg.n_jobs`; equal inertia goes to the lower restart index.
    """
    cfg.valid()
    x = np.asarray(points, dtype=np.float64)
    if x.ndim != 2:
        raise ValidationError(f"points must be 2-d, got shape {x.shape}")
    n = len(x)
    k = cfg.n_clusters
    if k < 1:
        raise ValidationError("n_clusters must be >= 1")
    if n < k:
        raise ValidationError(f"cannot form {k} clusters from {n} points")
    if not np.all(np.isfinite(x)):
        raise ValidationError("points contain non-finite values")

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.n_init)
    runs = map_ordered(lambda ss: _lloyd(x, k, cfg, np.random.default_rng(ss)), seeds, cfg.n_jobs)
    best = min(range(len(runs)), key=lambda i: (runs[i].inertia, i))
    r = runs[best]
    logging.debug("k-means k=%d: best restart %d/%d, inertia %.6g after %d iterations", k, best + 1, len(runs), r.inertia, r.n_iter)
    return r


def labels_to_label_set(a: ClusterAssignment) -> LabelSet:
    return a.to_label_set()
