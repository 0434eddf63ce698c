import logging

import numpy as np
import numpy.typing as npt
import scipy.linalg

from .data import EmbeddingBlock, ExpressionMatrix, FloatMatrix, PcaModel, SubspaceSpec
from .errors import ValidationError
from .utils import map_ordered

RATIO_TOL = 1e-12
RANK_TOL = 1e-12


def _orient(components: FloatMatrix):
    idx = np.argmax(np.abs(components), axis=0)
    signs = np.sign(components[idx, np.arange(components.shape[1])])
    signs[signs == 0] = 1.0
    return components * signs


def _eig_desc(z: FloatMatrix) -> tuple[FloatMatrix, FloatMatrix]:
    n, p = z.shape
    if p <= n:
        evals, evecs = scipy.linalg.eigh(z.T @ z / n)
        order = np.argsort(evals, kind="stable")[::-1]
        return np.maximum(evals[order], 0.0), evecs[:, order]
    evals, u = scipy.linalg.eigh(z @ z.T / n)
    order = np.argsort(evals, kind="stable")[::-1]
    evals, u = evals[order], u[:, order]
    keep = evals > RANK_TOL * max(float(evals[0]), 1.0)
    evals, u = evals[keep], u[:, keep]
    return evals, (z.T @ u) / np.sqrt(n * evals)


def pca_fit(block: npt.ArrayLike, variance_threshold: float = 0.95) -> PcaModel:
    """
    Standardize the columns (population std, constant columns keep scale 1),
    diagonalize their covariance and keep the smallest number of leading
    components whose explained variance reaches `variance_threshold`, capped
    at `min(n - 1, p)`.
    """
    x = np.asarray(block, dtype=np.float64)
    if x.ndim != 2:
        raise ValidationError(f"block must be 2-d, got shape {x.shape}")
    n, p = x.shape
    if n < 2:
        raise ValidationError(f"PCA needs at least 2 cells, got {n}")
    if p < 1:
        raise ValidationError("PCA needs at least 1 feature")
    if not 0 < variance_threshold <= 1:
        raise ValidationError("variance_threshold must be in (0, 1]")

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    scale = np.where(std > 0, std, 1.0)
    z = (x - mean) / scale
    evals, evecs = _eig_desc(z)
    total = float(evals.sum()) if len(evals) else 0.0

    if total <= 0:
        # all features constant: a single zero-variance axis
        components = np.zeros((p, 1))
        components[0, 0] = 1.0
        return PcaModel(mean, scale, components, np.zeros(1), np.zeros(1))

    ratio = evals / total
    reached = np.flatnonzero(np.cumsum(ratio) >= variance_threshold - RATIO_TOL)
    m = int(reached[0]) + 1 if len(reached) else len(ratio)
    m = max(1, min(m, n - 1, p, len(ratio)))
    components = _orient(evecs[:, :m])
    return PcaModel(mean, scale, components, evals[:m], ratio[:m])


def pca_transform(model: PcaModel, block: npt.ArrayLike) -> FloatMatrix:
    x = np.asarray(block, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != model.n_features:
        raise ValidationError(f"block has shape {x.shape}, model expects {model.n_features} features")
    return ((x - model.mean) / model.scale) @ model.components


def reduce_subspaces(m: ExpressionMatrix, spec: SubspaceSpec, variance_threshold: float = 0.95, n_jobs: int = 1) -> list[EmbeddingBlock]:
    """Independent PCA of every partition's columns; blocks come back in partition order"""
    spec.check_cover(m.n_genes)

    def fit(i: int):
        block = m.values[:, spec.indices(i)]
        model = pca_fit(block, variance_threshold)
        return EmbeddingBlock(pca_transform(model, block), i, model.retained_variance, model)

    blocks = map_ordered(fit, range(spec.k), n_jobs)
    logging.debug("Reduced %d subspaces to widths %s", len(blocks), [b.n_components for b in blocks])
    return blocks


def merge_blocks(blocks: list[EmbeddingBlock]) -> FloatMatrix:
    if not blocks:
        raise ValidationError("no blocks to merge")
    n = blocks[0].n_cells
    for b in blocks:
        if b.n_cells != n:
            raise ValidationError(f"block {b.source_partition} has {b.n_cells} cells, expected {n}")
    return np.hstack([b.scores for b in blocks])


def block_widths(blocks: list[EmbeddingBlock]):
    return [b.n_components for b in blocks]
