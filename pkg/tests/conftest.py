import numpy as np
import pytest

from featpca import ExpressionMatrix, LabelSet, PipelineConfig, make_toy_dataset


def gaussian_mixture(n_per_cluster: int = 30, n_clusters: int = 4, n_genes: int = 40, separation: float = 10.0, seed: int = 0):
    """Well-separated isotropic clusters as an expression matrix, with their labels"""
    rng = np.random.default_rng(seed)
    centers = rng.normal(0.0, separation, size=(n_clusters, n_genes))
    labels = np.repeat(np.arange(n_clusters), n_per_cluster)
    x = centers[labels] + rng.normal(0.0, 1.0, size=(len(labels), n_genes))
    m = ExpressionMatrix(
        x,
        [f"c{i}" for i in range(len(labels))],
        [f"g{j}" for j in range(n_genes)],
    )
    return m, LabelSet(labels)


@pytest.fixture
def mixture():
    return gaussian_mixture()


@pytest.fixture(scope="session")
def toy_small():
    return make_toy_dataset(n_cells=60, n_genes=120, n_clusters=3, informative_per_cluster=15, fold_change=6.0, seed=1)


@pytest.fixture
def fast_config():
    """Sweep settings small enough for unit tests: no preprocessing, no imputation, k in 2..4"""
    return PipelineConfig.new({
        "preprocess": False,
        "impute": False,
        "strategies": ["sequential", "shuffled", "random"],
        "k_min": 2,
        "k_max": 4,
        "kmeans": {"n_init": 4},
    }).valid()
