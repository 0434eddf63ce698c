import numpy as np
import pytest

from featpca import Stage, ValidationError, derive_seed, make_toy_dataset, round_sig


def test_toy_shape_and_labels():
    m, labels = make_toy_dataset(n_cells=50, n_genes=100, n_clusters=5, informative_per_cluster=10)
    assert m.shape == (50, 100)
    assert np.bincount(labels.labels).tolist() == [10] * 5
    assert labels.class_names == tuple(f"type_{c}" for c in range(5))


def test_toy_counts():
    m, _ = make_toy_dataset(n_cells=40, n_genes=80, n_clusters=2, informative_per_cluster=10)
    assert np.all(m.values >= 0)
    assert np.array_equal(m.values, np.round(m.values))
    assert np.all(m.values.sum(axis=1) > 0)


def test_toy_informative_blocks_are_overexpressed():
    m, labels = make_toy_dataset(n_cells=200, n_genes=100, n_clusters=2, informative_per_cluster=20, fold_change=8.0)
    block = m.values[:, :20].sum(axis=1)
    assert block[labels.labels == 0].mean() > 3 * block[labels.labels == 1].mean()


def test_toy_is_seeded():
    assert make_toy_dataset(n_cells=20, n_genes=30, n_clusters=2, informative_per_cluster=5, seed=3)[0] == \
        make_toy_dataset(n_cells=20, n_genes=30, n_clusters=2, informative_per_cluster=5, seed=3)[0]


def test_toy_rejects_impossible_layout():
    with pytest.raises(ValidationError):
        make_toy_dataset(n_cells=10, n_genes=20, n_clusters=3, informative_per_cluster=10)


def test_stage_seeds_are_independent():
    seeds = {derive_seed(0, stage, k) for stage in (Stage.shuffled, Stage.random) for k in range(2, 21)}
    assert len(seeds) == 38
    assert derive_seed(5, Stage.kmeans, 0) == derive_seed(5, Stage.kmeans, 0)
    assert derive_seed(5, Stage.kmeans, 0) != derive_seed(6, Stage.kmeans, 0)
    assert 0 <= derive_seed(1, Stage.leiden, 0) < 2 ** 64


def test_round_sig():
    assert round_sig(1 / 3) == 0.3333333333
    assert round_sig(0.0) == 0.0
    assert round_sig(123456789012.0) == 123456789000.0
