import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from featpca import ExpressionMatrix, HvgConfig, ValidationError, gene_dispersions, normalize_log, select_hvg


def matrix(values):
    values = np.asarray(values, dtype=np.float64)
    n, d = values.shape
    return ExpressionMatrix(values, [f"c{i}" for i in range(n)], [f"g{j}" for j in range(d)])


def test_normalize_scales_then_logs():
    m = normalize_log(matrix([[2.0, 2.0]]), target_sum=4)
    assert_allclose(m.values, [[math.log(3), math.log(3)]])


def test_normalize_rows_sum_to_target():
    rng = np.random.default_rng(0)
    m = normalize_log(matrix(rng.poisson(3.0, size=(20, 30)) + 1.0), target_sum=1e4)
    assert_allclose(np.expm1(m.values).sum(axis=1), 1e4, rtol=1e-9)


def test_normalize_keeps_equal_rows_equal():
    m = normalize_log(matrix([[5.0, 5.0, 5.0], [1.0, 1.0, 1.0]]))
    assert_allclose(m.values[0], m.values[1])
    assert_allclose(m.values[0], m.values[0, 0])


def test_normalize_zero_cell():
    with pytest.raises(ValidationError, match="c1"):
        normalize_log(matrix([[1.0, 2.0], [0.0, 0.0]]))


def test_hvg_keeps_every_gene_when_asked_for_all():
    rng = np.random.default_rng(1)
    m = matrix(rng.random((10, 5)))
    top = select_hvg(m, HvgConfig(n_top_genes=5))
    assert sorted(top.gene_ids) == sorted(m.gene_ids)


def test_hvg_count_is_capped():
    rng = np.random.default_rng(1)
    m = matrix(rng.random((10, 5)))
    assert select_hvg(m, HvgConfig(n_top_genes=50)).n_genes == 5
    assert select_hvg(m, HvgConfig(n_top_genes=3)).n_genes == 3


def test_hvg_prefers_variable_gene():
    m = matrix([[0.0, 3.0], [10.0, 3.0]] * 5)
    assert select_hvg(m, HvgConfig(n_top_genes=1)).gene_ids == ("g0",)


def test_hvg_single_bin_matches_brute_force():
    rng = np.random.default_rng(2)
    x = rng.gamma(2.0, 1.0, size=(25, 6)) * np.array([1, 2, 3, 4, 5, 6])
    m = matrix(x)
    mean = x.mean(axis=0)
    dispersion = x.var(axis=0, ddof=1) / mean
    expected = [m.gene_ids[j] for j in np.argsort(-dispersion)[:3]]
    assert list(select_hvg(m, HvgConfig(n_top_genes=3, n_bins=1)).gene_ids) == expected


def test_dispersion_zscores_within_bin():
    rng = np.random.default_rng(4)
    x = rng.gamma(2.0, 1.0, size=(40, 8))
    df = gene_dispersions(matrix(x), n_bins=1)
    disp = x.var(axis=0, ddof=1) / x.mean(axis=0)
    assert_allclose(df["dispersion"], disp)
    assert_allclose(df["dispersion_norm"], (disp - disp.mean()) / disp.std(ddof=1))


def test_hvg_is_permutation_equivariant():
    rng = np.random.default_rng(5)
    m = matrix(rng.gamma(2.0, 1.0, size=(30, 40)) * rng.uniform(0.5, 3.0, size=40))
    perm = rng.permutation(40)
    cfg = HvgConfig(n_top_genes=12)
    assert set(select_hvg(m, cfg).gene_ids) == set(select_hvg(m.select_genes(perm), cfg).gene_ids)


def test_hvg_result_is_a_subset():
    rng = np.random.default_rng(6)
    m = matrix(rng.poisson(2.0, size=(30, 50)))
    top = select_hvg(normalize_log(m.with_values(m.values + 1.0)), HvgConfig(n_top_genes=20))
    assert set(top.gene_ids) <= set(m.gene_ids)
    assert len(set(top.gene_ids)) == 20
    j = m.gene_ids.index(top.gene_ids[0])
    assert top.values[0, 0] == pytest.approx(normalize_log(m.with_values(m.values + 1.0)).values[0, j])
