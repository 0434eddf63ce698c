import numpy as np
import pytest
from numpy.testing import assert_array_equal

from featpca import (AutoencoderConfig, ExpressionMatrix, NumericalDivergenceError, ValidationError, impute_zeros, load_model,
                     reconstruct, save_model, train)
from featpca.impute import init_params, loss_and_grad


def matrix(values):
    values = np.asarray(values, dtype=np.float64)
    n, d = values.shape
    return ExpressionMatrix(values, [f"c{i}" for i in range(n)], [f"g{j}" for j in range(d)])


def counts(n=30, d=10, seed=0):
    return matrix(np.random.default_rng(seed).poisson(2.0, size=(n, d)).astype(np.float64))


@pytest.mark.parametrize("activation", ["tanh", "sigmoid"])
def test_gradient_matches_finite_differences(activation):
    rng = np.random.default_rng(0)
    clean = rng.random((5, 8))
    noisy = clean * (rng.random((5, 8)) >= 0.2)
    params = init_params(8, 3, rng)
    params[1] = rng.normal(0.0, 0.1, size=3)
    params[3] = rng.normal(0.0, 0.1, size=8)
    _, grads = loss_and_grad(params, noisy, clean, activation)

    eps = 1e-5
    for p, g in zip(params, grads):
        numeric = np.zeros_like(p)
        for idx in np.ndindex(p.shape):
            old = p[idx]
            p[idx] = old + eps
            up, _ = loss_and_grad(params, noisy, clean, activation)
            p[idx] = old - eps
            down, _ = loss_and_grad(params, noisy, clean, activation)
            p[idx] = old
            numeric[idx] = (up - down) / (2 * eps)
        rel = np.linalg.norm(g - numeric) / max(np.linalg.norm(g) + np.linalg.norm(numeric), 1e-12)
        assert rel <= 1e-4


def test_training_is_deterministic():
    m = counts()
    cfg = AutoencoderConfig(bottleneck=4, epochs=5, seed=7)
    a, b = train(m, cfg), train(m, cfg)
    for pa, pb in zip(a.params(), b.params()):
        assert_array_equal(pa, pb)
    assert a.loss_history == b.loss_history


def test_seed_changes_weights():
    m = counts()
    a = train(m, AutoencoderConfig(bottleneck=4, epochs=2, seed=1))
    b = train(m, AutoencoderConfig(bottleneck=4, epochs=2, seed=2))
    assert not np.array_equal(a.w_enc, b.w_enc)


def test_constant_matrix_is_learned():
    m = matrix(np.full((20, 6), 1.0))
    model = train(m, AutoencoderConfig(bottleneck=2, epochs=2000, batch_size=20, learning_rate=1e-2, noise_mask_prob=0.0))
    assert model.loss_history[-1] < model.loss_history[0]
    assert np.abs(reconstruct(m, model) - 1.0).max() < 1e-3


def test_median_loss_decreases_over_seeds():
    m = counts(40, 12)
    models = [train(m, AutoencoderConfig(bottleneck=4, epochs=20, learning_rate=1e-2, seed=seed)) for seed in range(5)]
    first = np.median([model.loss_history[0] for model in models])
    last = np.median([model.loss_history[-1] for model in models])
    assert last < first


def test_zero_epochs_keeps_initial_weights():
    model = train(counts(), AutoencoderConfig(bottleneck=3, epochs=0))
    assert model.loss_history == []
    assert np.all(model.b_enc == 0)


def test_impute_without_zeros_is_identity():
    m = matrix(np.random.default_rng(1).random((10, 6)) + 0.5)
    model = train(m, AutoencoderConfig(bottleneck=2, epochs=2))
    assert impute_zeros(m, model) == m


def test_impute_touches_only_zeros():
    x = np.random.default_rng(2).random((10, 6)) + 0.5
    x[2, 3] = 0.0
    x[7] = 0.0
    m = matrix(x)
    model = train(m, AutoencoderConfig(bottleneck=2, epochs=3))
    out = impute_zeros(m, model).values
    recon = np.maximum(reconstruct(m, model), 0.0)
    mask = x != 0
    assert_array_equal(out[mask], x[mask])
    assert out[2, 3] == recon[2, 3]
    assert_array_equal(out[7], recon[7])
    assert np.all(out >= 0)


def test_impute_rejects_other_genes():
    model = train(counts(d=10), AutoencoderConfig(bottleneck=3, epochs=1))
    with pytest.raises(ValidationError):
        impute_zeros(counts(d=9), model)


def test_bottleneck_must_be_narrower():
    with pytest.raises(ValidationError):
        train(counts(d=5), AutoencoderConfig(bottleneck=5))


def test_divergence_is_reported():
    with pytest.raises(NumericalDivergenceError):
        train(counts(40, 10), AutoencoderConfig(bottleneck=3, epochs=5, batch_size=8, learning_rate=1e200))


def test_checkpoint_round_trip(tmp_path):
    m = counts()
    model = train(m, AutoencoderConfig(bottleneck=3, epochs=2, activation="sigmoid"))
    path = str(tmp_path / "ae.npz")
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.activation == "sigmoid"
    assert loaded.gene_ids == m.gene_ids
    assert loaded.loss_history == model.loss_history
    assert_array_equal(reconstruct(m, loaded), reconstruct(m, model))


@pytest.mark.slow
def test_rank_one_data_is_reconstructed():
    rng = np.random.default_rng(0)
    x = np.outer(rng.uniform(0.5, 1.5, 50), rng.uniform(0.5, 1.5, 60))
    m = matrix(x)
    model = train(m, AutoencoderConfig(bottleneck=50, epochs=3000, batch_size=50, learning_rate=1e-3, noise_mask_prob=0.0))
    mse = np.mean((reconstruct(m, model) - x) ** 2)
    assert mse < 1e-4 * x.var()
