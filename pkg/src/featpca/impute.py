import logging

import numpy as np

from .data import Activation, AutoencoderConfig, AutoencoderModel, ExpressionMatrix, FloatMatrix
from .errors import DataIOError, NumericalDivergenceError, ValidationError

type Params = list[FloatMatrix]


def _activate(a: FloatMatrix, activation: Activation) -> FloatMatrix:
    if activation == "sigmoid":
        return 0.5 * (1.0 + np.tanh(0.5 * a))
    return np.tanh(a)


def _activate_grad(h: FloatMatrix, activation: Activation) -> FloatMatrix:
    """Derivative of the activation expressed through its output `h`"""
    if activation == "sigmoid":
        return h * (1.0 - h)
    return 1.0 - h * h


def init_params(n_genes: int, bottleneck: int, rng: np.random.Generator) -> Params:
    limit = np.sqrt(6.0 / (n_genes + bottleneck))
    w_enc = rng.uniform(-limit, limit, size=(n_genes, bottleneck))
    w_dec = rng.uniform(-limit, limit, size=(bottleneck, n_genes))
    return [w_enc, np.zeros(bottleneck), w_dec, np.zeros(n_genes)]


def forward(params: Params, x: FloatMatrix, activation: Activation = "tanh"):
    w_enc, b_enc, w_dec, b_dec = params
    h = _activate(x @ w_enc + b_enc, activation)
    return h, h @ w_dec + b_dec


def loss_and_grad(params: Params, noisy: FloatMatrix, clean: FloatMatrix, activation: Activation = "tanh") -> tuple[float, Params]:
    """Mean squared error of reconstructing `clean` from `noisy`, and its gradient w.r.t. every parameter"""
    _, _, w_dec, _ = params
    h, y = forward(params, noisy, activation)
    diff = y - clean
    loss = float(np.mean(diff * diff))
    dy = 2.0 * diff / diff.size
    g_w_dec = h.T @ dy
    g_b_dec = dy.sum(axis=0)
    da = (dy @ w_dec.T) * _activate_grad(h, activation)
    g_w_enc = noisy.T @ da
    g_b_enc = da.sum(axis=0)
    return loss, [g_w_enc, g_b_enc, g_w_dec, g_b_dec]


class Adam:
    def __init__(self, params: Params, learning_rate: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, params: Params, grads: Params):
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.lr * (m / c1) / (np.sqrt(v / c2) + self.eps)


def train(m: ExpressionMatrix, cfg: AutoencoderConfig) -> AutoencoderModel:
    """
    Fit a denoising autoencoder to `m`: every epoch visits the cells in a
    seeded random order, zeroes each input entry with probability
    `cfg.noise_mask_prob` and minimises the error against the clean input.

    :raises NumericalDivergenceError: the loss stops being finite
    """
    cfg.valid()
    n, d = m.shape
    if n < 2:
        raise ValidationError(f"autoencoder needs at least 2 cells, got {n}")
    if cfg.bottleneck >= d:
        raise ValidationError(f"bottleneck ({cfg.bottleneck}) must be smaller than the gene count ({d})")

    rng = np.random.default_rng(cfg.seed)
    params = init_params(d, cfg.bottleneck, rng)
    opt = Adam(params, cfg.learning_rate)
    x = m.values
    history: list[float] = []
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, cfg.batch_size):
            batch = x[order[start:start + cfg.batch_size]]
            if cfg.noise_mask_prob > 0:
                noisy = batch * (rng.random(batch.shape) >= cfg.noise_mask_prob)
            else:
                noisy = batch
            loss, grads = loss_and_grad(params, noisy, batch, cfg.activation)
            if not np.isfinite(loss):
                raise NumericalDivergenceError(
                    f"autoencoder loss is not finite at epoch {epoch + 1}; try a smaller learning_rate (now {cfg.learning_rate})")
            opt.step(params, grads)
            total += loss * len(batch)
        history.append(total / n)
        if epoch == 0 or (epoch + 1) % 10 == 0 or epoch + 1 == cfg.epochs:
            logging.debug("autoencoder epoch %d/%d loss %.6g", epoch + 1, cfg.epochs, history[-1])

    model = AutoencoderModel(*params, activation=cfg.activation, gene_ids=m.gene_ids, loss_history=history)
    if not model.is_finite():
        raise NumericalDivergenceError(f"autoencoder weights are not finite; try a smaller learning_rate (now {cfg.learning_rate})")
    if history:
        logging.info("Autoencoder trained: %d epochs, loss %.6g -> %.6g", cfg.epochs, history[0], history[-1])
    return model


def reconstruct(m: ExpressionMatrix, model: AutoencoderModel) -> FloatMatrix:
    _check_genes(m, model)
    _, y = forward(model.params(), m.values, model.activation)
    return y


def impute_zeros(m: ExpressionMatrix, model: AutoencoderModel) -> ExpressionMatrix:
    """Replace zero entries with the clamped (>= 0) reconstruction; non-zero entries are kept as they are"""
    y = reconstruct(m, model)
    x = m.values
    out = np.where(x != 0, x, np.maximum(y, 0.0))
    logging.info("Imputed %d zero entries", int(np.count_nonzero(x == 0)))
    return m.with_values(out)


def _check_genes(m: ExpressionMatrix, model: AutoencoderModel):
    if model.n_genes != m.n_genes or (model.gene_ids and tuple(model.gene_ids) != m.gene_ids):
        raise ValidationError("autoencoder was trained on a different gene set")


def save_model(model: AutoencoderModel, path: str):
    try:
        with open(path, "wb") as f:
            np.savez(
                f,
                w_enc=model.w_enc, b_enc=model.b_enc, w_dec=model.w_dec, b_dec=model.b_dec,
                activation=np.array(model.activation),
                gene_ids=np.array(model.gene_ids, dtype=str),
                loss_history=np.array(model.loss_history, dtype=np.float64),
            )
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def load_model(path: str) -> AutoencoderModel:
    try:
        with np.load(path, allow_pickle=False) as z:
            model = AutoencoderModel(
                z["w_enc"], z["b_enc"], z["w_dec"], z["b_dec"],
                activation=str(z["activation"]),  # type: ignore
                gene_ids=tuple(str(v) for v in z["gene_ids"]),
                loss_history=[float(v) for v in z["loss_history"]],
            )
    except (OSError, KeyError, ValueError) as x:
        raise DataIOError(f"cannot read autoencoder checkpoint {path}: {x}")
    d, b = model.w_enc.shape
    if model.b_enc.shape != (b,) or model.w_dec.shape != (b, d) or model.b_dec.shape != (d,):
        raise ValidationError(f"{path}: inconsistent autoencoder weight shapes")
    return model
