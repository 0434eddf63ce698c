import logging

from ..impute import impute_zeros, save_model, train
from ..matrix_io import save_dense
from ..pipeline import autoencoder_config
from ._common import config_from_args, create_parser, load_input_matrix


def run(args: list[str]):
    parser = create_parser("impute", "Train a denoising autoencoder and fill the zero entries")
    parser.add_argument("output", help="dense matrix to write (cells in rows)")
    parser.add_argument("--model", help="also save the trained autoencoder (.npz)")
    ns = parser.parse_args(args)
    cfg = config_from_args(ns)
    m = load_input_matrix(cfg)
    model = train(m, autoencoder_config(cfg))
    if ns.model:
        save_model(model, ns.model)
        logging.info("Autoencoder saved to %s", ns.model)
    imputed = impute_zeros(m, model)
    save_dense(imputed, ns.output)
    final = f", final loss {model.loss_history[-1]:.6g}" if model.loss_history else ""
    print(f"imputed {m.n_cells} cells x {m.n_genes} genes{final} -> {ns.output}")
