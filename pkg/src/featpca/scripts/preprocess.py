import logging

from ..matrix_io import save_dense
from ..pipeline import preprocess_matrix
from ._common import config_from_args, create_parser, load_input_matrix


def run(args: list[str]):
    parser = create_parser("preprocess", "Log-normalize the counts and keep the highly variable genes")
    parser.add_argument("output", help="dense matrix to write (cells in rows)")
    ns = parser.parse_args(args)
    cfg = config_from_args(ns)
    m = preprocess_matrix(load_input_matrix(cfg), cfg)
    save_dense(m, ns.output)
    logging.info("Preprocessed matrix written to %s", ns.output)
    print(f"{m.n_cells} cells x {m.n_genes} genes -> {ns.output}")
