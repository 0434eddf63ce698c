from ..data import SubspaceSpec
from ..matrix_io import read_text, save_embedding
from ..reduce import block_widths, merge_blocks, reduce_subspaces
from ._common import config_from_args, create_parser, load_input_matrix


def run(args: list[str]):
    parser = create_parser("reduce", "PCA of every subspace, concatenated into one embedding")
    parser.add_argument("subspaces", help="subspace spec written by `featpca subspace`")
    parser.add_argument("output", help="embedding to write")
    ns = parser.parse_args(args)
    cfg = config_from_args(ns)
    m = load_input_matrix(cfg)
    spec = SubspaceSpec.parse(read_text(ns.subspaces)).valid()
    blocks = reduce_subspaces(m, spec, cfg.variance_threshold, cfg.n_jobs)
    widths = block_widths(blocks)
    save_embedding(merge_blocks(blocks), m.cell_ids, widths, ns.output)
    print(f"{len(blocks)} blocks of widths {widths} -> {ns.output}")
