from ..data import STRATEGIES
from ..errors import DataIOError
from ..pipeline import trial_subspaces
from ..utils import create_folder_for_file
from ._common import config_from_args, create_parser, load_input_matrix


def run(args: list[str]):
    parser = create_parser("subspace", "Split the genes of a matrix into subspaces")
    parser.add_argument("--strategy", choices=STRATEGIES, required=True)
    parser.add_argument("--k", type=int, default=2, help="division count (ignored by gene_cluster)")
    parser.add_argument("output", help="subspace spec to write (json)")
    ns = parser.parse_args(args)
    cfg = config_from_args(ns)
    m = load_input_matrix(cfg)
    spec = trial_subspaces(m, ns.strategy, ns.k, cfg)
    text = spec.dumps(indent=2) + "\n"
    try:
        create_folder_for_file(ns.output)
        with open(ns.output, "w", encoding="utf8") as f:
            f.write(text)
    except OSError as x:
        raise DataIOError(f"cannot write {ns.output}: {x}")
    print(f"{spec.strategy}: {spec.k} partitions of sizes {spec.sizes} -> {ns.output}")
