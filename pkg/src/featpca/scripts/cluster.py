from ..cluster import kmeans
from ..data import KmeansConfig
from ..errors import ValidationError
from ..matrix_io import load_dense, load_embedding, load_labels, read_text, save_labels
from ..metrics import adjusted_rand_index
from ._common import create_parser, config_from_args


def run(args: list[str]):
    parser = create_parser("cluster", "k-means on an embedding (or any dense matrix)", with_input=False)
    parser.add_argument("points", help="embedding written by `featpca reduce`, or a dense matrix")
    parser.add_argument("output", help="labels to write (cell_id, label)")
    ns = parser.parse_args(args)
    cfg = config_from_args(ns)
    if read_text(ns.points).startswith("# blocks"):
        points, _ = load_embedding(ns.points)
    else:
        points = load_dense(ns.points, cfg.orientation, cfg.delimiter)
    truth = load_labels(cfg.labels_path, points.cell_ids) if cfg.labels_path else None

    n_clusters = cfg.kmeans.n_clusters or (truth.n_classes if truth else 0)
    if n_clusters < 1:
        raise ValidationError("set --kmeans.n_clusters or --labels_path")
    km = KmeansConfig.new({**cfg.kmeans.json(), "n_clusters": n_clusters}).valid()
    a = kmeans(points.values, km)
    save_labels(a.labels, points.cell_ids, ns.output)
    msg = f"k={n_clusters} inertia={a.inertia:.6g} -> {ns.output}"
    if truth is not None:
        msg += f"; ARI {adjusted_rand_index(truth, a.labels):.4f}"
    print(msg)
