import importlib
import logging
import sys

from .errors import FeatpcaError
from .logger import setLogging
from .settings import load_settings

SCRIPTS = [
    ("init_project", "", "write featpca_config.py and a run config template"),
    ("toy", "folder [--n_cells --n_genes --n_clusters --seed]", "synthetic dataset with known labels"),
    ("preprocess", "-i matrix output", "log-normalize, keep highly variable genes"),
    ("impute", "-i matrix output [--model ae.npz]", "denoising autoencoder imputation"),
    ("subspace", "-i matrix --strategy s --k k output.json", "split the genes into subspaces"),
    ("reduce", "-i matrix subspaces.json output", "per-subspace PCA, merged embedding"),
    ("cluster", "points output [--labels_path]", "k-means (and ARI against labels)"),
    ("sweep", "-i matrix --labels_path labels [--config file]", "full pipeline over all strategies and k"),
    ("report", "report.json [plot.tsv]", "win cases and plot data of a report"),
]


def print_usage():
    ml = max(map(lambda v: len(v[0]), SCRIPTS))
    ml2 = max(map(lambda v: len(v[1]), SCRIPTS))
    l = ml + ml2 + 5
    t = " Commands "
    l2 = l - len(t)
    print("-" * (l2 // 2) + t + "-" * (l2 // 2 + l2 % 2))
    for name, usage, desc in SCRIPTS:
        print(f"{' ' * (ml - len(name))} {name} : {usage}")
        print(f"{' ' * (ml + 3)} {desc}")
    print("-" * l)
    print("Every command except toy, report and init_project accepts the run config flags; see `featpca <command> -h`")


def cli(argv: list[str] | None = None) -> int:
    """Entry point of the `featpca` command; returns the process exit code"""
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) < 1 or argv[0] not in map(lambda v: v[0], SCRIPTS):
        print_usage()
        return 0 if len(argv) < 1 or argv[0] in ("-h", "--help") else 2

    to_console = False
    try:
        settings = load_settings()
        setLogging(settings)
        to_console = settings.log_to_console
        importlib.import_module(".scripts." + argv[0], "featpca").run(argv[1:])
    except FeatpcaError as x:
        logging.error("%s: %s", type(x).__name__, x)
        logging.debug("traceback", exc_info=True)
        if not to_console:
            print(f"featpca {argv[0]}: error: {x}", file=sys.stderr)
        return x.exit_code
    return 0
