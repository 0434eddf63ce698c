import argparse
import os

from ..matrix_io import ensure_folder, save_dense, save_labels
from ..toy_data import make_toy_dataset


def run(args: list[str]):
    parser = argparse.ArgumentParser(prog="featpca toy", description="Write a synthetic dataset with known cell types")
    parser.add_argument("folder")
    parser.add_argument("--n_cells", type=int, default=300)
    parser.add_argument("--n_genes", type=int, default=2000)
    parser.add_argument("--n_clusters", type=int, default=5)
    parser.add_argument("--informative", type=int, default=40, help="over-expressed genes per cluster")
    parser.add_argument("--seed", type=int, default=0)
    ns = parser.parse_args(args)
    m, labels = make_toy_dataset(ns.n_cells, ns.n_genes, ns.n_clusters, ns.informative, seed=ns.seed)
    ensure_folder(ns.folder)
    matrix_path = os.path.join(ns.folder, "toy.tsv")
    labels_path = os.path.join(ns.folder, "toy_labels.tsv")
    save_dense(m, matrix_path)
    save_labels(labels.labels, m.cell_ids, labels_path)
    print(f"{m.n_cells} cells x {m.n_genes} genes -> {matrix_path}, {labels_path}")
