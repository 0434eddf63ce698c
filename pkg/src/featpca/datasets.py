import logging
import os
from dataclasses import dataclass

from .data import ExpressionMatrix, LabelSet, Orientation
from .errors import ValidationError
from .matrix_io import load_dense, load_labels, load_matrix_market


@dataclass(frozen=True)
class DatasetInfo:
    name: str
    n_cells: int
    n_genes: int
    n_clusters: int


DATASETS: dict[str, DatasetInfo] = {d.name: d for d in [
    DatasetInfo("yan", 90, 20214, 7),
    DatasetInfo("intestine", 90, 20214, 6),
    DatasetInfo("pollen", 301, 23730, 11),
    DatasetInfo("goolam", 124, 41480, 5),
    DatasetInfo("deng", 268, 22431, 10),
    DatasetInfo("fan", 69, 26357, 6),
    DatasetInfo("kolod", 704, 38653, 3),
]}


def get_dataset_info(name: str):
    info = DATASETS.get(name.lower())
    if info is None:
        raise ValidationError(f"unknown dataset {name!r}; known: {', '.join(DATASETS)}")
    return info


def dataset_paths(name: str, folder: str):
    """
    Files of a named dataset inside `folder`:
    `<name>.mtx` with `<name>_cells.tsv` and `<name>_genes.tsv`, or a dense
    `<name>.tsv` / `<name>.csv`; labels in `<name>_labels.tsv`.
    """
    base = os.path.join(folder, name)
    for ext in (".mtx", ".mtx.gz"):
        if os.path.exists(base + ext):
            return {"matrix": base + ext, "cells": base + "_cells.tsv", "genes": base + "_genes.tsv", "labels": base + "_labels.tsv"}
    for ext in (".tsv", ".csv", ".txt"):
        if os.path.exists(base + ext):
            return {"matrix": base + ext, "labels": base + "_labels.tsv"}
    raise ValidationError(f"dataset {name!r} not found in {folder}")


def load_dataset(name: str, folder: str, orientation: Orientation = "cells-in-rows") -> tuple[ExpressionMatrix, LabelSet]:
    """Load a catalogued dataset from local files; a shape that differs from the catalogue is logged as a warning"""
    info = get_dataset_info(name)
    paths = dataset_paths(info.name, folder)
    if "cells" in paths:
        m = load_matrix_market(paths["matrix"], paths["cells"], paths["genes"])
    else:
        delimiter = "," if paths["matrix"].endswith(".csv") else "\t"
        m = load_dense(paths["matrix"], orientation, delimiter)
    labels = load_labels(paths["labels"], m.cell_ids)

    if (m.n_cells, m.n_genes) != (info.n_cells, info.n_genes):
        logging.warning("Dataset %s: loaded %d cells x %d genes, expected %d x %d",
                        info.name, m.n_cells, m.n_genes, info.n_cells, info.n_genes)
    if labels.n_classes != info.n_clusters:
        logging.warning("Dataset %s: %d label classes, expected %d", info.name, labels.n_classes, info.n_clusters)
    return m, labels
