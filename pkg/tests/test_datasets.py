import logging

import numpy as np
import pytest

from featpca import DATASETS, ValidationError, load_dataset, make_toy_dataset, save_dense, save_labels


def test_catalogue():
    assert set(DATASETS) == {"yan", "intestine", "pollen", "goolam", "deng", "fan", "kolod"}
    assert DATASETS["pollen"].n_clusters == 11
    assert DATASETS["kolod"].n_cells == 704


def test_unknown_dataset(tmp_path):
    with pytest.raises(ValidationError):
        load_dataset("nope", str(tmp_path))


def test_missing_dataset_files(tmp_path):
    with pytest.raises(ValidationError):
        load_dataset("yan", str(tmp_path))


def test_local_files_with_unexpected_shape_warn(tmp_path, caplog):
    m, labels = make_toy_dataset(n_cells=30, n_genes=50, n_clusters=3, informative_per_cluster=5)
    save_dense(m, str(tmp_path / "fan.tsv"))
    save_labels(labels, m.cell_ids, str(tmp_path / "fan_labels.tsv"))
    with caplog.at_level(logging.WARNING):
        loaded, loaded_labels = load_dataset("fan", str(tmp_path))
    assert loaded == m
    assert np.array_equal(loaded_labels.labels, labels.labels)
    assert "expected 69 x 26357" in caplog.text


def test_matrix_market_dataset(tmp_path):
    (tmp_path / "kolod.mtx").write_text("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 3\n2 2 4\n", encoding="utf8")
    (tmp_path / "kolod_cells.tsv").write_text("a\nb\n", encoding="utf8")
    (tmp_path / "kolod_genes.tsv").write_text("x\ny\n", encoding="utf8")
    (tmp_path / "kolod_labels.tsv").write_text("cell\tlabel\na\t0\nb\t1\n", encoding="utf8")
    m, labels = load_dataset("kolod", str(tmp_path))
    assert m.values.tolist() == [[3.0, 0.0], [0.0, 4.0]]
    assert labels.n_classes == 2
