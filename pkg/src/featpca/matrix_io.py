import gzip
import io
import json
import logging
import os
import re
from typing import Sequence

import numpy as np
import pandas as pd
import scipy.io
import scipy.sparse as sp

from .data import ExpressionMatrix, FloatMatrix, LabelSet, Orientation, PipelineReport
from .errors import DataIOError, MatrixParseError, ValidationError
from .utils import create_folder_for_file

MM_BANNER = "%%MatrixMarket matrix coordinate real general\n"


def _as_float(v: object) -> float:
    try:
        return float(v)  # type: ignore
    except (TypeError, ValueError):
        return float("nan")


def _parser_error_line(msg: str):
    m = re.search(r"line (\d+)", msg)
    return int(m.group(1)) if m else None


def load_dense(path: str, orientation: Orientation = "cells-in-rows", delimiter: str = "\t") -> ExpressionMatrix:
    """
    Read a delimited text matrix whose first row holds column ids and first
    column holds row ids. The result is always cells × genes.

    :raises MatrixParseError: ragged row, non-numeric or non-finite value (with its line number)
    :raises ValidationError: duplicate identifiers
    :raises DataIOError: the file cannot be read
    """
    try:
        header = pd.read_csv(path, sep=delimiter, header=None, nrows=1, dtype=str, keep_default_na=False)
        df = pd.read_csv(path, sep=delimiter, header=0, index_col=0, dtype=str,
                         keep_default_na=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise MatrixParseError("file is empty", 1, path)
    except pd.errors.ParserError as x:
        raise MatrixParseError(f"malformed row ({x})", _parser_error_line(str(x)), path)
    except OSError as x:
        raise DataIOError(f"cannot read {path}: {x}")

    col_ids = [str(v) for v in header.iloc[0].tolist()]
    if len(col_ids) == df.shape[1] + 1:
        col_ids = col_ids[1:]
    dup = pd.Index(col_ids).duplicated()
    if dup.any():
        raise ValidationError(f"{path}: duplicate column id {col_ids[int(np.flatnonzero(dup)[0])]!r}")

    raw = df.to_numpy(dtype=object)
    try:
        values: FloatMatrix = raw.astype(np.float64)
    except (TypeError, ValueError):
        values = np.frompyfunc(_as_float, 1, 1)(raw).astype(np.float64)
    bad = ~np.isfinite(values)
    if bad.any():
        r, c = (int(v) for v in np.argwhere(bad)[0])
        cell = raw[r, c]
        what = "missing value" if cell is None or (isinstance(cell, float) and np.isnan(cell)) else f"value {cell!r}"
        raise MatrixParseError(f"{what} in column {col_ids[c]!r} is not a finite number", r + 2, path)

    row_ids = [str(v) for v in df.index.tolist()]
    logging.info("Loaded %s: %d rows x %d columns", path, len(row_ids), len(col_ids))
    if orientation == "genes-in-rows":
        return ExpressionMatrix(values.T, col_ids, row_ids)
    return ExpressionMatrix(values, row_ids, col_ids)


def save_dense(m: ExpressionMatrix, path: str, delimiter: str = "\t", orientation: Orientation = "cells-in-rows"):
    """Write `m` so that `load_dense(path, orientation, delimiter)` reproduces it exactly"""
    if orientation == "genes-in-rows":
        df = pd.DataFrame(m.values.T, index=list(m.gene_ids), columns=list(m.cell_ids))
        corner = "gene"
    else:
        df = pd.DataFrame(m.values, index=list(m.cell_ids), columns=list(m.gene_ids))
        corner = "cell"
    try:
        df.to_csv(path, sep=delimiter, float_format="%.17g", index_label=corner, lineterminator="\n")
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def read_text(path: str):
    try:
        if path.endswith(".gz"):
            with gzip.open(path, "rt", encoding="utf8") as f:
                return f.read()
        with open(path, "r", encoding="utf8") as f:
            return f.read()
    except OSError as x:
        raise DataIOError(f"cannot read {path}: {x}")


def _read_ids(path: str) -> list[str]:
    lines = [ln for ln in read_text(path).splitlines() if ln.strip() != ""]
    # 10x feature files carry extra tab-separated columns; the first one is the id
    return [ln.split("\t")[0].strip() for ln in lines]


def load_matrix_market(path: str, cell_ids_path: str, gene_ids_path: str) -> ExpressionMatrix:
    """
    Read a MatrixMarket coordinate file (1-indexed triplets) with sidecar id
    files. Absent entries are 0; repeated coordinates are summed. A file laid
    out genes × cells is transposed.
    """
    cell_ids = _read_ids(cell_ids_path)
    gene_ids = _read_ids(gene_ids_path)
    text = read_text(path)
    if not text.lstrip().startswith("%%MatrixMarket"):
        text = MM_BANNER + text
    try:
        mat = scipy.io.mmread(io.BytesIO(text.encode("utf8")))
    except (ValueError, IndexError, OverflowError) as x:
        raise MatrixParseError(f"invalid MatrixMarket data: {x}", None, path)
    dense: FloatMatrix = mat.toarray() if sp.issparse(mat) else np.asarray(mat)
    dense = dense.astype(np.float64)

    rows, cols = dense.shape
    if (rows, cols) == (len(cell_ids), len(gene_ids)):
        pass
    elif (rows, cols) == (len(gene_ids), len(cell_ids)):
        dense = dense.T
    else:
        raise ValidationError(
            f"{path}: matrix is {rows}x{cols} but there are {len(cell_ids)} cell ids and {len(gene_ids)} gene ids")
    logging.info("Loaded %s: %d cells x %d genes", path, len(cell_ids), len(gene_ids))
    return ExpressionMatrix(dense, cell_ids, gene_ids)


def load_matrix(path: str, orientation: Orientation = "cells-in-rows", delimiter: str = "\t",
                cell_ids_path: str = "", gene_ids_path: str = ""):
    """Dispatch on the file extension: `.mtx`/`.mtx.gz` is MatrixMarket, everything else is dense text"""
    if path.endswith((".mtx", ".mtx.gz")):
        if not cell_ids_path or not gene_ids_path:
            raise ValidationError("MatrixMarket input needs cell_ids_path and gene_ids_path")
        return load_matrix_market(path, cell_ids_path, gene_ids_path)
    return load_dense(path, orientation, delimiter)


def load_labels(path: str, cell_ids: Sequence[str] | None = None, delimiter: str = "\t") -> LabelSet:
    """
    Read a two-column (cell_id, label) file. With `cell_ids` the labels are
    returned in that order and every cell must be labelled.
    """
    try:
        df = pd.read_csv(path, sep=delimiter, header=0, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise MatrixParseError("labels file is empty", 1, path)
    except pd.errors.ParserError as x:
        raise MatrixParseError(f"malformed row ({x})", _parser_error_line(str(x)), path)
    except OSError as x:
        raise DataIOError(f"cannot read {path}: {x}")
    if df.shape[1] < 2:
        raise MatrixParseError("labels file needs two columns (cell_id, label)", 1, path)
    ids = df.iloc[:, 0].astype(str).tolist()
    raw = df.iloc[:, 1].astype(str).tolist()
    if len(set(ids)) != len(ids):
        raise ValidationError(f"{path}: duplicate cell id in labels")
    if cell_ids is not None:
        if len(ids) < len(cell_ids):
            raise ValidationError(f"{path}: {len(ids)} labels for {len(cell_ids)} cells")
        by_id = dict(zip(ids, raw))
        missing = [c for c in cell_ids if c not in by_id]
        if missing:
            raise ValidationError(f"{path}: no label for cell {missing[0]!r}")
        raw = [by_id[c] for c in cell_ids]
    if all(re.fullmatch(r"-?\d+", v) for v in raw):
        return LabelSet.from_values(np.array([int(v) for v in raw]))
    return LabelSet.from_values(np.array(raw, dtype=object).astype(str))


def save_labels(labels: LabelSet | Sequence[int], cell_ids: Sequence[str], path: str, delimiter: str = "\t"):
    values = labels.labels if isinstance(labels, LabelSet) else np.asarray(labels)
    if len(values) != len(cell_ids):
        raise ValidationError(f"{len(values)} labels for {len(cell_ids)} cells")
    df = pd.DataFrame({"cell_id": list(cell_ids), "label": values})
    try:
        df.to_csv(path, sep=delimiter, index=False, lineterminator="\n")
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def save_report(report: PipelineReport, path: str):
    """Canonical report: declaration key order, floats at 10 significant digits"""
    text = report.valid().dumps(indent=2) + "\n"
    try:
        with open(path, "w", encoding="utf8", newline="\n") as f:
            f.write(text)
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def load_report(path: str) -> PipelineReport:
    text = read_text(path)
    return PipelineReport.parse(text).valid()


def save_timings(report: PipelineReport, path: str):
    try:
        with open(path, "w", encoding="utf8") as f:
            json.dump(report.timings, f, indent=2)
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def save_embedding(scores: FloatMatrix, cell_ids: Sequence[str], block_sizes: Sequence[int], path: str, delimiter: str = "\t"):
    """Cells × (m1+...+mk) scores, preceded by a `# blocks` line listing the block widths"""
    if sum(block_sizes) != scores.shape[1]:
        raise ValidationError(f"block widths sum to {sum(block_sizes)} but scores have {scores.shape[1]} columns")
    columns = [f"b{b}_pc{i + 1}" for b, m in enumerate(block_sizes) for i in range(m)]
    df = pd.DataFrame(scores, index=list(cell_ids), columns=columns)
    try:
        create_folder_for_file(path)
        with open(path, "w", encoding="utf8", newline="\n") as f:
            f.write("# blocks" + delimiter + delimiter.join(str(m) for m in block_sizes) + "\n")
            df.to_csv(f, sep=delimiter, float_format="%.17g", index_label="cell", lineterminator="\n")
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def load_embedding(path: str, delimiter: str = "\t") -> tuple[ExpressionMatrix, list[int]]:
    """Inverse of `save_embedding`; the scores come back as a matrix whose genes are the components"""
    text = read_text(path)
    first, _, rest = text.partition("\n")
    if not first.startswith("# blocks"):
        raise MatrixParseError("missing '# blocks' metadata line", 1, path)
    try:
        block_sizes = [int(v) for v in first.split(delimiter)[1:] if v.strip() != ""]
    except ValueError:
        raise MatrixParseError("invalid '# blocks' metadata line", 1, path)
    tmp = io.StringIO(rest)
    df = pd.read_csv(tmp, sep=delimiter, header=0, index_col=0, dtype={"cell": str}, float_precision="round_trip")
    m = ExpressionMatrix(df.to_numpy(dtype=np.float64), [str(v) for v in df.index], [str(v) for v in df.columns])
    if sum(block_sizes) != m.n_genes:
        raise ValidationError(f"{path}: block widths sum to {sum(block_sizes)} but there are {m.n_genes} columns")
    return m, block_sizes


def ensure_folder(path: str):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as x:
        raise DataIOError(f"cannot create {path}: {x}")
    return path
