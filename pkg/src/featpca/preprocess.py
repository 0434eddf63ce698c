import logging

import numpy as np
import pandas as pd

from .data import ExpressionMatrix, HvgConfig
from .errors import ValidationError


def normalize_log(m: ExpressionMatrix, target_sum: float = 1e4) -> ExpressionMatrix:
    """Scale every cell to `target_sum` total counts, then apply ln(1 + x)"""
    if not target_sum > 0:
        raise ValidationError("target_sum must be > 0")
    x = m.values
    if np.any(x < 0):
        i = int(np.argwhere(x < 0)[0][0])
        raise ValidationError(f"cell {m.cell_ids[i]!r} has negative counts")
    totals = x.sum(axis=1)
    zero = np.flatnonzero(totals <= 0)
    if len(zero) > 0:
        raise ValidationError(f"cell {m.cell_ids[int(zero[0])]!r} has zero total counts")
    scaled = x * (target_sum / totals)[:, None]
    return m.with_values(np.log1p(scaled))


def gene_dispersions(m: ExpressionMatrix, n_bins: int = 20) -> pd.DataFrame:
    """
    Per-gene mean, dispersion (variance / mean) and dispersion z-scored within
    equal-width mean bins. Genes alone in their bin, or in a bin whose
    dispersions are all equal, get z = 0.
    """
    x = m.values
    n, d = x.shape
    mean = x.mean(axis=0)
    var = x.var(axis=0, ddof=1) if n > 1 else np.zeros(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        dispersion = np.where(mean > 0, var / np.where(mean > 0, mean, 1.0), 0.0)

    df = pd.DataFrame({"mean": mean, "dispersion": dispersion}, index=list(m.gene_ids))
    df["bin"] = pd.cut(df["mean"], bins=n_bins, labels=False, include_lowest=True)
    grp = df.groupby("bin")["dispersion"]
    bin_mean = grp.transform("mean")
    bin_std = grp.transform("std")
    bin_size = grp.transform("size")
    undefined = (bin_size < 2) | ~(bin_std > 0)
    z = (df["dispersion"] - bin_mean) / bin_std.where(~undefined, 1.0)
    df["dispersion_norm"] = z.where(~undefined, 0.0).to_numpy(dtype=np.float64)
    return df


def select_hvg(m: ExpressionMatrix, cfg: HvgConfig) -> ExpressionMatrix:
    """
    Keep the `cfg.n_top_genes` genes with the highest z-scored dispersion,
    ordered by descending rank. Ties fall back to raw dispersion, then to the
    lower gene index.
    """
    cfg.valid()
    d = m.n_genes
    if d < 1:
        raise ValidationError("matrix has no genes")
    df = gene_dispersions(m, cfg.n_bins)
    z = df["dispersion_norm"].to_numpy()
    disp = df["dispersion"].to_numpy()
    order = np.lexsort((np.arange(d), -disp, -z))
    top = order[:min(cfg.n_top_genes, d)]
    logging.info("Selected %d of %d genes as highly variable", len(top), d)
    return m.select_genes(top)
