import logging
import math
import os
import time
from contextlib import contextmanager
from datetime import datetime

import pandas as pd

from .cluster import kmeans
from .data import (AutoencoderConfig, ExpressionMatrix, KmeansConfig, LabelSet, PipelineConfig, PipelineReport, Strategy,
                   StrategyResult, SubspaceSpec, TrialResult)
from .errors import DataIOError, FeatpcaError, ValidationError
from .gene_graph import gene_cluster_subspaces
from .impute import impute_zeros, train
from .logger import TrialLogger
from .matrix_io import ensure_folder, load_labels, load_matrix, save_report, save_timings
from .metrics import adjusted_rand_index
from .preprocess import normalize_log, select_hvg
from .reduce import merge_blocks, reduce_subspaces
from .subspace import make_subspaces
from .utils import Stage, create_folder_for_file, derive_seed, map_ordered, round_sig

PLOT_COLUMNS = ["strategy", "baseline", "mean", "max", "win_count", "trial_count"]
SERIES_COLUMNS = ["strategy", "division_count", "ari"]
STRATEGY_STAGES = {"shuffled": Stage.shuffled, "random": Stage.random}


@contextmanager
def timed(timings: dict[str, float], key: str):
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[key] = timings.get(key, 0.0) + time.perf_counter() - start


def new_run_id():
    return datetime.now().strftime("%Y%m%d-%H%M%S")


def load_inputs(cfg: PipelineConfig) -> tuple[ExpressionMatrix, LabelSet]:
    if not cfg.input_path:
        raise ValidationError("input_path is required")
    if not cfg.labels_path:
        raise ValidationError("labels_path is required")
    m = load_matrix(cfg.input_path, cfg.orientation, cfg.delimiter, cfg.cell_ids_path, cfg.gene_ids_path)
    labels = load_labels(cfg.labels_path, m.cell_ids)
    return m, labels


def preprocess_matrix(m: ExpressionMatrix, cfg: PipelineConfig):
    if not cfg.preprocess:
        return m
    return select_hvg(normalize_log(m, cfg.hvg.target_sum), cfg.hvg)


def autoencoder_config(cfg: PipelineConfig):
    """`cfg.autoencoder` with its seed derived from the master seed"""
    return AutoencoderConfig.new({**cfg.autoencoder.json(), "seed": derive_seed(cfg.seed, Stage.autoencoder, 0)}).valid()


def impute_matrix(m: ExpressionMatrix, cfg: PipelineConfig):
    return impute_zeros(m, train(m, autoencoder_config(cfg)))


def prepare_matrix(m: ExpressionMatrix, cfg: PipelineConfig):
    """Normalize, select genes and impute, as enabled in `cfg`"""
    m = preprocess_matrix(m, cfg)
    if cfg.impute:
        m = impute_matrix(m, cfg)
    return m


def kmeans_config(cfg: PipelineConfig, labels: LabelSet):
    """
    `cfg.kmeans` with the seed derived from the master seed; n_clusters 0
    means the number of ground-truth classes. The baseline and every trial
    share this config.
    """
    return KmeansConfig.new({
        **cfg.kmeans.json(),
        "n_clusters": cfg.kmeans.n_clusters or labels.n_classes,
        "seed": derive_seed(cfg.seed, Stage.kmeans, 0),
    }).valid()


def evaluate_subspaces(m: ExpressionMatrix, labels: LabelSet, spec: SubspaceSpec, variance_threshold: float, km: KmeansConfig, n_jobs: int = 1):
    """Reduce every subspace, merge, cluster; returns (ARI, merged width)"""
    if len(labels) != m.n_cells:
        raise ValidationError(f"{len(labels)} labels for {m.n_cells} cells")
    points = merge_blocks(reduce_subspaces(m, spec, variance_threshold, n_jobs))
    a = kmeans(points, km)
    return round_sig(adjusted_rand_index(labels, a.labels)), points.shape[1]


def run_baseline(m: ExpressionMatrix, labels: LabelSet, cfg: PipelineConfig) -> float:
    """ARI of whole-matrix PCA + k-means against the ground truth"""
    ari = baseline_trial(m, labels, cfg).ari
    assert ari is not None
    return ari


def baseline_trial(m: ExpressionMatrix, labels: LabelSet, cfg: PipelineConfig, km: KmeansConfig | None = None):
    km = km or kmeans_config(cfg, labels)
    spec = SubspaceSpec.whole(m.n_genes)
    ari, width = evaluate_subspaces(m, labels, spec, cfg.variance_threshold, km, cfg.n_jobs)
    logging.info("Baseline ARI %.4f with %d components", ari, width)
    return TrialResult(division_count=1, ari=ari, n_components=width, subspace=spec.summary())


def trial_subspaces(m: ExpressionMatrix, strategy: Strategy, k: int, cfg: PipelineConfig) -> SubspaceSpec:
    if strategy == "gene_cluster":
        return gene_cluster_subspaces(m, cfg.n_neighbors, cfg.resolution, derive_seed(cfg.seed, Stage.leiden, 0))
    seed = derive_seed(cfg.seed, STRATEGY_STAGES[strategy], k) if strategy in STRATEGY_STAGES else 0
    return make_subspaces(strategy, m.n_genes, k, cfg.overlap_fraction, seed)


def run_trial(m: ExpressionMatrix, labels: LabelSet, strategy: Strategy, k: int, cfg: PipelineConfig,
              km: KmeansConfig | None = None, run_id: str = "") -> TrialResult:
    """
    One (strategy, k) trial. A failure is recorded on the result instead of
    raised. gene_cluster ignores `k` and reports the number of communities
    found as its division count.
    """
    km = km or kmeans_config(cfg, labels)
    log = TrialLogger(run_id, strategy, k)
    start = time.perf_counter()
    try:
        spec = trial_subspaces(m, strategy, k, cfg)
        ari, width = evaluate_subspaces(m, labels, spec, cfg.variance_threshold, km)
    except FeatpcaError as x:
        log.warning(f"failed: {x}".replace("%", "%%"))
        return TrialResult(division_count=k, error=str(x))
    except Exception as x:
        log.error(f"failed: {type(x).__name__}: {x}".replace("%", "%%"), exc_info=True)
        return TrialResult(division_count=k, error=f"{type(x).__name__}: {x}")
    log.info(f"{ari};{width};{time.perf_counter() - start:.3f}")
    return TrialResult(
        division_count=spec.k if strategy == "gene_cluster" else k,
        ari=ari,
        n_components=width,
        subspace=spec.summary(cfg.verbose_subspaces),
    )


def best_division_count(trials: list[TrialResult]) -> int | None:
    """Division count of the highest ARI; the smallest one on ties"""
    ok = [t for t in trials if t.ari is not None]
    if not ok:
        return None
    best = max(t.ari for t in ok)  # type: ignore
    return min(t.division_count for t in ok if t.ari == best)


def summarize_strategy(strategy: Strategy, trials: list[TrialResult], baseline_ari: float) -> StrategyResult:
    """Win count (ari > baseline), mean and max over the successful trials"""
    aris = [t.ari for t in trials if t.ari is not None]
    return StrategyResult(
        strategy=strategy,
        trials=trials,
        win_count=sum(1 for a in aris if a > baseline_ari),
        trial_count=len(trials),
        mean_ari=round_sig(math.fsum(aris) / len(aris)) if aris else None,
        max_ari=max(aris) if aris else None,
        best_division_count=best_division_count(trials),
    ).valid()


def sweep_jobs(cfg: PipelineConfig) -> list[tuple[Strategy, int]]:
    """(strategy, k) pairs in report order; gene_cluster runs once"""
    jobs: list[tuple[Strategy, int]] = []
    for s in cfg.strategies:
        if s == "gene_cluster":
            jobs.append((s, 0))
        else:
            jobs.extend((s, k) for k in range(cfg.k_min, cfg.k_max + 1))
    return jobs


def run_sweep(m: ExpressionMatrix, labels: LabelSet, cfg: PipelineConfig, imputed: bool | None = None, run_id: str = "") -> PipelineReport:
    """Baseline plus every (strategy, k) trial on an already prepared matrix"""
    cfg.valid()
    km = kmeans_config(cfg, labels)
    report = PipelineReport(
        config=cfg,
        imputed=cfg.impute if imputed is None else imputed,
        n_cells=m.n_cells,
        n_genes=m.n_genes,
        n_clusters=km.n_clusters,
    )
    with timed(report.timings, "baseline"):
        baseline = baseline_trial(m, labels, cfg, km)
    assert baseline.ari is not None
    report.baseline_ari = baseline.ari
    report.baseline_components = baseline.n_components

    def run(job: tuple[Strategy, int]):
        start = time.perf_counter()
        r = run_trial(m, labels, job[0], job[1], cfg, km, run_id)
        return r, time.perf_counter() - start

    jobs = sweep_jobs(cfg)
    results = map_ordered(run, jobs, cfg.n_jobs)
    for s in cfg.strategies:
        trials = [r for (js, _), (r, _) in zip(jobs, results) if js == s]
        report.timings[f"trials.{s}"] = sum(dt for (js, _), (_, dt) in zip(jobs, results) if js == s)
        res = summarize_strategy(s, trials, report.baseline_ari)
        report.strategies.append(res)
        logging.info("%s: %d/%d wins, max ARI %s at k=%s", s, res.win_count, res.trial_count, res.max_ari, res.best_division_count)
    return report.valid()


def plot_table(report: PipelineReport) -> pd.DataFrame:
    """One row per strategy: the baseline, mean and max ARI bars plus win counts"""
    rows = [[s.strategy, report.baseline_ari, s.mean_ari, s.max_ari, s.win_count, s.trial_count] for s in report.strategies]
    return pd.DataFrame(rows, columns=PLOT_COLUMNS)


def series_table(report: PipelineReport) -> pd.DataFrame:
    rows = [[s.strategy, k, ari] for s in report.strategies for k, ari in s.series()]
    return pd.DataFrame(rows, columns=SERIES_COLUMNS)


def win_case_table(report: PipelineReport) -> pd.DataFrame:
    """Strategy and "wins/trials", e.g. `sequential  13/19`"""
    rows = [[s.strategy, s.win_count, s.trial_count, f"{s.win_count}/{s.trial_count}"] for s in report.strategies]
    return pd.DataFrame(rows, columns=["strategy", "win_count", "trial_count", "win_cases"])


def series_path_for(path: str):
    stem, ext = os.path.splitext(path)
    return f"{stem}_series{ext or '.tsv'}"


def emit_plot_data(report: PipelineReport, path: str, delimiter: str = "\t"):
    """Write the per-strategy bar table to `path` and the (k, ari) series next to it; returns both paths"""
    series_path = series_path_for(path)
    try:
        create_folder_for_file(path)
        plot_table(report).to_csv(path, sep=delimiter, index=False, lineterminator="\n")
        series_table(report).to_csv(series_path, sep=delimiter, index=False, lineterminator="\n")
    except OSError as x:
        raise DataIOError(f"cannot write plot data {path}: {x}")
    return path, series_path


def write_outputs(report: PipelineReport, folder: str, name: str = "report"):
    """`<name>.json`, its timings sidecar, plot data and the win-case table"""
    ensure_folder(folder)
    base = os.path.join(folder, name)
    save_report(report, base + ".json")
    save_timings(report, base + ".timings.json")
    emit_plot_data(report, base + "_plot.tsv")
    try:
        win_case_table(report).to_csv(base + "_win_cases.tsv", sep="\t", index=False, lineterminator="\n")
    except OSError as x:
        raise DataIOError(f"cannot write {base}_win_cases.tsv: {x}")
    logging.info("Report written to %s.json", base)
    return base + ".json"


def run_pipeline(cfg: PipelineConfig, run_id: str | None = None, write: bool = True) -> list[PipelineReport]:
    """
    Load, prepare and sweep. With `compare_imputation` the sweep also runs on
    the non-imputed matrix; that report is written as `report_no_impute`.
    """
    cfg.valid()
    run_id = run_id or new_run_id()
    timings: dict[str, float] = {}
    with timed(timings, "load"):
        m, labels = load_inputs(cfg)
    with timed(timings, "preprocess"):
        pre = preprocess_matrix(m, cfg)

    variants: list[tuple[ExpressionMatrix, bool, str]] = []
    if cfg.impute:
        with timed(timings, "impute"):
            variants.append((impute_matrix(pre, cfg), True, "report"))
        if cfg.compare_imputation:
            variants.append((pre, False, "report_no_impute"))
    else:
        variants.append((pre, False, "report"))

    reports: list[PipelineReport] = []
    for mat, imputed, name in variants:
        logging.info("Sweep on %s matrix (%d cells x %d genes)", "imputed" if imputed else "non-imputed", mat.n_cells, mat.n_genes)
        with timed(timings, f"sweep.{name}"):
            report = run_sweep(mat, labels, cfg, imputed, run_id)
        report.timings.update(timings)
        if write:
            write_outputs(report, cfg.output_folder, name)
        reports.append(report)
    return reports
