import os

import numpy as np
import pandas as pd
import pytest
from conftest import gaussian_mixture

from featpca import (ExpressionMatrix, LabelSet, PipelineConfig, PipelineReport, TrialResult, ValidationError, adjusted_rand_index,
                     best_division_count, emit_plot_data, load_report, prepare_matrix, reduce_subspaces, run_baseline, run_pipeline, run_sweep, run_trial,
                     save_dense, save_labels, save_report, sequential_subspaces, win_case_table)
from featpca import pipeline
from featpca.pipeline import evaluate_subspaces, kmeans_config, load_inputs, summarize_strategy, sweep_jobs


def config(**kw):
    return PipelineConfig.new({"preprocess": False, "impute": False, "kmeans": {"n_init": 4}, **kw}).valid()


def test_baseline_recovers_separated_mixture():
    m, labels = gaussian_mixture(n_clusters=5)
    centroids = np.stack([m.values[labels.labels == c].mean(axis=0) for c in range(5)])
    nearest = np.argmin(((m.values[:, None, :] - centroids[None]) ** 2).sum(axis=2), axis=1)
    assert adjusted_rand_index(labels, nearest) >= 0.99
    assert run_baseline(m, labels, config()) >= 0.95


def test_baseline_is_deterministic(mixture):
    m, labels = mixture
    cfg = config(seed=4)
    assert run_baseline(m, labels, cfg) == run_baseline(m, labels, cfg)


def test_one_division_equals_baseline(mixture):
    m, labels = mixture
    cfg = config(seed=1)
    ari, _ = evaluate_subspaces(m, labels, sequential_subspaces(m.n_genes, 1), cfg.variance_threshold, kmeans_config(cfg, labels))
    assert ari == run_baseline(m, labels, cfg)


def test_kmeans_uses_class_count(mixture):
    m, labels = mixture
    assert kmeans_config(config(), labels).n_clusters == 4
    assert kmeans_config(config(kmeans={"n_clusters": 2}), labels).n_clusters == 2


def test_sweep_counts_trials(mixture, fast_config):
    m, labels = mixture
    report = run_sweep(m, labels, fast_config)
    assert [s.strategy for s in report.strategies] == ["sequential", "shuffled", "random"]
    for s in report.strategies:
        assert s.trial_count == 3
        assert [t.division_count for t in s.trials] == [2, 3, 4]
        assert s.win_count == sum(1 for t in s.trials if t.ari is not None and t.ari > report.baseline_ari)
        assert s.max_ari == max(s.aris())
        assert s.win_count <= s.trial_count
    assert report.n_clusters == 4
    assert "baseline" in report.timings


def test_gene_cluster_runs_once(mixture):
    m, labels = mixture
    report = run_sweep(m, labels, config(strategies=["gene_cluster"], k_min=2, k_max=10, n_neighbors=5))
    (s,) = report.strategies
    assert s.trial_count == 1
    t = s.trials[0]
    assert t.error is None
    assert t.ari is not None
    assert t.subspace is not None and t.division_count == t.subspace.k


def test_sweep_jobs_order():
    jobs = sweep_jobs(config(strategies=["random", "gene_cluster", "sequential"], k_min=2, k_max=3))
    assert jobs == [("random", 2), ("random", 3), ("gene_cluster", 0), ("sequential", 2), ("sequential", 3)]


def test_sweep_is_reproducible(mixture, fast_config, tmp_path):
    m, labels = mixture
    paths = []
    for name in ("a", "b"):
        path = str(tmp_path / f"{name}.json")
        save_report(run_sweep(m, labels, fast_config), path)
        paths.append(path)
    with open(paths[0], "rb") as a, open(paths[1], "rb") as b:
        assert a.read() == b.read()


def test_parallel_sweep_matches_serial(mixture, fast_config):
    m, labels = mixture
    parallel = PipelineConfig.new({**fast_config.json(), "n_jobs": 3}).valid()
    a, b = run_sweep(m, labels, fast_config), run_sweep(m, labels, parallel)
    assert [s.json() for s in a.strategies] == [s.json() for s in b.strategies]


def test_win_counts_survive_serialization(mixture, fast_config, tmp_path):
    m, labels = mixture
    path = str(tmp_path / "report.json")
    save_report(run_sweep(m, labels, fast_config), path)
    report = load_report(path)
    for s in report.strategies:
        assert s.win_count == sum(1 for _, ari in s.series() if ari > report.baseline_ari)


def test_failed_trials_are_recorded():
    m, labels = gaussian_mixture(n_per_cluster=10, n_clusters=2, n_genes=3)
    report = run_sweep(m, labels, config(strategies=["sequential"], k_min=2, k_max=4))
    (s,) = report.strategies
    assert s.trial_count == 3
    failed = s.trials[-1]
    assert failed.division_count == 4
    assert failed.ari is None and failed.error
    assert s.win_count <= len(s.aris())


def test_unexpected_trial_error_does_not_stop_the_sweep(mixture, monkeypatch):
    def reduce_or_fail(m, spec, *args, **kwargs):
        if spec.k == 3:
            raise RuntimeError("out of workspace")
        return reduce_subspaces(m, spec, *args, **kwargs)

    monkeypatch.setattr(pipeline, "reduce_subspaces", reduce_or_fail)
    m, labels = mixture
    report = run_sweep(m, labels, config(strategies=["sequential"], k_min=2, k_max=4))
    (s,) = report.strategies
    assert [t.division_count for t in s.trials] == [2, 3, 4]
    failed = s.trials[1]
    assert failed.ari is None
    assert failed.error == "RuntimeError: out of workspace"
    assert s.trials[0].ari is not None and s.trials[2].ari is not None
    assert s.trial_count == 3


def test_run_trial_for_one_strategy(mixture):
    m, labels = mixture
    t = run_trial(m, labels, "shuffled", 3, config())
    assert t.ari is not None
    assert t.subspace is not None and t.subspace.k == 3 and t.subspace.partitions is None
    verbose = run_trial(m, labels, "shuffled", 3, config(verbose_subspaces=True))
    assert verbose.subspace is not None and verbose.subspace.partitions is not None


def test_best_division_count_prefers_smaller_k():
    trials = [TrialResult(division_count=k, ari=a) for k, a in [(2, 0.5), (3, 0.7), (4, 0.7), (5, None)]]
    assert best_division_count(trials) == 3
    assert best_division_count([TrialResult(division_count=2)]) is None


def summary_report(strategies):
    report = PipelineReport(config=PipelineConfig(), baseline_ari=0.6)
    for name, series in strategies:
        trials = [TrialResult(division_count=k, ari=a) for k, a in series]
        report.strategies.append(summarize_strategy(name, trials, report.baseline_ari))
    return report.valid()


def test_plot_data_rows(tmp_path):
    report = summary_report([("sequential", [(2, 0.5), (3, 0.7)])])
    plot, series = emit_plot_data(report, str(tmp_path / "plot.tsv"))
    df = pd.read_csv(plot, sep="\t")
    assert list(df.columns) == ["strategy", "baseline", "mean", "max", "win_count", "trial_count"]
    row = df.iloc[0]
    assert row["strategy"] == "sequential"
    assert row["baseline"] == 0.6
    assert row["mean"] == pytest.approx(0.6)
    assert row["max"] == 0.7
    assert row["win_count"] == 1
    assert row["trial_count"] == 2
    sdf = pd.read_csv(series, sep="\t")
    assert sdf["division_count"].tolist() == [2, 3]
    assert sdf["ari"].tolist() == [0.5, 0.7]


def test_plot_data_without_strategies(tmp_path):
    plot, _ = emit_plot_data(summary_report([]), str(tmp_path / "plot.tsv"))
    with open(plot, encoding="utf8") as f:
        assert f.read() == "strategy\tbaseline\tmean\tmax\twin_count\ttrial_count\n"


def test_win_case_table():
    report = summary_report([("sequential", [(2, 0.5), (3, 0.7)]), ("random", [(2, 0.9), (3, 0.8)])])
    df = win_case_table(report)
    assert df["win_cases"].tolist() == ["1/2", "2/2"]


def test_ties_with_baseline_are_not_wins():
    s = summary_report([("sequential", [(2, 0.6), (3, 0.6000000001)])]).strategies[0]
    assert s.win_count == 1


def test_imputation_of_zero_free_matrix_is_a_no_op(mixture):
    m, labels = mixture
    shifted = m.with_values(m.values - m.values.min() + 1.0)
    plain = config()
    imputing = config(impute=True, autoencoder={"bottleneck": 5, "epochs": 0})
    assert prepare_matrix(shifted, imputing) == prepare_matrix(shifted, plain)
    assert run_baseline(prepare_matrix(shifted, imputing), labels, imputing) == run_baseline(shifted, labels, plain)


def test_labels_must_cover_cells(tmp_path, mixture):
    m, labels = mixture
    matrix_path = str(tmp_path / "m.tsv")
    labels_path = str(tmp_path / "labels.tsv")
    save_dense(m, matrix_path)
    save_labels(LabelSet(labels.labels[:-1]), m.cell_ids[:-1], labels_path)
    with pytest.raises(ValidationError):
        load_inputs(config(input_path=matrix_path, labels_path=labels_path))


def write_inputs(folder, m: ExpressionMatrix, labels: LabelSet):
    matrix_path = os.path.join(folder, "toy.tsv")
    labels_path = os.path.join(folder, "toy_labels.tsv")
    save_dense(m, matrix_path)
    save_labels(labels, m.cell_ids, labels_path)
    return matrix_path, labels_path


def test_run_pipeline_writes_outputs(tmp_path, toy_small):
    matrix_path, labels_path = write_inputs(str(tmp_path), *toy_small)
    out = str(tmp_path / "out")
    cfg = PipelineConfig.new({
        "input_path": matrix_path,
        "labels_path": labels_path,
        "hvg": {"n_top_genes": 80},
        "autoencoder": {"bottleneck": 8, "epochs": 2},
        "compare_imputation": True,
        "strategies": ["sequential", "random"],
        "k_min": 2,
        "k_max": 3,
        "kmeans": {"n_init": 3},
        "output_folder": out,
    }).valid()
    reports = run_pipeline(cfg, run_id="test")
    assert [r.imputed for r in reports] == [True, False]
    assert reports[0].n_genes == 80
    for name in ("report.json", "report.timings.json", "report_plot.tsv", "report_plot_series.tsv",
                 "report_win_cases.tsv", "report_no_impute.json"):
        assert os.path.exists(os.path.join(out, name))
    assert load_report(os.path.join(out, "report.json")) == reports[0]
    assert "impute" in reports[0].timings


def test_run_pipeline_needs_labels(tmp_path, toy_small):
    matrix_path, _ = write_inputs(str(tmp_path), *toy_small)
    with pytest.raises(ValidationError):
        run_pipeline(config(input_path=matrix_path), write=False)


@pytest.mark.slow
def test_subspaces_beat_baseline_on_toy_data():
    from featpca import make_toy_dataset

    beat = 0
    for seed in range(10):
        m, labels = make_toy_dataset(seed=seed)
        cfg = PipelineConfig.new({
            "hvg": {"n_top_genes": 2000},
            "impute": False,
            "strategies": ["sequential"],
            "k_min": 2,
            "k_max": 10,
            "seed": seed,
        }).valid()
        report = run_sweep(prepare_matrix(m, cfg), labels, cfg)
        s = report.strategies[0]
        assert s.win_count >= 1
        beat += s.max_ari is not None and s.max_ari >= report.baseline_ari
    assert beat >= 8


def test_prepared_matrix_keeps_cells(toy_small):
    m, _ = toy_small
    prepared = prepare_matrix(m, PipelineConfig.new({"hvg": {"n_top_genes": 50}, "impute": False}).valid())
    assert prepared.cell_ids == m.cell_ids
    assert prepared.n_genes == 50
    assert np.all(prepared.values >= 0)
