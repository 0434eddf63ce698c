from ..pipeline import new_run_id, run_pipeline, win_case_table
from ._common import config_from_args, create_parser


def run(args: list[str]):
    parser = create_parser("sweep", "Baseline and every (strategy, k) trial, with reports and plot data")
    ns = parser.parse_args(args)
    cfg = config_from_args(ns)
    run_id = new_run_id()
    for report in run_pipeline(cfg, run_id):
        title = "imputed" if report.imputed else "not imputed"
        print(f"[{run_id}] {title}: baseline ARI {report.baseline_ari:.4f} ({report.baseline_components} components)")
        print(win_case_table(report).to_string(index=False))
    print(f"output: {cfg.output_folder}")
