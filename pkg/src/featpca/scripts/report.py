import argparse

from ..matrix_io import load_report
from ..pipeline import emit_plot_data, plot_table, win_case_table


def run(args: list[str]):
    parser = argparse.ArgumentParser(prog="featpca report", description="Win cases and plot data of a saved report")
    parser.add_argument("report", help="report json written by `featpca sweep`")
    parser.add_argument("plot", nargs="?", help="write plot data here (and <stem>_series next to it)")
    ns = parser.parse_args(args)
    report = load_report(ns.report)
    print(f"baseline ARI {report.baseline_ari} ({report.n_cells} cells, {report.n_genes} genes, {report.n_clusters} clusters)")
    print(plot_table(report).to_string(index=False))
    print()
    print(win_case_table(report).to_string(index=False))
    if ns.plot:
        paths = emit_plot_data(report, ns.plot)
        print("plot data:", ", ".join(paths))
