"""Delimited and graphical summaries of experiment reports.

Each writer drops a CSV next to a PNG rendered with matplotlib (Agg
backend, so this works headless).  Paths of everything written are
returned for the CLI to print.
"""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .formula import to_text


def write_suite_report(report, outdir) -> list[Path]:
    """axiom_suite results: one CSV row per instance, pass-rate bars per schema."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"axioms-{report.system}-n{report.n}.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["schema", "instance", "tautology", "models_checked", "note"])
        for it in report.items:
            w.writerow([it.schema_id, to_text(it.instance),
                        int(it.verdict.is_tautology), it.verdict.models_checked, it.note])

    by_schema: dict[str, list[int]] = {}
    for it in report.items:
        tally = by_schema.setdefault(it.schema_id, [0, 0])
        tally[0] += 1
        tally[1] += int(it.verdict.is_tautology)
    names = list(by_schema)
    passed = [by_schema[s][1] for s in names]
    totals = [by_schema[s][0] for s in names]

    fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(names)), 4))
    ax.bar(names, totals, color="#d0d0d0", label="instances")
    ax.bar(names, passed, color="#3a7d44", label="tautologies")
    ax.set_ylabel("instances")
    ax.set_title(f"{report.system} schema suite, n={report.n}")
    ax.tick_params(axis="x", rotation=60)
    ax.legend()
    fig.tight_layout()
    png_path = outdir / f"axioms-{report.system}-n{report.n}.png"
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]


def write_faithfulness_report(report, outdir) -> list[Path]:
    """faithfulness_experiment results: per-size tallies plus disagreements."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    tag = f"faithfulness-{'-'.join(report.atoms)}-n{report.n}"
    csv_path = outdir / f"{tag}.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["size", "formulas", "tautologies", "disagreements"])
        bad_sizes: dict[int, int] = {}
        for d in report.disagreements:
            from .translate import _size

            bad_sizes[_size(d.formula)] = bad_sizes.get(_size(d.formula), 0) + 1
        for size in sorted(report.by_size):
            total, taut = report.by_size[size]
            w.writerow([size, total, taut, bad_sizes.get(size, 0)])

    sizes = sorted(report.by_size)
    totals = [report.by_size[s][0] for s in sizes]
    tauts = [report.by_size[s][1] for s in sizes]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(sizes, totals, marker="o", label="formulas")
    ax.plot(sizes, tauts, marker="s", label="tautologies")
    ax.set_xlabel("formula size")
    ax.set_yscale("log")
    ax.set_title(f"faithfulness sweep over {', '.join(report.atoms)}, n={report.n}")
    ax.legend()
    fig.tight_layout()
    png_path = outdir / f"{tag}.png"
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]
