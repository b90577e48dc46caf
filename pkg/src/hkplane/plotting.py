"""Summary figure written next to a verification report."""

from __future__ import annotations

import math
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import SuiteReport  # noqa: E402

RC = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "hkplane",
    "svg.fonttype": "none",
}


def figure_path(report_path: str | Path) -> Path:
    report_path = Path(report_path)
    return report_path.with_name(report_path.stem + "_summary.svg")


def _residuals(rep: SuiteReport) -> list[float]:
    out = []
    for r in rep.records:
        if isinstance(r.observed, dict):
            v = r.observed.get("residual")
            if isinstance(v, (int, float)) and math.isfinite(v):
                out.append(math.log10(max(v, 1e-18)))
    return out


def report_figure(reports: Sequence[SuiteReport], path: str | Path) -> Path:
    """Pass/fail counts per suite and, where suites record one, the spread of
    their numerical residual (log10, floored at 1e-18)."""
    path = Path(path)
    names = [r.suite_name for r in reports]
    with plt.rc_context(RC):
        fig, (ax_counts, ax_res) = plt.subplots(1, 2, figsize=(9, 3.4))
        xs = range(len(reports))
        passed = [r.passed for r in reports]
        failed = [r.failed for r in reports]
        ax_counts.bar(xs, passed, color="#4c9a5b", label="passed")
        ax_counts.bar(xs, failed, bottom=passed, color="#c0392b", label="failed")
        ax_counts.set_xticks(list(xs), names, rotation=30, ha="right")
        ax_counts.set_ylabel("samples")
        ax_counts.legend(frameon=False)

        series = [(r.suite_name, _residuals(r)) for r in reports]
        series = [(n, v) for n, v in series if v]
        if series:
            ax_res.boxplot([v for _, v in series], showfliers=True)
            ax_res.set_xticks(range(1, len(series) + 1), [n for n, _ in series],
                              rotation=30, ha="right")
            ax_res.set_ylabel("log10 residual")
        else:
            ax_res.set_axis_off()
        fig.tight_layout()
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path
