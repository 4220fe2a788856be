"""Figure rendering for scan reports.

Renders PNG figures next to the delimited exports: a scatter of the
failing triples and the cumulative failure rate as the prime bound grows.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .modarith import iter_eligible_q
from .scanstats import ScanReport

__all__ = ["render_scan_figures"]


def _triples_figure(report: ScanReport, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    if report.failures:
        xs = [t[0] for t in report.failures]
        ys = [t[2] for t in report.failures]
        ax.scatter(xs, ys, s=14, alpha=0.6, edgecolors="none")
    else:
        ax.text(0.5, 0.5, "no failing triples", ha="center", va="center",
                transform=ax.transAxes)
    ax.set_xlabel("smallest prime of failing triple")
    ax.set_ylabel("largest prime of failing triple")
    ax.set_title(f"FM(2)-failing triples, p={report.p}, primes <= {report.bound}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _rate_figure(report: ScanReport, path: Path) -> None:
    qs = list(iter_eligible_q(report.p, report.bound))
    fail_max = sorted(t[2] for t in report.failures)
    xs, ys = [], []
    fails_below = 0
    fi = 0
    for idx, q in enumerate(qs):
        while fi < len(fail_max) and fail_max[fi] <= q:
            fails_below += 1
            fi += 1
        n = idx + 1
        triples = n * (n - 1) * (n - 2) // 6
        if triples:
            xs.append(q)
            ys.append(fails_below / triples)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    if xs:
        ax.step(xs, ys, where="post")
    ax.axhline(report.failure_fraction, linestyle="--", linewidth=1,
               label=f"overall {report.failure_fraction:.4%}")
    ax.set_xlabel("prime bound")
    ax.set_ylabel("failing fraction of triples")
    ax.set_title(f"cumulative FM(2) failure rate, p={report.p}")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scan_figures(report: ScanReport, out_dir, stem: str | None = None) -> list[Path]:
    """Write the scan figures into out_dir and return their paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = stem or f"scan_p{report.p}_b{report.bound}"
    paths = [out / f"{stem}_failures.png", out / f"{stem}_rate.png"]
    _triples_figure(report, paths[0])
    _rate_figure(report, paths[1])
    return paths
