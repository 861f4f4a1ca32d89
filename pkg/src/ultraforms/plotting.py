"""Figures for survey reports, written straight to files.

Uses the object-oriented matplotlib API (no pyplot state), so rendering is
safe to call from library code.
"""

from pathlib import Path

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure


def survey_figure(report, path):
    """Bar chart of all vs anisotropic forms per dimension, with the 2^(n+1) bound marked."""
    dims = sorted(report.counts)
    totals = [report.counts[d][0] for d in dims]
    aniso = [report.counts[d][1] for d in dims]
    fig = Figure(figsize=(6, 3.6))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    width = 0.4
    ax.bar([d - width / 2 for d in dims], totals, width, label="forms", color="0.7")
    ax.bar([d + width / 2 for d in dims], aniso, width, label="anisotropic", color="C3")
    ax.axvline(report.bound + 0.5, color="k", ls="--", lw=1, label=f"2^(n+1) = {report.bound}")
    ax.set_yscale("symlog", linthresh=1)
    ax.set_xticks(dims)
    ax.set_xlabel("dimension")
    ax.set_ylabel("square-class forms")
    ax.set_title(f"F_{report.p}((t1))..((t{report.n})): max anisotropic dim {report.max_anisotropic_dim}")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    return path


def index_figure(report, path):
    """Histogram of exact indices from :func:`ultraforms.brauer.index_survey`."""
    hist = report["index_histogram"]
    keys = sorted(hist, key=int)
    fig = Figure(figsize=(4, 3))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    ax.bar(keys, [hist[k] for k in keys], color="C0")
    ax.set_xlabel("exact index")
    ax.set_ylabel("expressions")
    ax.set_title(f"p={report['p']}, n={report['n']}: bound ≤ {report['max_bound']}")
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    return path
