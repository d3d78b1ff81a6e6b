"""Figure rendering for the CLI report path.

Matplotlib is imported lazily so that plain data runs never touch it.
Figures are written next to the delimited output with the same stem.
"""

from __future__ import annotations

from pathlib import Path

_RC = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 150,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.labelsize": 11,
    "legend.fontsize": 9,
    "lines.linewidth": 1.4,
}


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_profile_figure(path: Path, xs, values, xlabel: str, ylabel: str,
                        title: str) -> Path:
    """Line plot of a radial profile; returns the written path."""
    plt = _pyplot()
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(xs, values, color="tab:blue")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def save_scan_figure(path: Path, variable: str, rows: list[dict],
                     title: str) -> Path:
    """Energy-correction magnitudes versus the scan variable, log-log."""
    plt = _pyplot()
    xs = [row[variable] for row in rows]
    series = [("dc", "tab:blue"), ("xc", "tab:orange"),
              ("xb", "tab:green"), ("total_vp", "black")]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for name, color in series:
            ax.plot(xs, [abs(row[name]) for row in rows],
                    color=color, label=f"|{name}|")
        positive = [x for x in xs if x > 0]
        if len(positive) == len(xs) and min(xs) > 0 and max(xs) / min(xs) > 30:
            ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel(variable)
        ax.set_ylabel("correction magnitude (a.u.)")
        ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
