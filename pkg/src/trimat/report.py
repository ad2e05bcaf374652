"""Figure output for ``trimat bench``."""

from __future__ import annotations

from pathlib import Path


def plot_bench(rows: list, path) -> Path:
    """Log-log wall time of both strategies against |n|; writes ``path`` and returns it.

    ``rows`` are dicts with keys n, iterative_s, matrix_s.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [abs(r["n"]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        ax.loglog(ns, [r["iterative_s"] for r in rows], "o-", label="iterative")
        ax.loglog(ns, [r["matrix_s"] for r in rows], "s-", label="matrix power")
        ax.set_xlabel("|n|")
        ax.set_ylabel("wall time (s)")
        ax.set_title("T_n evaluation time")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        out = Path(path)
        fig.savefig(out)
    finally:
        plt.close(fig)
    return out
