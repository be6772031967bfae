"""PNG rendering of trend scans (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path

from .trends import TrendRecord, trend_polynomials


def plot_trends(records: list[TrendRecord], path: str | Path, m: int, n: int) -> Path:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, (ax, bx) = plt.subplots(1, 2, figsize=(11, 4.5))
    qs = [r.q for r in records]
    counts = [r.count for r in records]
    right = [r.right_trend for r in records]

    ax.scatter([q for q, f in zip(qs, right) if not f], [c for c, f in zip(counts, right) if not f],
               s=6, color="tab:blue", label="other trends")
    ax.scatter([q for q, f in zip(qs, right) if f], [c for c, f in zip(counts, right) if f],
               s=10, color="tab:red", label="right trend")
    xs = sorted(set(qs))
    for c in trend_polynomials(records):
        ax.plot(xs, [c * (x * x - x) for x in xs], lw=0.6, color="grey")
    ax.set_xlabel("q")
    ax.set_ylabel("points")
    ax.set_title(f"(m,n) = ({m},{n})")
    ax.legend(loc="upper left")

    # count / (q^2 - q) turns each trend into a horizontal line
    ratio = [c / (q * q - q) for q, c in zip(qs, counts)]
    bx.scatter(qs, ratio, s=6, c=["tab:red" if f else "tab:blue" for f in right])
    bx.set_xscale("log")
    bx.set_xlabel("q")
    bx.set_ylabel("points / (q^2 - q)")

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
