"""Figure rendering for the CLI report paths.

matplotlib is imported lazily and forced onto the Agg backend so figures
render in headless environments; every function writes a file and returns
the path it wrote.
"""

from __future__ import annotations

from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_ramp_figure(rows: Sequence[tuple[float, float]], path: str) -> str:
    """Line plot of the self-similar ramp table."""
    plt = _pyplot()
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(xs, ys, lw=1.2)
    ax.set_xlabel("x")
    ax.set_ylabel("f")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_field_figure(field, path: str) -> str:
    """Stem plot of a winding field over its coset representatives."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.5))
    if field.values:
        xs = [float(a) for a, _ in field.values]
        ws = [w for _, w in field.values]
        ax.stem(xs, ws, basefmt="k-")
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlim(-0.05 * field.scale.n, 1.05 * field.scale.n)
    ax.set_xlabel("coset representative")
    ax.set_ylabel("winding")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_lift_figure(lift_obj, path: str) -> str:
    """Graph of a real lift against its grid."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(lift_obj.xs, lift_obj.values, lw=1.0)
    ax.set_xlabel("x")
    ax.set_ylabel("lift")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
