"""Tiny helper: hand back pyplot if matplotlib is installed, else None."""

import os


def pyplot():
    try:
        import matplotlib
    except ImportError:
        print("(matplotlib not installed; skipping the plot)")
        return None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save(fig, name):
    outdir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    print(f"saved {path}")
