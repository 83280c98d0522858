"""Matplotlib figure rendering for the report paths of the CLI.

Figures are written to files next to the delimited output; matplotlib is
imported lazily with the Agg backend so headless runs and figure-less
invocations stay cheap.
"""

from __future__ import annotations

import os
from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_processor_profile(
    profiles: dict[str, Sequence[int]], l: int, out_dir: str
) -> str:
    """Step plot of ASAP active-processor counts over time, one line per
    labelled topology.  Returns the written path."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, active in profiles.items():
        steps = list(range(len(active) + 1))
        ax.step(steps, list(active) + [0], where="post", label=label)
    ax.set_xlabel("time step")
    ax.set_ylabel("active processors")
    ax.set_title(f"ASAP processor occupancy, l={l}")
    ax.legend()
    ax.grid(True, alpha=0.3)
    path = os.path.join(out_dir, f"processors_l{l}.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def save_sweep_figures(rows: Sequence[dict], out_dir: str) -> list[str]:
    """Work and processor comparisons across a sweep range.

    Each row carries l, work_same_depth, work_reworked, procs_same_depth,
    procs_reworked.  Returns the written paths.
    """
    plt = _pyplot()
    ls = [r["l"] for r in rows]
    paths = []

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ls, [r["work_same_depth"] for r in rows], label="same-depth", lw=0.9)
    ax.plot(ls, [r["work_reworked"] for r in rows], label="reworked", lw=0.9)
    ax.set_xlabel("message blocks l")
    ax.set_ylabel("work (primitive units)")
    ax.set_title("Work before and after rework")
    ax.legend()
    ax.grid(True, alpha=0.3)
    path = os.path.join(out_dir, "sweep_work.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ls, [r["procs_same_depth"] for r in rows], label="same-depth", lw=0.9)
    ax.plot(ls, [r["procs_reworked"] for r in rows], label="reworked", lw=0.9)
    ax.set_xlabel("message blocks l")
    ax.set_ylabel("max ASAP processors")
    ax.set_title("Peak processors before and after rework")
    ax.legend()
    ax.grid(True, alpha=0.3)
    path = os.path.join(out_dir, "sweep_processors.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)
    return paths
