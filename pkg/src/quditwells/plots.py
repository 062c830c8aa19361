"""Figure rendering for CLI reports.

Each helper writes one matplotlib figure to a file next to the delimited
artifact. Rendering is optional (the CLI's --figures flag); CSV/JSON
remain the primary outputs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGSIZE = (6.0, 4.0)


def save_level_diagram(path: str, eigenvalues, analytic=None) -> None:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for e in eigenvalues:
        ax.hlines(e, 0.0, 0.45, color="C0", lw=2)
    if analytic is not None:
        for e in analytic:
            ax.hlines(e, 0.55, 1.0, color="C1", lw=2, linestyles="--")
        ax.text(0.78, 0.02, "closed form", transform=ax.transAxes, color="C1")
    ax.text(0.05, 0.02, "numeric", transform=ax.transAxes, color="C0")
    ax.set_xticks([])
    ax.set_ylabel("energy")
    ax.set_title("energy levels")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_population_trace(path: str, times, populations) -> None:
    pops = np.asarray(populations)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for i in range(pops.shape[1]):
        ax.plot(times, pops[:, i], label=f"well {i}")
    ax.set_xlabel("t")
    ax.set_ylabel("population")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="best", fontsize=8)
    ax.set_title("well populations")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_potential_and_states(path: str, pot, sol, n_levels: int | None = None) -> None:
    k = sol.eigenvectors.shape[0] if n_levels is None else min(n_levels, sol.eigenvectors.shape[0])
    xs = np.linspace(sol.x[0], sol.x[-1], 1000)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(xs, pot.value(xs), color="k", lw=1.2, label="V(x)")
    span = max(np.max(np.abs(sol.eigenvectors[i])) for i in range(k))
    if k > 1:
        scale = 0.35 * (sol.eigenvalues[k - 1] - sol.eigenvalues[0] + 1e-30) / span
    else:
        scale = 1.0 / span
    for i in range(k):
        e = sol.eigenvalues[i]
        ax.axhline(e, color=f"C{i % 10}", lw=0.6, alpha=0.5)
        ax.plot(sol.x, e + scale * sol.eigenvectors[i], color=f"C{i % 10}",
                lw=1.0, label=f"$\\psi_{{{i}}}$")
    ax.set_xlabel("x")
    ax.set_ylabel("energy / shifted wavefunctions")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("potential and lowest states")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_band_fit(path: str, d: int, energies, fit) -> None:
    e = np.sort(np.asarray(energies, dtype=float))[:d]
    n = np.arange(d)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(n, e, "o", label="grid band")
    ax.plot(n, fit.model, "x--", label="cosine fit")
    ax.set_xlabel("sorted level index")
    ax.set_ylabel("energy")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(f"lowest band vs tight-binding dispersion (d={d})")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
