"""Render FigureData to PNG files.

Uses the Agg backend and pins the PNG metadata so repeated renders of the
same data are byte-identical.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import FigureData

_METADATA = {"Software": "qeiband"}


def render_png(data: FigureData, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=120)
    try:
        if data.id == "accn-evals":
            for name, col in data.columns.items():
                ax.loglog(data.grid, col, label=name)
            ax.set_xlabel("chi")
            ax.set_ylabel("eigenvalue")
            ax.set_title("accelerated-worldline eigenvalue branches")
        elif data.id == "thermal-band":
            ax.fill_between(
                data.grid,
                data.columns["lower"],
                data.columns["upper"],
                alpha=0.25,
                label="band",
            )
            ax.plot(data.grid, data.columns["exact"], color="C3", label="exact")
            ax.set_xlabel("beta / L")
            ax.set_ylabel("energy density in units 1/L^2")
            ax.set_title("circle thermal density inside its band")
        elif data.id == "misner":
            # both columns are negative; compare magnitudes on a log axis
            ax.semilogy(
                data.grid,
                [-v for v in data.columns["exact_prefactor"]],
                label="|exact prefactor|",
            )
            ax.semilogy(
                data.grid,
                [-v for v in data.columns["eigen_lower"]],
                label="|eigen lower bound|",
            )
            ax.set_xlabel("a")
            ax.set_ylabel("magnitude")
            ax.set_title("interior prefactor vs variational bound")
        else:
            for name, col in data.columns.items():
                ax.plot(data.grid, col, label=name)
            ax.set_xlabel(data.grid_name)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, metadata=_METADATA)
    finally:
        plt.close(fig)
