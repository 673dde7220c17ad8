#  Copyright (c) 2022 Robert Lieck.

from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

from bgkflow.grid import PhaseGrid, compute_moments
from bgkflow.riemann import EulerState

FIELDS = ('rho', 'u', 'T', 'p')
LABELS = {'rho': r'$\rho$', 'u': r'$u$', 'T': r'$T$', 'p': r'$p$'}


def create_fig(n_panels: int = 1, fig=None, axes=None, **kwargs):
    """new figure with a row of panels unless figure and axes are given"""
    if fig is None or axes is None:
        fig, axes = plt.subplots(1, n_panels, figsize=kwargs.pop('figsize', (4 * n_panels, 3.5)), squeeze=False,
                                 **kwargs)
        axes = axes[0]
    return fig, np.atleast_1d(axes)


def plot_snapshot(f: np.ndarray, grid: PhaseGrid, fields: Sequence[str] = ('rho', 'u', 'T'),
                  exact: Optional[EulerState] = None, label: Optional[str] = None, fig=None, axes=None,
                  show: bool = False):
    """
    Macroscopic fields of a distribution, optionally with the exact Euler solution as a black line.

    :param f: distribution
    :param grid: phase-space grid
    :param fields: subset of ('rho', 'u', 'T', 'p')
    :param exact: exact solution sampled at the cell centres
    :param label: legend label of the numerical solution
    :param fig: existing figure (requires ``axes``)
    :param axes: existing axes, one per field
    :param show: call ``plt.show()``
    :return: figure and axes
    """
    for name in fields:
        if name not in FIELDS:
            raise ValueError(f"unknown field '{name}', choose from {FIELDS}")
    m = compute_moments(f, grid)
    values = {'rho': m.rho, 'u': m.velocity, 'T': m.temperature, 'p': m.pressure}
    fig, axes = create_fig(len(fields), fig=fig, axes=axes)
    for ax, name in zip(axes, fields):
        ax.plot(grid.x, values[name], 'o', markersize=2.5, markerfacecolor='none', label=label)
        if exact is not None:
            ax.plot(grid.x, np.broadcast_to(getattr(exact, name), grid.x.shape), 'k-', linewidth=1, label='exact')
        ax.set_xlabel('$x$')
        ax.set_title(LABELS[name])
    if label is not None or exact is not None:
        axes[0].legend()
    fig.tight_layout()
    if show:
        plt.show()
    return fig, axes


def plot_equilibrium_history(histories: Dict[str, tuple], fig=None, axes=None, show: bool = False):
    """
    Semi-log plot of ``|f - M(f)|_1`` over time.

    :param histories: label -> (times, distances)
    """
    fig, axes = create_fig(1, fig=fig, axes=axes)
    ax = axes[0]
    for label, (times, distances) in histories.items():
        ax.semilogy(times, distances, label=label)
    ax.set_xlabel('$t$')
    ax.set_ylabel(r'$\|f - M\|_1$')
    ax.legend()
    fig.tight_layout()
    if show:
        plt.show()
    return fig, axes


def plot_stability_scan(scan: pd.DataFrame, x: str, y: str, threshold: Optional[float] = None, label: str = None,
                        fig=None, axes=None, show: bool = False):
    """
    Line plot of a stability scan (e.g. ``F_s`` over y, the largest BDF root over a, or ``a*`` over gamma).

    :param scan: data frame with the columns ``x`` and ``y``
    :param threshold: draw a horizontal line at this value (0 for F_s, 1 for root moduli)
    """
    fig, axes = create_fig(1, fig=fig, axes=axes)
    ax = axes[0]
    ax.plot(scan[x], scan[y], label=label)
    if threshold is not None:
        ax.axhline(threshold, color='k', linewidth=0.8, linestyle='--')
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    if label is not None:
        ax.legend()
    fig.tight_layout()
    if show:
        plt.show()
    return fig, axes
