#  Copyright (c) 2022 Robert Lieck.
"""
CSV and summary files written by the command line driver, and readers for them. Floats are written with 17
significant digits so that files round-trip exactly and identical runs give identical files.
"""

import logging
import os
from typing import Dict, Union

import numpy as np
import pandas as pd

from bgkflow.config import parse_key_values
from bgkflow.diagnostics import drift
from bgkflow.grid import PhaseGrid, compute_moments
from bgkflow.riemann import EulerState

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'
SNAPSHOT_COLUMNS = ['x', 'rho', 'u', 'T', 'p']
HISTORY_COLUMNS = ['step', 't', 'mass_rel', 'mom_rel', 'energy_rel']

PathLike = Union[str, os.PathLike]


def write_table(df: pd.DataFrame, path: PathLike) -> str:
    """write a data frame as CSV without index"""
    path = os.fspath(path)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.debug(f"wrote {path}")
    return path


def read_table(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")


def snapshot_frame(f: np.ndarray, grid: PhaseGrid) -> pd.DataFrame:
    """macroscopic fields (x, rho, u, T, p) of a distribution, one row per cell"""
    m = compute_moments(f, grid)
    return pd.DataFrame({'x': grid.x, 'rho': m.rho, 'u': m.velocity, 'T': m.temperature, 'p': m.pressure},
                        columns=SNAPSHOT_COLUMNS)


def euler_frame(x: np.ndarray, state: EulerState) -> pd.DataFrame:
    """the same columns as :func:`snapshot_frame` for an Euler state sampled at x"""
    return pd.DataFrame({'x': x, 'rho': state.rho, 'u': state.u, 'T': state.T, 'p': state.p},
                        columns=SNAPSHOT_COLUMNS)


def snapshot_file_name(t: float) -> str:
    return f"snapshot_t{t:.6f}.csv"


def write_snapshot(path: PathLike, f: np.ndarray, grid: PhaseGrid) -> str:
    return write_table(snapshot_frame(f, grid), path)


def history_frame(trajectory) -> pd.DataFrame:
    """
    Conservation history of a run: the drift of each moment total after every step relative to the reference totals
    (the last row equals :func:`~bgkflow.diagnostics.conservation_error`).
    """
    error = drift(trajectory.totals, trajectory.reference, trajectory.scale[0][None, :]).error
    return pd.DataFrame({'step': np.arange(len(trajectory.times)), 't': trajectory.times,
                         'mass_rel': error[:, 0], 'mom_rel': error[:, 1], 'energy_rel': error[:, 2]},
                        columns=HISTORY_COLUMNS)


def write_history(path: PathLike, trajectory) -> str:
    return write_table(history_frame(trajectory), path)


def distribution_frame(f: np.ndarray, grid: PhaseGrid) -> pd.DataFrame:
    """distribution in long format with columns (i, j, x, v, f)"""
    i, j = np.meshgrid(np.arange(grid.n_x), np.arange(grid.n_v + 1), indexing='ij')
    return pd.DataFrame({'i': i.ravel(), 'j': j.ravel(), 'x': grid.x[i.ravel()], 'v': grid.v[j.ravel()],
                         'f': np.asarray(f, dtype=float).ravel()})


def write_distribution(path: PathLike, f: np.ndarray, grid: PhaseGrid) -> str:
    return write_table(distribution_frame(f, grid), path)


def read_distribution(path: PathLike) -> np.ndarray:
    """read a distribution written by :func:`write_distribution` back into an array of shape (n_x, n_v + 1)"""
    df = read_table(path)
    n_x, n_v1 = int(df['i'].max()) + 1, int(df['j'].max()) + 1
    f = np.full((n_x, n_v1), np.nan)
    f[df['i'].to_numpy(), df['j'].to_numpy()] = df['f'].to_numpy()
    return f


def format_value(value) -> str:
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    if isinstance(value, (tuple, list)):
        return ', '.join(format_value(v) for v in value)
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def write_summary(path: PathLike, summary: Dict[str, object]) -> str:
    """write ``key = value`` lines (the config file format)"""
    path = os.fspath(path)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as fh:
        for key, value in summary.items():
            fh.write(f"{key} = {format_value(value)}\n")
    logger.debug(f"wrote {path}")
    return path


def read_summary(path: PathLike) -> Dict[str, Union[str, float]]:
    """read a summary file; values that parse as numbers are returned as floats"""
    with open(path, "r") as fh:
        raw = parse_key_values(fh.read())
    out = {}
    for key, value in raw.items():
        try:
            out[key] = float(value)
        except ValueError:
            out[key] = value
    return out
