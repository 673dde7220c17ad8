#  Copyright (c) 2022 Robert Lieck.

from typing import Sequence

import numpy as np

# symmetric six-point stencil for the value half way between two cell centres
_MIDPOINT_WEIGHTS = np.array([3., -25., 150., 150., -25., 3.]) / 256


def relative_l1(a: np.ndarray, reference: np.ndarray) -> float:
    """
    Relative L1 distance ``sum|a - reference| / sum|reference|`` (absolute distance if the reference vanishes).
    """
    a = np.asarray(a, dtype=float)
    reference = np.asarray(reference, dtype=float)
    assert a.shape == reference.shape, f"shapes differ: {a.shape} and {reference.shape}"
    norm = np.abs(reference).sum()
    diff = np.abs(a - reference).sum()
    if norm == 0:
        return float(diff)
    return float(diff / norm)


def restrict_to_coarse(fine: np.ndarray, periodic: bool = True) -> np.ndarray:
    """
    Map cell-centred values on a grid with ``2n`` cells onto the centres of the coarse grid with ``n`` cells.

    Coarse cell ``i`` covers fine cells ``2i`` and ``2i + 1``; its centre is the midpoint of their centres, which is
    evaluated with a sixth-order symmetric stencil. Non-periodic data is extended by constant extrapolation.

    :param fine: array with an even number of cells along the first axis
    :param periodic: wrap around (True) or extend by constant values (False)
    :return: array with half as many cells
    """
    fine = np.asarray(fine, dtype=float)
    n_fine = fine.shape[0]
    if n_fine % 2 != 0:
        raise ValueError(f"fine grid must have an even number of cells, got {n_fine}")
    pad = [(2, 3)] + [(0, 0)] * (fine.ndim - 1)
    padded = np.pad(fine, pad, mode='wrap' if periodic else 'edge')
    # padded index p corresponds to fine index p - 2; midpoint of fine cells 2i, 2i+1 uses 2i-2, ..., 2i+3
    out = 0
    for k, w in enumerate(_MIDPOINT_WEIGHTS):
        out = out + w * padded[k:k + n_fine:2]
    return out


def convergence_rates(errors: Sequence[float]) -> np.ndarray:
    """
    Observed rates ``log2(e_k / e_{k+1})`` for errors of successive grid doublings. Rates involving a vanishing error
    are undefined and returned as NaN.
    """
    errors = np.asarray(errors, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        rates = np.log2(errors[:-1] / errors[1:])
    rates[~np.isfinite(rates)] = np.nan
    return rates


def assert_increasing_by_factor(values: Sequence[int], factor: int = 2):
    """check that every value is ``factor`` times the previous one"""
    values = list(values)
    if len(values) < 2:
        raise ValueError(f"need at least two resolutions, got {values}")
    for coarse, fine in zip(values[:-1], values[1:]):
        if fine != factor * coarse:
            raise ValueError(f"resolutions must increase by a factor of {factor}, got {coarse} -> {fine}")
