#  Copyright (c) 2022 Robert Lieck.
"""
Linear Stability
===========================

Stability of the conservative time integrators for the advection equation ``u_t + u_x = 0``.
"""

# %%
# DIRK schemes
# ------------------------
#
# A DIRK scheme is stable for a Fourier mode ``y = a xi`` iff ``y F_s(y) >= 0``; the first sign change of ``F_s``
# gives the maximal Courant number ``a* = y* / pi``. The third-order singly diagonally implicit scheme is unstable for
# every Courant number.

import numpy as np

from bgkflow.integrators import builtin_tableaus
from bgkflow.plotting import create_fig, plot_stability_scan
from bgkflow.stability import StabilityScan, bdf_scan, fs_scan, rk_critical_y
from bgkflow.tableau import BDF2, sdirk3_tableau

tableaus = dict(builtin_tableaus(), SDIRK3=sdirk3_tableau())
fig, axes = create_fig(1)
for name, tableau in tableaus.items():
    plot_stability_scan(fs_scan(tableau, y_max=8.), 'y', 'F_s', label=name, fig=fig, axes=axes)
    print(f"{name}: y* = {rk_critical_y(tableau):.6f}, a* = {rk_critical_y(tableau) / np.pi:.4f}")
axes[0].axhline(0, color='k', linewidth=0.8, linestyle='--')

# %%
# BDF schemes
# ------------------------
#
# For BDF schemes the largest root of the characteristic polynomial over all Fourier modes must stay inside the unit
# disc.

scan = StabilityScan(xi_samples=401, a_step=0.01, a_max=1.)
plot_stability_scan(bdf_scan(BDF2, scan, stop_at_instability=False), 'a', 'max_abs_rho', threshold=1.,
                    label=BDF2.name)
