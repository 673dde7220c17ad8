#  Copyright (c) 2022 Robert Lieck.
"""
Single Shock
===========================

A Mach 2 shock in the fluid limit, computed with the conservative first-order scheme and compared to the exact
solution of the Euler equations.
"""

# %%
# Run
# ------------------------
#
# A coarse grid keeps the example fast; the shock location is only right for the conservative scheme. Its upwind
# flux correction is explicit, so it runs at the default CFL number 0.9 rather than the 4 of the classical scheme.

from bgkflow.diagnostics import conservation_error, shock_position
from bgkflow.grid import compute_moments
from bgkflow.plotting import plot_snapshot
from bgkflow.scenarios import JUMP_POSITION, exact_solution, run_scenario, shock_speed, single_shock_states

t_final = 0.2
trajectory = run_scenario("single-shock", "C-IE-SL-Linear-DM", n_x=100, n_v=40, t_final=t_final)
exact = exact_solution("single-shock", trajectory.grid.x, t_final)
plot_snapshot(trajectory.f, trajectory.grid, exact=exact, label=trajectory.spec.name)

# %%
# Diagnostics
# ------------------------

left, right = single_shock_states()
rho = compute_moments(trajectory.f, trajectory.grid).rho
print(f"shock at {shock_position(trajectory.grid.x, rho, float(left.rho), float(right.rho)):.4f}, "
      f"exact {JUMP_POSITION + shock_speed() * t_final:.4f}")
print(f"conservation errors: {conservation_error(trajectory).error}")
