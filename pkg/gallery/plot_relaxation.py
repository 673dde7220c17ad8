#  Copyright (c) 2022 Robert Lieck.
"""
Relaxation to Equilibrium
===========================

Starting from a two-stream mixture far from equilibrium, implicit relaxation drives the distribution to the
Maxwellian of its moments in a single step when the Knudsen number is small.
"""

from bgkflow.plotting import plot_equilibrium_history
from bgkflow.scenarios import run_scenario

histories = {}
for name in ["IE-SL-Linear-DM", "RK2-W23-DM"]:
    trajectory = run_scenario("ap", name, n_x=40, kappa=1e-6, track_equilibrium=True)
    histories[name] = (trajectory.times, trajectory.equilibrium_distance)
plot_equilibrium_history(histories)
