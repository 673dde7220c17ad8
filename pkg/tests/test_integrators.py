#  Copyright (c) 2022 Robert Lieck.

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from bgkflow.diagnostics import conservation_error, distance_to_equilibrium
from bgkflow.errors import NonFiniteValueError, PairingViolationError
from bgkflow.grid import MomentField, PhaseGrid, moment_array
from bgkflow.integrators import (Collision, SchemeSpec, Stepper, TimeScheme, bdf_coefficients, bdf_startup, run,
                                 step_bdf, step_ie, time_steps)
from bgkflow.maxwellian import MaxwellianKind, discrete_maxwellian
from bgkflow.reconstruction import GwenoOrder
from bgkflow.scenarios import run_scenario
from bgkflow.stability import bdf_characteristic_roots
from bgkflow.tableau import BDF2

ALL_DM_SCHEMES = ["IE-SL-Linear-DM", "C-IE-SL-Linear-DM", "RK2-W23-DM", "RK3-W35-DM", "BDF2-W23-DM",
                  "BDF3-W35-DM", "classical-RK3-W35-DM"]


def uniform_maxwellian(grid, u=0.3, T=0.8):
    m = MomentField.from_primitive(rho=np.ones(grid.n_x), u=u, T=T)
    return discrete_maxwellian(m, grid)[1]


class TestSchemeSpec(TestCase):

    def test_parse(self):
        spec = SchemeSpec.parse("RK3-W35-DM")
        self.assertEqual(spec, SchemeSpec(TimeScheme.DIRK3, GwenoOrder.W35, MaxwellianKind.DISCRETE, True))
        spec = SchemeSpec.parse("BDF2-W23-CM")
        self.assertEqual((spec.time, spec.maxwellian, spec.conservative),
                         (TimeScheme.BDF2, MaxwellianKind.CONTINUOUS, True))
        # first-order schemes are classical unless marked
        self.assertFalse(SchemeSpec.parse("IE-SL-Linear-DM").conservative)
        self.assertTrue(SchemeSpec.parse("C-IE-SL-Linear-DM").conservative)
        # without Maxwellian suffix: classical scheme with continuous Maxwellian
        spec = SchemeSpec.parse("RK3-W35")
        self.assertEqual((spec.maxwellian, spec.conservative), (MaxwellianKind.CONTINUOUS, False))
        self.assertFalse(SchemeSpec.parse("classical-RK2-W23-DM").conservative)

    def test_name(self):
        for name in ALL_DM_SCHEMES + ["BDF2-W23-CM", "classical-RK3-W35-CM"]:
            spec = SchemeSpec.parse(name)
            self.assertEqual(spec.name, name)
            self.assertEqual(SchemeSpec.parse(spec.name), spec)
            self.assertEqual(str(spec), name)

    def test_pairing(self):
        for name in ["RK3-W23-DM", "BDF2-W35-DM", "IE-SL-W35-DM", "RK4-W35-DM", "RK3-W47-DM", "RK3-W35-XM",
                     "RK3", ""]:
            self.assertRaises(PairingViolationError, SchemeSpec.parse, name)
        self.assertRaises(PairingViolationError, SchemeSpec, "DIRK2", "W35")


class TestTimeSteps(TestCase):

    def test_steps(self):
        assert_allclose(time_steps(1., 0.3), [0.3, 0.3, 0.3, 0.1])
        self.assertEqual(time_steps(0.9, 0.3), [0.3] * 3)
        self.assertEqual(time_steps(0., 0.1), [])
        self.assertRaises(ValueError, time_steps, 1., 0.)
        self.assertRaises(ValueError, time_steps, -1., 0.1)


class TestEquilibrium(TestCase):

    grid = PhaseGrid(-1, 1, 16, -8, 8, 20)

    def test_fixed_point(self):
        # a space-homogeneous discrete Maxwellian is left unchanged by every scheme
        f0 = uniform_maxwellian(self.grid)
        for name in ALL_DM_SCHEMES:
            trajectory = run(name, f0, self.grid, kappa=1e-3, cfl=0.5, t_final=0.05)
            self.assertGreater(trajectory.n_steps, 3)
            assert_allclose(trajectory.f, f0, rtol=1e-10, atol=1e-13, err_msg=name)

    def test_collision(self):
        collision = Collision(self.grid, kappa=1e-2)
        f0 = uniform_maxwellian(self.grid)
        f, M = collision.relax(f0, 0.1)
        assert_allclose(f, f0, rtol=1e-10, atol=1e-13)
        stats = collision.stats()
        self.assertEqual(stats['maxwellian_solves'], 1)
        self.assertGreaterEqual(stats['newton_max_iterations'], 0)
        self.assertRaises(ValueError, Collision, self.grid, kappa=0.)


class TestConservation(TestCase):

    def test_periodic(self):
        for name, cfl in [("RK3-W35-DM", 2.), ("C-IE-SL-Linear-DM", 0.9), ("RK2-W23-DM", 2.), ("BDF2-W23-DM", 0.5)]:
            trajectory = run_scenario("smooth", name, n_x=40, cfl=cfl, t_final=0.05)
            # periodic grids have constant reference totals
            assert_allclose(trajectory.reference, np.tile(trajectory.totals[0], (len(trajectory.times), 1)),
                            rtol=1e-13, atol=1e-15)
            error = conservation_error(trajectory)
            self.assertFalse(np.any(error.absolute))
            self.assertTrue(np.all(error.error <= 1e-11), msg=f"{name}: {error.error}")

    def test_free_flow_ledger(self):
        trajectory = run_scenario("single-shock", "RK3-W35-DM", n_x=50, t_final=0.1)
        self.assertEqual(trajectory.n_steps, 10)
        # the boundary inflow is booked in the reference totals
        error = conservation_error(trajectory)
        self.assertTrue(np.all(error.error <= 1e-11), msg=str(error.error))
        self.assertGreater(np.abs(trajectory.reference[-1] - trajectory.reference[0]).max(), 1e-6)

    def test_classical_ie_ledger(self):
        # non-uniform data at both free-flow ends, feet several cells away
        grid = PhaseGrid(0, 1, 30, -6, 6, 24, bc="free-flow")
        x = grid.x
        m = MomentField.from_primitive(rho=1 + x, u=0.5 + 0.5 * np.cos(3 * np.pi * x), T=1 + 0.3 * np.sin(4 * np.pi * x))
        f0 = discrete_maxwellian(m, grid)[1]
        trajectory = run("IE-SL-Linear-DM", f0, grid, 1e-6, 4., 0.1)
        self.assertGreater(np.abs(trajectory.reference[-1] - trajectory.reference[0]).max(), 1e-3)
        error = conservation_error(trajectory)
        self.assertTrue(np.all(error.error <= 1e-11), msg=str(error.error))

    def test_trajectory(self):
        trajectory = run_scenario("smooth", "RK3-W35-DM", n_x=40, t_final=0.05, snapshots=(0., 0.025, 1.))
        self.assertEqual(trajectory.times[-1], 0.05)
        self.assertEqual(trajectory.totals.shape, (trajectory.n_steps + 1, 3))
        self.assertEqual(trajectory.scale.shape, trajectory.totals.shape)
        self.assertEqual(sorted(trajectory.snapshots), [0., 0.025])
        self.assertGreaterEqual(trajectory.snapshots[0.025].t, 0.025)
        self.assertEqual(trajectory.snapshots[0.].t, 0.)
        for key in ['maxwellian_solves', 'newton_max_iterations', 'newton_mean_iterations', 'n_steps', 'dt',
                    'min_value']:
            self.assertIn(key, trajectory.stats)
        self.assertEqual(trajectory.stats['n_steps'], trajectory.n_steps)
        self.assertIsNone(trajectory.equilibrium_distance)

    def test_track_equilibrium(self):
        trajectory = run_scenario("ap", "IE-SL-Linear-DM", n_x=40, track_equilibrium=True)
        distance = trajectory.equilibrium_distance
        self.assertEqual(distance.shape, (trajectory.n_steps + 1,))
        self.assertTrue(np.all(distance >= 0))
        # the initial two-stream mixture relaxes to equilibrium in one step
        self.assertLess(distance[-1], 1e-2 * distance[0])


class TestStepper(TestCase):

    grid = PhaseGrid(-1, 1, 16, -8, 8, 20)

    def test_errors(self):
        stepper = Stepper(SchemeSpec.parse("RK3-W35-DM"), self.grid, kappa=1e-3)
        self.assertRaises(RuntimeError, stepper.advance, 0.01)
        f = np.ones(self.grid.shape)
        f[2, 3] = np.inf
        self.assertRaises(NonFiniteValueError, stepper.reset, f)
        self.assertRaises(ValueError, run, "RK3-W35-DM", np.ones(self.grid.shape), self.grid, 1e-3, 0., 0.1)

    def test_bdf_history(self):
        spec = SchemeSpec.parse("BDF3-W35-DM")
        f0 = uniform_maxwellian(self.grid)
        collision = Collision(self.grid, kappa=1e-3)
        levels = bdf_startup(f0, self.grid, 0.01, spec, collision)
        self.assertEqual(len(levels), 3)
        self.assertIs(levels[-1], f0)
        self.assertRaises(ValueError, step_bdf, levels[:2], self.grid, 0.01, bdf_coefficients(spec.time),
                          collision, spec.space)
        self.assertRaises(ValueError, bdf_startup, f0, self.grid, 0.01, SchemeSpec.parse("RK3-W35-DM"), collision)

    def test_restart(self):
        # a change of the time step restarts the BDF history
        spec = SchemeSpec.parse("BDF2-W23-DM")
        stepper = Stepper(spec, self.grid, kappa=1e-3)
        stepper.reset(uniform_maxwellian(self.grid))
        for dt in [0.01, 0.01, 0.01, 0.005]:
            stepper.advance(dt)
        self.assertEqual(len(stepper._levels), 2)
        assert_allclose(moment_array(stepper.f, self.grid).sum(axis=0) * self.grid.dx, stepper.reference,
                        rtol=1e-12, atol=1e-14)


class TestRelaxation(TestCase):

    grid = PhaseGrid(-1, 1, 8, -8, 8, 32)

    def two_streams(self):
        v = self.grid.v
        row = (np.exp(-(v - 2) ** 2 / 2) + np.exp(-(v + 2) ** 2 / 2)) / (2 * np.sqrt(2 * np.pi))
        return np.tile(row, (self.grid.n_x, 1))

    def test_implicit_euler_damping(self):
        # space-homogeneous data: every step scales f - M by kappa / (kappa + dt), also for dt >> kappa
        f0 = self.two_streams()
        dt = 0.1
        for kappa in [1., 1e-2, 1e-6]:
            for conservative in [False, True]:
                with self.subTest(kappa=kappa, conservative=conservative):
                    collision = Collision(self.grid, kappa=kappa)
                    f1 = step_ie(f0, self.grid, dt, collision, conservative=conservative).f
                    f2 = step_ie(f1, self.grid, dt, collision, conservative=conservative).f
                    d0, d1, d2 = [distance_to_equilibrium(f, self.grid) for f in (f0, f1, f2)]
                    self.assertAlmostEqual(d1 / d0, kappa / (kappa + dt), delta=1e-6 * kappa / (kappa + dt))
                    self.assertLess(d2, d1)
                    self.assertTrue(np.all(f1 >= 0))

    def test_one_step_equilibrium_distance(self):
        # a single step from non-equilibrium data lands O(kappa) away from equilibrium
        for name in ["IE-SL-Linear-DM", "RK3-W35-DM"]:
            distances = []
            for kappa in [1e-4, 1e-5, 1e-6]:
                trajectory = run_scenario("ap", name, n_x=40, kappa=kappa, track_equilibrium=True)
                distances.append(trajectory.equilibrium_distance[1])
            ratios = np.array(distances[:-1]) / np.array(distances[1:])
            with self.subTest(scheme=name):
                self.assertTrue(np.all((ratios >= 5) & (ratios <= 20)), msg=f"ratios {ratios}")


class TestBdfAmplification(TestCase):

    def test_low_mode(self):
        # with linear WENO weights (tiny perturbation) and negligible relaxation, one conservative BDF2 step
        # multiplies the leading Fourier mode of the right-moving row by the principal characteristic root
        grid = PhaseGrid(0, 1, 64, -1, 1, 2)
        a, eps = 0.5, 1e-6
        dt = a * grid.dx
        xi = 2 * np.pi * grid.dx
        y = a * xi
        roots = bdf_characteristic_roots(BDF2, a, xi)
        rho = roots[np.argmin(np.abs(roots - np.exp(-1j * y)))]
        mode = np.exp(1j * xi * np.arange(grid.n_x))
        history = []
        for power in [1, 0]:
            f = np.ones(grid.shape)
            f[:, 2] += eps * np.real(rho ** power * mode)
            history.append(f)
        collision = Collision(grid, kappa=1e12, kind=MaxwellianKind.CONTINUOUS)
        f_new = step_bdf(history, grid, dt, BDF2, collision, GwenoOrder.W23).f
        assert_allclose((f_new[:, 2] - 1) / eps, np.real(rho ** 2 * mode), atol=1e-4)
        # the rows at rest and moving left keep their uniform values
        assert_allclose(f_new[:, :2], 1, atol=1e-12)
