#  Copyright (c) 2022 Robert Lieck.

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose
from scipy.optimize import brentq

from bgkflow.errors import NonpositiveStateError, VacuumFormedError
from bgkflow.riemann import EulerState, exact_euler_riemann, pressure_function, solve_star_region
from bgkflow.scenarios import RIEMANN_LEFT, RIEMANN_RIGHT, single_shock_states


class TestEulerState(TestCase):

    def test_state(self):
        state = EulerState(rho=2., u=0.5, p=3.)
        self.assertAlmostEqual(float(state.T), 1.5)
        self.assertAlmostEqual(float(state.sound_speed(3.)), np.sqrt(4.5))
        assert_allclose(state.conserved(3.), [2, 1, 1.5 + 0.25])
        assert_allclose(state.flux(3.), [1, 0.5 + 3, (1.75 + 3) * 0.5])
        self.assertRaises(NonpositiveStateError, EulerState, rho=-1., u=0., p=1.)
        self.assertRaises(NonpositiveStateError, EulerState, rho=[1., 1.], u=0., p=[1., 0.])


class TestStarRegion(TestCase):

    def test_identical_states(self):
        state = EulerState(rho=1., u=0.5, p=1.)
        p, u = solve_star_region(state, state)
        self.assertAlmostEqual(p, 1., places=12)
        self.assertAlmostEqual(u, 0.5, places=12)
        out = exact_euler_riemann(state, state, np.linspace(-3, 3, 13))
        assert_allclose(out.rho, 1, rtol=1e-12)
        assert_allclose(out.u, 0.5, rtol=1e-12)

    def test_single_shock(self):
        left, right = single_shock_states(mach=2.)
        p, u = solve_star_region(left, right)
        assert_allclose(p, 5.5, rtol=1e-10)
        assert_allclose(u, 6 * np.sqrt(3) / 8, rtol=1e-10)

    def test_published_values(self):
        # star states of classical shock-tube problems for gamma = 1.4
        cases = [
            (EulerState(1., 0., 1.), EulerState(0.125, 0., 0.1), 0.30313, 0.92745, 1e-4),
            (EulerState(1., -2., 0.4), EulerState(1., 2., 0.4), 0.00189, 0., 5e-3),
            (EulerState(5.99924, 19.5975, 460.894), EulerState(5.99242, -6.19633, 46.0950), 1691.64, 8.68975, 1e-4),
        ]
        for left, right, p_ref, u_ref, rtol in cases:
            p, u = solve_star_region(left, right, gamma=1.4)
            assert_allclose(p, p_ref, rtol=rtol)
            assert_allclose(u, u_ref, rtol=rtol, atol=1e-10)

    def test_root(self):
        # independent check of the root with scipy's bracketing solver
        left, right = EulerState(5.99924, 19.5975, 460.894), EulerState(5.99242, -6.19633, 46.0950)
        g = 1.4

        def velocity_jump(p, s):
            A, B = 2 / ((g + 1) * float(s.rho)), (g - 1) / (g + 1) * float(s.p)
            if p > s.p:
                return (p - s.p) * np.sqrt(A / (p + B))
            a = np.sqrt(g * float(s.p) / float(s.rho))
            return 2 * a / (g - 1) * ((p / float(s.p)) ** ((g - 1) / (2 * g)) - 1)

        oracle = brentq(lambda p: velocity_jump(p, left) + velocity_jump(p, right) + float(right.u - left.u),
                        1e-6, 1e5, xtol=1e-14, rtol=1e-15)
        p, _ = solve_star_region(left, right, gamma=g)
        assert_allclose(p, oracle, rtol=1e-10)
        self.assertLess(abs(float(pressure_function(p, left, right, g))), 1e-9)

    def test_errors(self):
        left, right = EulerState(1., -10., 1.), EulerState(1., 10., 1.)
        self.assertRaises(VacuumFormedError, solve_star_region, left, right)
        self.assertRaises(ValueError, solve_star_region, RIEMANN_LEFT, RIEMANN_RIGHT, gamma=1.)


class TestExactSolution(TestCase):

    gamma = 3.
    left, right = RIEMANN_LEFT, RIEMANN_RIGHT

    def setUp(self):
        self.p_star, self.u_star = solve_star_region(self.left, self.right, self.gamma)

    def test_structure(self):
        # the left wave is a rarefaction and the right wave a shock
        self.assertLess(self.p_star, float(self.left.p))
        self.assertGreater(self.p_star, float(self.right.p))
        out = exact_euler_riemann(self.left, self.right, np.array([-5., 5.]), self.gamma)
        assert_allclose(out.rho, [self.left.rho, self.right.rho])
        assert_allclose(out.p, [self.left.p, self.right.p])

    def test_rankine_hugoniot(self):
        a_r = float(self.right.sound_speed(self.gamma))
        z = (self.gamma - 1) / (2 * self.gamma)
        speed = float(self.right.u) + a_r * np.sqrt((self.gamma + 1) / (2 * self.gamma) * self.p_star /
                                                    float(self.right.p) + z)
        states = exact_euler_riemann(self.left, self.right, np.array([speed - 1e-9, speed + 1e-9]), self.gamma)
        behind = EulerState(states.rho[0], states.u[0], states.p[0])
        ahead = EulerState(states.rho[1], states.u[1], states.p[1])
        assert_allclose(ahead.p, self.right.p)
        assert_allclose(behind.p, self.p_star)
        jump = speed * (ahead.conserved(self.gamma) - behind.conserved(self.gamma))
        assert_allclose(jump, ahead.flux(self.gamma) - behind.flux(self.gamma), atol=1e-8)

    def test_rarefaction_invariants(self):
        a_l = float(self.left.sound_speed(self.gamma))
        z = (self.gamma - 1) / (2 * self.gamma)
        head = float(self.left.u) - a_l
        tail = self.u_star - a_l * (self.p_star / float(self.left.p)) ** z
        xi = np.linspace(head, tail, 12)[1:-1]
        fan = exact_euler_riemann(self.left, self.right, xi, self.gamma)
        riemann_invariant = fan.u + 2 * fan.sound_speed(self.gamma) / (self.gamma - 1)
        assert_allclose(riemann_invariant, float(self.left.u) + 2 * a_l / (self.gamma - 1), atol=1e-8)
        assert_allclose(fan.p / fan.rho ** self.gamma, float(self.left.p / self.left.rho ** self.gamma), rtol=1e-8)
        # characteristic speed equals the similarity coordinate inside the fan
        assert_allclose(fan.u - fan.sound_speed(self.gamma), xi, atol=1e-8)
        # density decreases monotonically through the fan
        self.assertTrue(np.all(np.diff(fan.rho) < 0))
