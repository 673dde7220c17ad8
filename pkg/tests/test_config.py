#  Copyright (c) 2022 Robert Lieck.

import os
from tempfile import TemporaryDirectory
from unittest import TestCase

from bgkflow.config import RunConfig, load_config, parse_config, parse_key_values
from bgkflow.errors import ConfigError, PairingViolationError, TypeMismatchError, UnknownKeyError
from bgkflow.integrators import TimeScheme


class TestConfig(TestCase):

    def test_scenario_defaults(self):
        config = parse_config("scenario = riemann")
        self.assertEqual((config.n_x, config.n_v, config.cfl, config.kappa, config.t_final),
                         (200, 30, 2., 1e-6, 0.16))
        self.assertEqual(config.scheme, "RK3-W35-DM")
        self.assertEqual(config.spec.time, TimeScheme.DIRK3)
        self.assertEqual(config.newton.tol, 1e-14)
        self.assertEqual(RunConfig().scenario, "single-shock")
        self.assertEqual(parse_config("scheme = C-IE-SL-Linear-DM").cfl, 0.9)

    def test_comments(self):
        text = "# first-order run\n" \
               "Scheme = IE-SL-Linear-DM   # classical\n" \
               "\n" \
               "n-x = 50\n" \
               "snapshots = 0.2, 0.1\n" \
               "plot = yes\n"
        config = parse_config(text)
        self.assertEqual(config.n_x, 50)
        # first-order default CFL number of the single shock
        self.assertEqual(config.cfl, 4.)
        self.assertEqual(config.snapshots, (0.1, 0.2))
        self.assertTrue(config.plot)
        self.assertEqual(parse_key_values("a = 1\na = 2"), {'a': '2'})

    def test_overrides(self):
        config = parse_config("n_x = 50\nscheme = RK3-W35-DM", n_x=None, scheme="RK2-W23-DM", out="results")
        self.assertEqual(config.n_x, 50)
        self.assertEqual(config.scheme, "RK2-W23-DM")
        self.assertEqual(config.out, "results")
        self.assertEqual(config.items()['out'], "results")
        self.assertRaises(UnknownKeyError, parse_config, "", bogus=1)

    def test_resolutions(self):
        self.assertEqual(parse_config("resolutions = 20, 40, 80").resolutions, (20, 40, 80))
        self.assertRaises(TypeMismatchError, parse_config, "resolutions = 20, 30")

    def test_stencil_reach(self):
        # riemann is free-flow at cfl 2: the W35 feet reach 2 cells, the stencil 6 more
        self.assertRaises(TypeMismatchError, parse_config, "scenario = riemann\nn_x = 7")
        self.assertEqual(parse_config("scenario = riemann\nn_x = 8").n_x, 8)
        # BDF3 transports the oldest level over three steps
        self.assertRaises(TypeMismatchError, parse_config, "scenario = riemann\nscheme = BDF3-W35-DM\nn_x = 11")
        self.assertEqual(parse_config("scenario = riemann\nscheme = BDF3-W35-DM\nn_x = 12").n_x, 12)
        # periodic grids only need the five cells of the flux reconstruction
        self.assertRaises(TypeMismatchError, parse_config, "scenario = smooth\nn_x = 4")
        self.assertEqual(parse_config("scenario = smooth\nn_x = 5").n_x, 5)
        self.assertRaises(TypeMismatchError, parse_config, "scenario = riemann\nresolutions = 4, 8, 16")

    def test_errors(self):
        for text in ["cfl = -1", "n_x = 10.5", "n_x = abc", "n_v = 1", "kappa = 0", "plot = maybe",
                     "scenario = sod", "snapshots = -0.1", "just a line"]:
            self.assertRaises(TypeMismatchError, parse_config, text)
        self.assertRaises(UnknownKeyError, parse_config, "resolution = 20")
        self.assertRaises(PairingViolationError, parse_config, "scheme = RK3-W23-DM")
        # all of them are configuration errors
        self.assertRaises(ConfigError, parse_config, "scheme = RK3-W23-DM")

    def test_load(self):
        with TemporaryDirectory() as directory:
            path = os.path.join(directory, "run.cfg")
            with open(path, "w") as fh:
                fh.write("scenario = smooth\nkappa = 1e-2\n")
            config = load_config(path, t_final=0.1)
            self.assertEqual((config.scenario, config.kappa, config.t_final), ("smooth", 1e-2, 0.1))
            self.assertRaises(OSError, load_config, os.path.join(directory, "missing.cfg"))
