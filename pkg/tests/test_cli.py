#  Copyright (c) 2022 Robert Lieck.

import os
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from bgkflow.cli import EXIT_CONFIG, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, main, read_tableau
from bgkflow.storage import read_summary, read_table


class TestCli(TestCase):

    def setUp(self):
        self._directory = TemporaryDirectory()
        self.out = self._directory.name

    def tearDown(self):
        self._directory.cleanup()

    def path(self, *parts):
        return os.path.join(self.out, *parts)

    def write_config(self, text, name="run.cfg"):
        with open(self.path(name), "w") as fh:
            fh.write(text)
        return self.path(name)

    def test_run(self):
        config = self.write_config("scenario = smooth\nn_x = 20\nt_final = 0.02\nsnapshots = 0, 0.01\n")
        self.assertEqual(main(["run", "--config", config, "--out", self.path("run")]), EXIT_OK)
        for name in ["final.csv", "history.csv", "summary.txt", "snapshot_t0.000000.csv"]:
            self.assertTrue(os.path.isfile(self.path("run", name)), msg=name)
        summary = read_summary(self.path("run", "summary.txt"))
        self.assertEqual(summary['scheme'], "RK3-W35-DM")
        self.assertEqual(summary['n_x'], 20)
        self.assertLess(summary['mass_error'], 1e-11)
        # the last row of the history is the reported conservation error
        history = read_table(self.path("run", "history.csv"))
        self.assertEqual(history['t'].iloc[-1], 0.02)
        assert_allclose(history[['mass_rel', 'mom_rel', 'energy_rel']].iloc[-1],
                        [summary['mass_error'], summary['momentum_error'], summary['energy_error']], rtol=1e-15)
        self.assertEqual(len(read_table(self.path("run", "final.csv"))), 20)

    def test_run_exact(self):
        config = self.write_config("scenario = riemann\nscheme = C-IE-SL-Linear-DM\nn_x = 40\nt_final = 0.04\n"
                                   "exact = true\ndump_distribution = true\n")
        self.assertEqual(main(["run", "--config", config, "--out", self.out]), EXIT_OK)
        exact = read_table(self.path("exact.csv"))
        self.assertEqual(len(exact), 40)
        assert_allclose(exact["rho"].iloc[[0, -1]], [2.25, 3 / 7])
        self.assertEqual(len(read_table(self.path("distribution.csv"))), 40 * 31)

    def test_exit_codes(self):
        self.assertEqual(main(["run", "--scheme", "RK3-W23-DM", "--out", self.out]), EXIT_CONFIG)
        self.assertEqual(main(["run", "--config", self.path("missing.cfg")]), EXIT_IO)
        self.assertEqual(main(["run", "--scenario", "smooth", "--exact", "--out", self.out]), EXIT_CONFIG)
        self.assertEqual(main(["converge", "--scenario", "smooth", "--resolutions", "20", "--out", self.out]),
                         EXIT_CONFIG)
        self.assertEqual(main(["riemann-exact", "--left", "1,-10,1", "--right", "1,10,1", "--out", self.out]),
                         EXIT_NUMERICAL)
        self.assertEqual(main(["riemann-exact", "--left", "1,0", "--out", self.out]), EXIT_CONFIG)
        self.assertEqual(main(["stability"]), EXIT_CONFIG)
        # fewer cells than the free-flow stencils reach
        tiny = self.write_config("scenario = riemann\nn_x = 4\n", name="tiny.cfg")
        self.assertEqual(main(["run", "--config", tiny, "--out", self.out]), EXIT_CONFIG)
        with self.assertRaises(SystemExit):
            main(["run", "--scenario", "sod"])

    def test_riemann_exact(self):
        self.assertEqual(main(["riemann-exact", "--out", self.out]), EXIT_OK)
        df = read_table(self.path("riemann_exact.csv"))
        self.assertEqual(len(df), 200)
        self.assertEqual(list(df.columns), ['x', 'rho', 'u', 'T', 'p'])
        assert_allclose(df['rho'].iloc[[0, -1]], [2.25, 3 / 7])

    def test_stability(self):
        self.assertEqual(main(["stability", "bdf2", "--out", self.out]), EXIT_OK)
        summary = read_summary(self.path("stability.txt"))
        self.assertAlmostEqual(summary['a_star'], 0.5678, delta=5e-3)
        self.assertTrue(os.path.isfile(self.path("bdf2_roots.csv")))

        self.assertEqual(main(["stability", "dirk3", "--gamma", "0.3", "--out", self.out]), EXIT_OK)
        summary = read_summary(self.path("stability.txt"))
        self.assertAlmostEqual(summary['y_star'], 4.715426442, delta=1e-3)
        fs = read_table(self.path("dirk3_fs.csv"))
        self.assertEqual(list(fs.columns), ['y', 'F_s'])

    def test_tableau_file(self):
        alpha = float(1 - np.sqrt(2) / 2)
        path = self.write_config(f"name = my-dirk2\nA = {alpha!r}, 0; {1 - alpha!r}, {alpha!r}\n"
                                 f"b = {1 - alpha!r}, {alpha!r}\n", name="dirk2.txt")
        tableau = read_tableau(path)
        self.assertEqual(tableau.name, "my-dirk2")
        assert_allclose(tableau.c, [alpha, 1])
        self.assertEqual(main(["stability", "--tableau", path, "--out", self.out]), EXIT_OK)
        summary = read_summary(self.path("stability.txt"))
        self.assertAlmostEqual(summary['y_star'], 4.586275880, delta=1e-3)
        bad = self.write_config("A = 0.5\n", name="bad.txt")
        self.assertEqual(main(["stability", "--tableau", bad, "--out", self.out]), EXIT_CONFIG)
