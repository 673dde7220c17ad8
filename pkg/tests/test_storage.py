#  Copyright (c) 2022 Robert Lieck.

import os
from tempfile import TemporaryDirectory
from types import SimpleNamespace
from unittest import TestCase

import numpy as np
import pandas as pd
from numpy.testing import assert_allclose, assert_array_equal

from bgkflow.grid import PhaseGrid
from bgkflow.riemann import EulerState
from bgkflow.storage import (HISTORY_COLUMNS, SNAPSHOT_COLUMNS, euler_frame, history_frame, read_distribution,
                             read_summary, read_table, snapshot_file_name, snapshot_frame, write_distribution,
                             write_snapshot, write_summary, write_table)


class TestStorage(TestCase):

    grid = PhaseGrid(0, 1, 6, -3, 3, 8)

    def test_distribution(self):
        f = np.random.default_rng(0).uniform(0, 1, self.grid.shape)
        with TemporaryDirectory() as directory:
            path = write_distribution(os.path.join(directory, "nested", "distribution.csv"), f, self.grid)
            self.assertTrue(os.path.isfile(path))
            # 17 significant digits round-trip exactly
            assert_array_equal(read_distribution(path), f)

    def test_table_precision(self):
        # the default C parser may be off by one ulp on these
        values = np.array([0.1 + 0.2, 1 / 3, np.nextafter(1., 2.), 2.2250738585072014e-308, -1e-300 / 7])
        with TemporaryDirectory() as directory:
            path = write_table(pd.DataFrame({"a": values}), os.path.join(directory, "table.csv"))
            assert_array_equal(read_table(path)["a"].to_numpy(), values)

    def test_snapshot(self):
        f = np.exp(-self.grid.v ** 2 / 2)[None, :] * np.linspace(1, 2, self.grid.n_x)[:, None]
        df = snapshot_frame(f, self.grid)
        self.assertEqual(list(df.columns), SNAPSHOT_COLUMNS)
        self.assertEqual(len(df), self.grid.n_x)
        assert_allclose(df['p'], df['rho'] * df['T'])
        with TemporaryDirectory() as directory:
            path = write_snapshot(os.path.join(directory, snapshot_file_name(0.1)), f, self.grid)
            self.assertTrue(path.endswith("snapshot_t0.100000.csv"))
            assert_array_equal(read_table(path).to_numpy(), df.to_numpy())

    def test_euler_frame(self):
        df = euler_frame(np.array([0., 1.]), EulerState(rho=[1., 2.], u=[0., 1.], p=[1., 1.]))
        self.assertEqual(list(df.columns), SNAPSHOT_COLUMNS)
        assert_allclose(df['T'], [1., 0.5])

    def test_history(self):
        trajectory = SimpleNamespace(times=np.array([0., 0.1, 0.2]),
                                     totals=np.array([[2., 1., 3.], [2., 1., 3.], [2. + 2e-12, 1., 3.]]),
                                     reference=np.tile([2., 1., 3.], (3, 1)),
                                     scale=np.tile([2., 1., 3.], (3, 1)))
        df = history_frame(trajectory)
        self.assertEqual(list(df.columns), HISTORY_COLUMNS)
        assert_array_equal(df['step'], [0, 1, 2])
        assert_allclose(df['mass_rel'], [0, 0, 1e-12], atol=1e-15)
        assert_array_equal(df['mom_rel'], 0)

    def test_summary(self):
        summary = {'scheme': "RK3-W35-DM", 'n_x': 100, 'mass_error': 1.2345678901234567e-13,
                   'momentum_error_absolute': True, 'snapshots': (0.1, 0.2)}
        with TemporaryDirectory() as directory:
            path = write_summary(os.path.join(directory, "summary.txt"), summary)
            values = read_summary(path)
        self.assertEqual(values['scheme'], "RK3-W35-DM")
        self.assertEqual(values['n_x'], 100.)
        self.assertEqual(values['mass_error'], summary['mass_error'])
        self.assertEqual(values['momentum_error_absolute'], "true")
        self.assertEqual(values['snapshots'], "0.10000000000000001, 0.20000000000000001")
