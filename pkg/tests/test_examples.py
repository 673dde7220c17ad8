#  Copyright (c) 2022 Robert Lieck.
from unittest import TestCase

import os
import importlib.util
import pathlib

import matplotlib
import matplotlib.pyplot as plt


class TestGallery(TestCase):

    cwd = None

    def setUp(self) -> None:
        matplotlib.use('Agg')
        self.cwd = os.getcwd()
        gallery_dir = pathlib.Path(__file__).parent.resolve() / ".." / "gallery"
        assert os.path.isdir(gallery_dir), f"gallery directory '{gallery_dir}' does not exist"
        os.chdir(gallery_dir)

    def tearDown(self) -> None:
        os.chdir(self.cwd)
        self.cwd = None
        plt.close('all')

    def test_gallery(self):
        """Run all the scripts from the documentation gallery."""
        for dir_path, dir_names, file_names in os.walk("."):
            for file in sorted(file_names):
                if not file.endswith(".py"):
                    continue
                print(f"running: {file}")
                # import as module so that errors point to the offending line
                spec = importlib.util.spec_from_file_location("", os.path.join(dir_path, file))
                mod = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(mod)
