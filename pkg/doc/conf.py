# Configuration file for the Sphinx documentation builder.
#
# For a full list of options see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../'))

# gallery scripts must not open windows
import matplotlib
matplotlib.use('Agg')


# -- Project information -----------------------------------------------------

project = 'BGKFlow'
copyright = '2022, BGKFlow developers'
author = 'BGKFlow developers'


# -- General configuration ---------------------------------------------------

extensions = [
    'myst_parser',
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.autosummary',
    'sphinx.ext.viewcode',
    'sphinx_autodoc_typehints',
    'sphinx.ext.imgmath',
    'sphinx_gallery.gen_gallery',
    'sphinx.ext.intersphinx',
]

templates_path = []
exclude_patterns = ['_build']

# the package's own examples live in 'gallery'
sphinx_gallery_conf = {
    'examples_dirs': '../gallery',
    'gallery_dirs': 'auto_examples',
}


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_options = {
    'style_nav_header_background': 'black',
}
# don't show the "View page source" link in the RTD theme
html_show_sourcelink = False
# use svg in imgmath extension
imgmath_image_format = 'svg'
# intersphinx mappings
intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable', None),
    'scipy': ('https://docs.scipy.org/doc/scipy', None),
    'pandas': ('https://pandas.pydata.org/docs', None),
}

html_static_path = []
