# coding: utf-8

""" Sphinx configuration for the orlicz documentation """

import os
import sys

sys.path.insert(0, os.path.abspath('../'))

import orlicz  # noqa: E402

try:
    import sphinx_rtd_theme  # noqa: F401
    html_theme = 'sphinx_rtd_theme'
except ImportError:
    html_theme = 'default'

# General configuration
extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
]
autodoc_member_order = 'bysource'
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build']
pygments_style = 'sphinx'
language = 'en'

# Project information
project = u'orlicz'
author = u'orlicz developers'
copyright = u'2024, orlicz developers'
version = orlicz.__version__
release = orlicz.__version__

# Output formats
htmlhelp_basename = 'orliczdoc'
man_pages = [
    (master_doc, 'orlicz',
     u'Orlicz norms of random subsystems of orthonormal systems',
     [author], 1)
]
