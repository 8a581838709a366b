# -*- coding: utf-8 -*-
# flake8: noqa
#
# algentropy documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
here = os.path.dirname(os.path.abspath(__file__))
src = os.path.abspath(os.path.join(here, '..', '..'))
sys.path.insert(0, src)

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
]

source_suffix = '.rst'
master_doc = 'index'

project = u'algentropy'
copyright = u'2026, algentropy developers'
author = u'algentropy developers'

from algentropy.version import __version__ as version
release = version

language = 'en'
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'sympy': ('https://docs.sympy.org/latest', None),
}

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_show_sourcelink = False
html_show_sphinx = False
htmlhelp_basename = 'algentropydoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'algentropy', u'algentropy Documentation',
     [author], 1)
]
