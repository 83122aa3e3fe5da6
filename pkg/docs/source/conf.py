# -*- coding: utf-8 -*-
#
# msca documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))


# -- General configuration ------------------------------------------------

needs_sphinx = '1.6'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.extlinks',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

# General information about the project.
project = 'msca'
copyright = '2026, The msca developers'
author = 'The msca developers'

# The short X.Y version.
version = open("../../VERSION").read().strip()
# The full version, including alpha/beta/rc tags.
release = version

exclude_patterns = []

pygments_style = 'sphinx'

todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'

html_static_path = ['_static']

htmlhelp_basename = 'mscadoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'msca.tex', u'msca Documentation',
     u'The msca developers', 'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'msca', u'msca Documentation',
     [author], 1)
]


# Links to external resources
extlinks = {
    'wikipedia': ('https://en.wikipedia.org/wiki/%s', 'Wikipedia article %s'),
    'networkx': ('https://networkx.org/documentation/stable/reference/%s', 'networkx %s'),
    }
