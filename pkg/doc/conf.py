# -*- coding: utf-8 -*-
#
# supervised-alignment documentation build configuration file
#
# This file is execfile()d with the current directory set to its containing
# dir.

import sys
import os

# If extensions (or modules to document with autodoc) are in another
# directory, add these directories to sys.path here.
sys.path.append(os.path.abspath('..'))

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.coverage']

templates_path = []

source_suffix = '.rst'

master_doc = 'index'

project = u'supervised-alignment'
copyright = u'2026, The supervised-alignment developers'

# The short X.Y version and the full version, including alpha/beta/rc tags.
import supervised_alignment
import versiontools
version = "%d.%d" % supervised_alignment.__version__[0:2]
release = versiontools.format_version(
    supervised_alignment.__version__)

exclude_trees = []

pygments_style = 'sphinx'

# -- Options for HTML output -------------------------------------------------

html_theme = 'default'

html_static_path = []

htmlhelp_basename = 'SupervisedAlignmentDoc'

# -- Options for LaTeX output ------------------------------------------------

latex_documents = [
    ('index', 'SupervisedAlignment.tex',
     u'supervised-alignment Documentation',
     u'The supervised-alignment developers', 'manual'),
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
