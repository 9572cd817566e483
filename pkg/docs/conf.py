# -*- coding: utf-8 -*-
#
# avsdf documentation build configuration file
import sys
import os

sys.path.insert(0, os.path.abspath('../'))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'avsdf'
copyright = u'2026, avsdf developers'
author = u'avsdf developers'
version = u'0.1.0'
release = u'0.1.0'

language = None
exclude_patterns = ['_build', '_static']
pygments_style = 'sphinx'
todo_include_todos = False

try:
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
except ImportError:
    html_theme = 'default'

html_sidebars = {
    '**': [
        'globaltoc.html',
        'searchbox.html',
    ],
}
htmlhelp_basename = 'avsdfdoc'

latex_documents = [
    (master_doc, 'avsdf.tex', u'avsdf Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'avsdf', u'avsdf Documentation', [author], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'properties': ('https://propertiespy.readthedocs.io/en/latest/', None),
}
