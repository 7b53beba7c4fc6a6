# Sphinx configuration of the padicmax documentation.
# Options: https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
from nsaph_utils.docutils.codeurl import URLDomain

sys.path.insert(0, os.path.abspath('src/python'))

project = 'padicmax'
copyright = '2021, Harvard University'
author = 'Michael A Bouzinier'
release = '0.1.0'

add_module_names = False
autoclass_content = 'both'
autodoc_member_order = 'bysource'
autodoc_mock_imports = ['nsaph']

extensions = [
    'sphinx_rtd_theme',
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx_paramlinks',
    'sphinx.ext.autosectionlabel',
    'recommonmark',
    'sphinx_markdown_tables'
]
autosectionlabel_prefix_document = True

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', 'examples',
                    'spec.md', 'SPEC_FULL.md', 'DESIGN.md',
                    'src/python/padicmax/tests']

html_theme = "sphinx_rtd_theme"
html_static_path = ['_static']


def setup(app):
    app.add_domain(URLDomain)
