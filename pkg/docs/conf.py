#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# IonTransPy documentation build configuration.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'matplotlib.sphinxext.plot_directive']

# plot directive: run the examples with the package importable, no source links
plot_include_source = True
plot_html_show_source_link = False
plot_formats = [('png', 100)]

autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'

project = 'IonTransPy'
copyright = '2026, IonTransPy developers'
author = 'IonTransPy developers'

release = '0.1.0'
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'alabaster'
html_theme_options = {
    'description': 'Ionic transport from structure and temperature',
}
htmlhelp_basename = 'IonTransPydoc'

man_pages = [
    (master_doc, 'iontranspy', 'IonTransPy Documentation', [author], 1)
]
