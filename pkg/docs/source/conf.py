# -*- coding: utf-8 -*-
#
# Sphinx configuration of the NeuroGrow documentation.
import neurogrow

needs_sphinx = '1.3'
extensions = ['sphinx.ext.autodoc']

source_suffix = '.rst'
master_doc = 'index'

project = u'NeuroGrow'
copyright = u'2020, NeuroGrow developers'
version = '.'.join(neurogrow.__version__.split('.')[:2])
release = neurogrow.__version__

pygments_style = 'sphinx'
html_theme = 'sphinxdoc'
htmlhelp_basename = 'neurogrowdoc'

man_pages = [
    ('index', 'neurogrow', u'NeuroGrow Documentation',
     [u'NeuroGrow developers'], 1)
]
