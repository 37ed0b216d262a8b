# -*- coding: utf-8 -*-
#
# flagcheck documentation build configuration file.

import os
import re

here = os.path.dirname(os.path.abspath(__file__))


def _read_version():
    with open(os.path.join(here, '..', 'flagcheck', '__init__.py')) as f:
        return re.search(
            r"^__version__ = ['\"]([^'\"]*)['\"]", f.read(), re.M
        ).group(1)


extensions = []
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'flagcheck'
copyright = u'2026, the flagcheck developers'

# The full version, including alpha/beta/rc tags.
release = _read_version()
# The short X.Y version.
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'flagcheckdoc'

latex_documents = [
    ('index', 'flagcheck.tex', u'flagcheck Documentation',
     u'the flagcheck developers', 'manual'),
]
man_pages = [
    ('index', 'flagcheck', u'flagcheck Documentation',
     [u'the flagcheck developers'], 1)
]
