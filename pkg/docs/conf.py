# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Sphinx configuration."""

import os

# -- General configuration ------------------------------------------------

# Do not warn on external images.
suppress_warnings = ["image.nonlocal_uri"]

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.coverage",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "sphinx_click",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = u"subchain"
copyright = u"2026, Graz University of Technology"
author = u"Graz University of Technology"

# Get the version string. Cannot be done with import!
g = {}
with open(
    os.path.join(os.path.dirname(__file__), "..", "subchain", "version.py"),
    "rt",
) as fp:
    exec(fp.read(), g)
    version = g["__version__"]

release = version
language = None
exclude_patterns = []
pygments_style = "sphinx"
todo_include_todos = False

# Docstring examples assume the package namespace and numpy.
doctest_global_setup = """
import numpy as np
from subchain import *
"""

# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"

html_theme_options = {
    "description": "Local surjectivity and subdifferential chain rules",
    "github_user": "tu-graz-library",
    "github_repo": "subchain",
    "github_button": False,
    "github_banner": True,
    "show_powered_by": False,
    "extra_nav_links": {
        "subchain@GitHub": "https://github.com/tu-graz-library/subchain",
    },
}

html_sidebars = {
    "**": [
        "about.html",
        "navigation.html",
        "relations.html",
        "searchbox.html",
    ]
}

htmlhelp_basename = "subchain_namedoc"

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, "subchain", u"subchain Documentation", [author], 1),
]

# -- Cross references -----------------------------------------------------

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}

autoclass_content = "both"

nitpick_ignore = [
    ("py:class", "np.ndarray"),
    ("py:class", "np.random.Generator"),
    ("py:class", "LinearOperator"),
    ("py:class", "TextIO"),
]
