# -*- coding: utf-8 -*-
# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import os
import sys

sys.path.insert(0, os.path.abspath("../.."))


def skip(app, what, name, obj, would_skip, options):
    if name == "__init__":
        return False
    return would_skip


def setup(app):
    app.connect("autodoc-skip-member", skip)


import formation_resilience  # noqa: E402

# -- Project information -----------------------------------------------------

project = "formation-resilience"
copyright = formation_resilience.__copyright__
author = formation_resilience.__author__
version = formation_resilience.__version__
release = formation_resilience.__version__
title = formation_resilience.__title__

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinxcontrib.mermaid",
]

autosummary_generate = True
autodoc_member_order = "bysource"
napoleon_google_docstring = True
source_suffix = ".rst"
master_doc = "index"
exclude_patterns = ["_build"]
pygments_style = "sphinx"
todo_include_todos = False

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
htmlhelp_basename = "formation_resiliencedoc"

# -- Options for LaTeX output ------------------------------------------------

latex_elements = {
    "papersize": "a4paper",
    "pointsize": "10pt",
    "figure_align": "htbp",
}
latex_documents = [
    (
        master_doc,
        "formation_resilience.tex",
        title,
        author,
        "manual",
    ),
]

# -- Options for manual page output ------------------------------------------

man_pages = [(master_doc, "formation_resilience", title, [author], 1)]
