"""Exact verification toolkit for level-one twisted q-vertex operator representations."""

__version__ = "0.1.0"
