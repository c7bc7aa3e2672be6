"""Depth-based two-sample homogeneity testing for functional data."""

from ._fdhom import *  # noqa: F401,F403
from ._fdhom import __version__  # noqa: F401
