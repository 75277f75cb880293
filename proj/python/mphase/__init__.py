"""Optimal covariant POVM for simultaneous estimation of d-1 phases."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
