"""Numerical geometry of the pentablock: membership, automorphisms, boundary
structure and convexity certificates. Points are (a, s, p) tuples of complex
numbers; automorphisms are (omega, eta, alpha) tuples."""

from ._core import *  # noqa: F401,F403
from ._core import Error, run_suite, suite_names

__all__ = [name for name in dir() if not name.startswith("_")]
