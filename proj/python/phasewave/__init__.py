"""Stationary two-component NLS pairs with spatially modulated coupling.

Thin re-export of the compiled core; see the module docstrings there.
"""
from ._phasewave import *  # noqa: F401,F403
