"""Partial random variables on disjoint domains and the CHSH family built from them."""

from ._core import *  # noqa: F401,F403
from ._core import Error

__all__ = [name for name in dir() if not name.startswith("_")]
