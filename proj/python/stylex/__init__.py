"""Multilingual style lexica and attribution aggregation (C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import Error, IoError, FormatError, ContractError  # noqa: F401

__version__ = "0.1.0"
