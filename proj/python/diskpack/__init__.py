"""Periodic disk packings and coverings of the plane."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
