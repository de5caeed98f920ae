"""Python bindings for the navstack C++ core."""

from ._navstack import *  # noqa: F401,F403
from ._navstack import __version__  # noqa: F401
