"""Python bindings for the lvbec numerics core."""

from ._lvbec import *  # noqa: F401,F403
from ._lvbec import __version__  # noqa: F401
