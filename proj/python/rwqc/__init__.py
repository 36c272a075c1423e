"""Qubit-boson correlations across a smooth spacetime expansion.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
