"""Spectral mild-solution engine for time-fractional Navier-Stokes equations
with finite-delay forcing."""

from fracns._core import *  # noqa: F401,F403
from fracns._core import __version__  # noqa: F401
