"""Geometric sampling, wide-sense Markov covariances and spectra of DSI processes."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
