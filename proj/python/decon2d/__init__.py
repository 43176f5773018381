"""Bivariate uniform deconvolution.

Estimates the density and distribution of a latent vector Y from
observations X = Y + Z with Z uniform on the unit square, via four
inversion-series kernel estimators and their variance-optimal convex
combination.  See the individual functions in ``decon2d._core`` for the
full surface: benchmark samplers, pointwise and grid estimators,
combination weights, censoring transforms and replication diagnostics.
"""

from decon2d._core import *  # noqa: F401,F403
from decon2d._core import __version__  # noqa: F401
