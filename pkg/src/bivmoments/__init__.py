"""Instantaneous moments of modulated univariate and bivariate oscillations.

Analytic signals and their amplitude/phase (``spectral``), univariate
instantaneous moments (``moments``), the modulated-ellipse model
(``ellipse``), joint multivariate moments and the bivariate bandwidth split
(``joint``), Morse wavelet ridge estimation (``wavelet``) and an
eddy-plus-residual decomposition pipeline (``pipeline``).
"""
from .spectral import *  # noqa: F401,F403
from .moments import *  # noqa: F401,F403
from .ellipse import *  # noqa: F401,F403
from .joint import *  # noqa: F401,F403
from .wavelet import *  # noqa: F401,F403
from .pipeline import *  # noqa: F401,F403
from . import spectral, moments, ellipse, joint, wavelet, pipeline

__version__ = "0.1.0"
