"""Weakly scale-free network generation, degree-distribution theory and power-law fitting."""

from ._backend import BACKEND
from .errors import (
    ConfigError,
    DegenerateGraphError,
    ParseError,
    SelfLoopError,
    TooFewObservationsError,
    WSNetError,
)
from .generators import GrowthConfig, GrowthTrace, generate, generate_ba, generate_wsm
from .graph import DegreeHistogram, Graph, RngStream
from .powerlaw import PowerLawFit, fit_power_law
from .theory import integrate_recurrence, stationary_pk

__version__ = "0.1.0"
