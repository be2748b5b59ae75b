"""Tripartite entanglement measures along three-flavor neutrino oscillations.

The package evaluates the oscillation probabilities of a three-flavor
neutrino and four genuine tripartite entanglement measures (GGM, three-pi,
GMC and concurrence fill) of the corresponding three-qubit occupation state,
along the kinematic parameter L/E.  Every measure is computed both from
closed-form probability expressions and from a generic density-matrix route,
which must agree.
"""

from ._backend import BACKEND
from .measures import (
    ConcurrenceTriangle,
    MeasureReport,
    concurrence_fill,
    ggm,
    gmc,
    negativity,
    one_to_other_concurrences,
    report,
    three_pi,
)
from .oscillation import (
    FlavorAmplitudes,
    OscillationParams,
    ProbabilityTriple,
    amplitudes,
    build_pmns,
    probabilities,
    probability_matrix,
)
from .sweep import ExtremumRecord, SweepConfig, find_extremum, run_sweep, triangle_record
from .tristate import TripartiteState, density, make_state

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConcurrenceTriangle",
    "ExtremumRecord",
    "FlavorAmplitudes",
    "MeasureReport",
    "OscillationParams",
    "ProbabilityTriple",
    "SweepConfig",
    "TripartiteState",
    "amplitudes",
    "build_pmns",
    "concurrence_fill",
    "density",
    "find_extremum",
    "ggm",
    "gmc",
    "make_state",
    "negativity",
    "one_to_other_concurrences",
    "probabilities",
    "probability_matrix",
    "report",
    "run_sweep",
    "three_pi",
    "triangle_record",
]
