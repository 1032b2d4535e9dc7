"""Contextuality of empirical models through Čech cochains over semirings.

Decides R-contextuality with the difference-cochain obstruction over a
semifield (Boolean or nonnegative rationals), compares it with the classical
ring-coefficient obstruction, and cross-checks both against brute-force and
exact linear-programming oracles.
"""

from .analysis import (
    ContextualityVerdict,
    FractionResult,
    contextual_fraction,
    is_r_contextual,
    noncontextual_decompose,
    possibilistic_collapse,
    signed_realization,
)
from .cochain import Cochain, DifferenceCochain, FreeVector, RelativeMask
from .formats import emit_report, load_model, parse_model, serialize_model
from .model import EmpiricalModel, IncidenceMatrix, Measure, make_model
from .obstruction import (
    ObstructionResult,
    cancellative_bridge_check,
    classical_obstruction,
    difference_of,
    extend_section,
    generalized_obstruction,
)
from .scenario import JointEvent, Scenario, Simplex, build_scenario
from .semiring import (
    BOOLEAN,
    INTEGER,
    NATURAL,
    NONNEG_RATIONAL,
    RATIONAL,
    Semiring,
    get_semiring,
)

__version__ = "0.1.0"

__all__ = [
    "BOOLEAN",
    "INTEGER",
    "NATURAL",
    "NONNEG_RATIONAL",
    "RATIONAL",
    "Cochain",
    "ContextualityVerdict",
    "DifferenceCochain",
    "EmpiricalModel",
    "FractionResult",
    "FreeVector",
    "IncidenceMatrix",
    "JointEvent",
    "Measure",
    "ObstructionResult",
    "RelativeMask",
    "Scenario",
    "Semiring",
    "Simplex",
    "build_scenario",
    "cancellative_bridge_check",
    "classical_obstruction",
    "contextual_fraction",
    "difference_of",
    "emit_report",
    "extend_section",
    "generalized_obstruction",
    "get_semiring",
    "is_r_contextual",
    "load_model",
    "make_model",
    "noncontextual_decompose",
    "parse_model",
    "possibilistic_collapse",
    "serialize_model",
    "signed_realization",
]
