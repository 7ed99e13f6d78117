"""Finite rings as operation tables, their constructors and substructures."""

from .axioms import Violation, validate_axioms
from .closure import (
    IdealError,
    dorroh_unitalization,
    embed,
    ideal_generated,
    ideal_violation,
    quotient,
    restrict,
    subring_generated,
)
from .dsl import ParseError, RingExpr, build, parse_ring_expr, pretty
from .ring import (
    DEFAULT_CAP,
    AxiomError,
    BuildError,
    NotUnitalError,
    RingError,
    RingTable,
    SchemaError,
    SubsetMask,
)
from .tableio import load, load_file, save_file, serialize

__all__ = [
    "AxiomError", "BuildError", "DEFAULT_CAP", "IdealError", "NotUnitalError",
    "ParseError", "RingError", "RingExpr", "RingTable", "SchemaError", "SubsetMask",
    "Violation", "build", "dorroh_unitalization", "embed", "ideal_generated",
    "ideal_violation", "load", "load_file", "parse_ring_expr", "pretty", "quotient",
    "restrict", "save_file", "serialize", "subring_generated", "validate_axioms",
]
