"""Characteristic rank of vector bundles over spaces given by mod-2 cohomology rings."""

from .algebra import Element, GradedAlgebra, RingMap, SpaceMeta
from .catalog import SpaceRecord, build
from .dsl import Document, load, parse
from .engine import (
    Bound,
    Constraint,
    SWProfile,
    analyze,
    boundary_cup_bound,
    bundle_cup_bound,
    charrank,
    cup_length,
    enumerate_profiles,
    max_sw_monomial_length,
    poincare_pairing_check,
    pullback,
    sw_inverse,
    sw_spans,
    ucharrank_formal,
    whitney_sum,
)
from .errors import (
    AlgebraError,
    CapacityError,
    CharrankError,
    DimensionError,
    HypothesisError,
    ParameterError,
    ParseError,
)
from .f2linalg import BitVector, RowSpace, rank_of

__version__ = "0.1.0"
