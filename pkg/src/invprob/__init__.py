"""Invariant probabilities under partial group actions: orbit closures,
equidecomposability, full conditional probabilities, qualitative orders and
a convolution cone on the integers."""

from .action import (
    BitSeq,
    BudgetExceeded,
    Finite,
    GroupWord,
    Int,
    Quad,
    partial_orbit_closure,
    interval_walk,
)
from .cone import ZSet, c0_compare, gamma_indicator, parse_zset, skew_popper
from .measures import INF, UNDEFINED, ExtRat, FinAlgebra, build_level_stack
from .popper import exchange_from_popper, popper_from_exchange, popper_from_levels
from .qual import QualOracle, lexmax_compare
from .verdict import CompareVerdict

__version__ = "0.1.0"
