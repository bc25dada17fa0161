"""Exact reasoning about upper probabilities.

Decides satisfiability and validity of likelihood formulas over sets of
probability measures, model-checks finite structures, and certifies
whether a set function is the upper envelope of some set of measures.
"""

__version__ = "0.1.0"

from .covers import SetFunction, MultisetCover, make_upsilon_epsilon
from .lang import parse, parse_prop, format_formula
from .satsolver import solve, is_valid
from .structures import UPStructure, Measure, satisfies, upper, lower
from .upcheck import is_upper_probability

__all__ = [
    "SetFunction", "MultisetCover", "make_upsilon_epsilon", "parse", "parse_prop",
    "format_formula", "solve", "is_valid", "UPStructure", "Measure", "satisfies",
    "upper", "lower", "is_upper_probability",
]
