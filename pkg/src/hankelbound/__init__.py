"""Second Hankel determinant bounds for starlike and convex functions of order alpha/2 - 1.

The closed forms live in :mod:`hankelbound.bounds`; :mod:`hankelbound.search`
checks them by brute force over Carathéodory-class data.
"""

__version__ = "0.1.0"

from .bounds import (
    ClosedFormBound,
    convex_bound,
    corrected_convex_envelope,
    functional_from_c,
    starlike_bound,
)
from .classes import FunctionClass, OrderParam
from .search import SearchConfig, alpha_scan, monte_carlo_verify, schwarz_box_maximize

__all__ = [
    "ClosedFormBound",
    "FunctionClass",
    "OrderParam",
    "SearchConfig",
    "alpha_scan",
    "convex_bound",
    "corrected_convex_envelope",
    "functional_from_c",
    "monte_carlo_verify",
    "schwarz_box_maximize",
    "starlike_bound",
]
