"""Exact finite-horizon sensitivity analysis of non-autonomous systems.

Maps are piecewise-linear interval maps (optionally with quadratic pieces),
circle angle maps and their products; all arithmetic uses ``Fraction``.
"""

from .detect import (
    INCONCLUSIVE,
    REFUTED,
    WITNESSED,
    Battery,
    NSet,
    SensitivityCertificate,
    cofinite_sensitivity,
    default_battery,
    multi_sensitivity,
    multi_transitivity_witness,
    n_sensitivity,
    n_set,
    sensitivity,
    strong_multi_sensitivity,
    vector_multi_sensitivity,
    witness_count,
)
from .errors import DomainError, NotComparable, NotInjectiveError, ResourceError, SpaceMismatch
from .measure import AtomicMeasure, dirac, prohorov_distance, pushforward
from .metric import UNIT, Arc, Box, Circle, Interval, Product, Span, arc, distance, open_interval
from .nds import NDSystem, kth_iterate_system, orbit, partial_composition, periodic_collapse, product_system
from .plmap import CircleMap, Composite, HybridMap, PLMap, ProductMap, compose, structurally_equal, sup_distance

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
