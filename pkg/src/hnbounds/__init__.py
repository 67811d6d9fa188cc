"""Exact root-system, parabolic and degree computations behind explicit
bounds on the instability of principal bundles in positive characteristic."""

from .errors import (
    AmbiguityError,
    ConsistencyError,
    DomainError,
    HNBoundsError,
    HypothesisError,
    PreconditionError,
    ResourceError,
    ValidationError,
)
from .rootsystem import RootSystem, WeylElement, build_root_system, parse_cartan_label, product_root_system
from .parabolic import Facet, make_facet
from .degrees import DegreeVector, canonical_facet, degree_vector
from .hnpolygon import HNData, deg_hn, make_hn
from .frobdynamics import S0Value, contradiction_certificate, detect_stabilization, s0_estimate
from .slbounds import DominantWeightSL, extend_functional

__version__ = "0.1.0"
