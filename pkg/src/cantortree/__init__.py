"""Numerical toolkit for Cantor tree hyperbolic surfaces.

Builds a surface from a cuff-length profile, constructs the scaled partial
measured foliation on the fronts of its pants, integrates its Dirichlet
energy with tail bounds, and draws the lifted front in the upper half-plane.
"""

from .analysis import EscapeStatus, Verdict, dirichlet_certificate, leaf_escape_check, level_energy
from .errors import (
    CantorTreeError,
    ConsistencyError,
    DepthTooLarge,
    DomainError,
    InfeasibleProfile,
    LengthError,
    NonMonotone,
    PreconditionError,
    ProfileFormatError,
    QuadratureFailure,
    StepTooLarge,
)
from .foliation import EnergyEstimate, QuadFoliation, pants_dirichlet, quad_dirichlet
from .hyptrig import FrontGeometry, PantsTriple, arc_p, cosh_o12, front_geometry, relative_lengths
from .render import HalfPlaneArc, emit_svg, lift_front
from .surface import (
    ConstantProfile,
    CuffAddress,
    PowerProfile,
    TableProfile,
    TreeSurface,
    blooming_bound,
    build_tree,
    load_profile,
    transverse_mass,
    validate_hypotheses,
)

__version__ = "0.1.0"

__all__ = [
    "CantorTreeError", "ConsistencyError", "ConstantProfile", "CuffAddress", "DepthTooLarge",
    "DomainError", "EnergyEstimate", "EscapeStatus", "FrontGeometry", "HalfPlaneArc",
    "InfeasibleProfile", "LengthError", "NonMonotone", "PantsTriple", "PowerProfile",
    "PreconditionError", "ProfileFormatError", "QuadFoliation", "QuadratureFailure",
    "StepTooLarge", "TableProfile", "TreeSurface", "Verdict", "arc_p", "blooming_bound",
    "build_tree", "cosh_o12", "dirichlet_certificate", "emit_svg", "front_geometry",
    "leaf_escape_check", "level_energy", "lift_front", "load_profile", "pants_dirichlet",
    "quad_dirichlet", "relative_lengths", "transverse_mass", "validate_hypotheses",
]
