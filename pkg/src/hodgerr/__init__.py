"""Exact characteristic classes on products of projective spaces.

Chern characters, multiplicative classes, Todd classes and their equivariant
versions, with checkers for Hirzebruch-Riemann-Roch, Grothendieck-Riemann-Roch,
the holomorphic Atiyah-Bott formula and equivariant Riemann-Roch.
"""
from .charclass import (
    SeriesSpec,
    chern_character,
    mult_class,
    power_sums,
    split_mult_class,
    tangent_roots,
    todd_class,
)
from .cohring import GradedElement, NotAUnitError, PresentationMismatchError, RingPresentation
from .equivariant import (
    EigenLine,
    EigenLineSum,
    EquivariantBundle,
    FixedComponent,
    LocalizationError,
    diagonal_pn_fixed_data,
    equivariant_ch,
    equivariant_euler,
    localization_invertible,
)
from .exactnum import (
    ModulusMismatchError,
    NoInverseError,
    Scalar,
    cyclotomic_modulus,
    root_of_unity,
)
from .variety import (
    BundleData,
    MorphismModel,
    VarietyModel,
    bundle_combine,
    hodge_diagonal_dims,
    line_bundle,
    linear_embedding,
    multiprojective,
    point,
    projection_morphism,
)

__version__ = "0.1.0"
