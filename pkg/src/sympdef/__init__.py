"""Exact computations with symplectic deformations of affine model spaces over Artin bases."""

from sympdef.artin import ArtinAlgebra, ArtinIdeal, artin_quotient, is_elementary, madic_filtration
from sympdef.deformation import (
    Deformation, construct_from_period, find_isomorphism, kodaira_spencer, lift_deformation,
    make_deformation, period_map,
)
from sympdef.derham import RelForm, cohomology_basis, d, decompose, wedge
from sympdef.laurent import LaurentPoly, parse_space
from sympdef.linalg import BACKEND
from sympdef.symplectic import standard_form

__version__ = "0.1.0"
