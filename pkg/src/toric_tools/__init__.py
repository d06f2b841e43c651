"""Exact tools for plane branches in positive characteristic, binomial
deformations, and toric fans with their spaces of additive preorders."""

from .binomial import Binomial, BinomialSystem, campillo_plane_pair, campillo_system, primality_report
from .cones import Cone, dual_cone, hilbert_basis
from .errors import ComputationError, InputError
from .exact_linalg import Lattice, saturate, smith_normal_form, torsion
from .fans import Fan, height, refine_check, stellar_subdivision, validate_fan
from .jacobian import find_tame_projections, minor_congruence_check
from .preorders import Preorder, compare, distance_d, distance_dtilde, dominated_cone
from .semigroup import NumericalSemigroup, value_semigroup
from .series import CoefficientField, TruncatedSeries

__version__ = "0.1.0"
