"""Exact Witt vectors, characteristic-polynomial traces, Lefschetz zeta functions and twisted HH_0."""
from .endo import MatrixEndo, char_poly, char_series, iterate_traces, tr_trace, twisted_iterate
from .errors import (
    IntegralityViolation,
    InvalidTruncationSet,
    NotAnEndomorphism,
    NotDivisible,
    NotIntegral,
    RingMismatchError,
    WittTraceError,
)
from .hh0 import (
    AlgebraEndomorphism,
    FiniteGroup,
    FiniteRankAlgebra,
    GroupHom,
    GroupRing,
    augment,
    compute_hh0,
    cyclic_group,
    dihedral_group,
    hs_trace,
    reidemeister_series,
    symmetric_group,
    trivial_group,
    twisted_conjugacy_classes,
)
from .linalg import Matrix, berkowitz_char_poly, smith_normal_form
from .rings import QQ, ZZ, IntegersMod, PolynomialRing
from .series import TruncatedSeries, neg_log_derivative, series_exp, series_inverse, series_log
from .tomdieck import TomDieckVector, coordinate_change_polys, ghost_to_tomdieck, tomdieck_to_ghost
from .tomdieck import tomdieck_to_witt, witt_to_tomdieck
from .witt import (
    GhostVector,
    TruncationSet,
    WittVector,
    derive_universal_polys,
    frobenius,
    ghost,
    ghost_to_witt,
    restriction,
    series_to_witt,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
    witt_to_series,
)
from .zeta import GradedEndo, lefschetz_number, lefschetz_numbers, zeta_exp, zeta_rational

__version__ = "0.1.0"
