"""Exact linear recurrences over entire rings via divided derivatives."""
from .errors import *  # noqa: F401,F403
from .fastval import ModPowContext, polymod_pow, term
from .hasse import (
    BinomialTable,
    binomial_in_ring,
    check_commutator,
    check_composition,
    check_leibniz,
    divided_derivative,
    divided_derivative_taylor,
)
from .poly import Poly, RootData, divide_linear, find_roots, multiplicity, validate_roots
from .recurrence import (
    RecurrenceSpec,
    Representation,
    SolutionBasis,
    build_basis,
    casoratian_det,
    check_membership,
    extend,
    represent,
)
from .rings import QQ, ZZ, FractionElement, Integers, PrimeField, Rationals, Ring, determinant, fraction_solve
from .sequences import (
    BasisSeq,
    PrefixSeq,
    basis_seq_prefix,
    check_seq_commutator,
    divided_adjoint,
    geometric_prefix,
    lower,
    pairing,
    shift,
)

__version__ = "0.1.0"
