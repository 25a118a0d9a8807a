"""Homogeneous linear recurrences with constant coefficients over an entire ring.

A monic ``p(x) = x^n + c_1 x^(n-1) + ... + c_n`` encodes the relation

    s_i + c_1 s_(i-1) + ... + c_n s_(i-n) = 0      for all i >= n,

whose solutions form the kernel of ``p(L)``. When ``p`` splits over ``k`` as
``prod (x - alpha_u)^mu_u``, the sequences ``s(alpha_u, a)`` with
``a < mu_u`` are free solutions. Over a field they span every solution; over
a general entire ring they span a submodule of full rank, and every solution
times a nonzero ring element lands in it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import (
    BadInitLength,
    InternalInvariantBroken,
    NotAllRootsInK,
    NotMonic,
    RingMismatch,
    SingularSystem,
    ValidationError,
)
from .poly import Poly, RootData, validate_roots
from .rings import Rationals, Ring, determinant, fraction_solve
from .sequences import BasisSeq, PrefixSeq


@dataclass(frozen=True)
class RecurrenceSpec:
    char_poly: Poly

    def __post_init__(self):
        if not self.char_poly.is_monic():
            raise NotMonic(f"characteristic polynomial {self.char_poly} is not monic")
        if self.char_poly.degree < 1:
            raise ValidationError("characteristic polynomial must have degree >= 1")

    @classmethod
    def from_coeffs(cls, ring: Ring, coeffs: Sequence) -> "RecurrenceSpec":
        """Build from ``[c_1, ..., c_n]`` as written in the relation."""
        return cls(Poly(ring, list(reversed(list(coeffs))) + [1]))

    @property
    def ring(self) -> Ring:
        return self.char_poly.ring

    @property
    def order(self) -> int:
        return self.char_poly.degree

    @property
    def coeffs(self) -> tuple:
        """``(c_1, ..., c_n)``."""
        n = self.order
        return tuple(self.char_poly.coeff(n - j) for j in range(1, n + 1))


def _as_prefix(spec: RecurrenceSpec, s) -> PrefixSeq:
    if isinstance(s, PrefixSeq):
        if s.ring != spec.ring:
            raise RingMismatch(f"{s.ring!r} vs {spec.ring!r}")
        return s
    return PrefixSeq(spec.ring, s)


def check_membership(spec: RecurrenceSpec, s) -> tuple[bool, Optional[int]]:
    """Check the relation at every index ``n <= i < len(s)``.

    Returns ``(True, None)`` or ``(False, i)`` for the first violated index.
    """
    s = _as_prefix(spec, s)
    R = spec.ring
    a = spec.char_poly.coeffs
    n = spec.order
    t = s.terms
    for i in range(n, len(t)):
        acc = 0
        base = i - n
        for k in range(n + 1):
            acc += a[k] * t[base + k]
        if not R.is_zero(R.reduce(acc)):
            return False, i
    return True, None


def integral_rescale(coeffs: Sequence[Fraction]) -> tuple[int, list[int]]:
    """For ``p = x^n + sum(coeffs[k] x^k)`` over Q, return ``(D, b)`` with
    ``D^n p(y / D) = y^n + sum(b[k] y^k)`` and every ``b[k]`` an integer.

    ``D`` is the lcm of the coefficient denominators.
    """
    n = len(coeffs)
    D = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return D, [int(c * D ** (n - k)) for k, c in enumerate(coeffs)]


def _extend_rational(spec: RecurrenceSpec, init: PrefixSeq, target_len: int) -> PrefixSeq:
    # u_i = B * D^i * s_i is an integer solution of the rescaled relation
    n = spec.order
    D, b = integral_rescale(spec.char_poly.coeffs[:n])
    B = math.lcm(*(t.denominator for t in init.terms))
    u = [t.numerator * (B // t.denominator) * D**i for i, t in enumerate(init.terms)]
    neg = [-c for c in b]
    for i in range(n, target_len):
        acc = 0
        base = i - n
        for k in range(n):
            acc += neg[k] * u[base + k]
        u.append(acc)
    out = list(init.terms[:target_len])
    den = B * D ** len(out)
    for i in range(len(out), target_len):
        out.append(Fraction(u[i], den))
        den *= D
    return PrefixSeq._raw(spec.ring, out)


def extend(spec: RecurrenceSpec, init, target_len: int) -> PrefixSeq:
    """The unique solution starting with ``init`` (exactly ``n`` terms), to ``target_len`` terms."""
    init = _as_prefix(spec, init)
    n = spec.order
    if len(init) != n:
        raise BadInitLength(f"expected {n} initial terms, got {len(init)}")
    R = spec.ring
    if isinstance(R, Rationals):
        return _extend_rational(spec, init, target_len)
    neg = [R.neg(c) for c in spec.char_poly.coeffs[:n]]
    t = list(init.terms)
    for i in range(n, target_len):
        acc = 0
        base = i - n
        for k in range(n):
            acc += neg[k] * t[base + k]
        t.append(R.reduce(acc))
    return PrefixSeq._raw(R, t[:target_len])


@dataclass(frozen=True)
class SolutionBasis:
    spec: RecurrenceSpec
    roots: RootData
    elements: tuple
    casoratian: Any

    @property
    def ring(self) -> Ring:
        return self.spec.ring

    def __len__(self) -> int:
        return len(self.elements)


def casoratian_matrix(spec: RecurrenceSpec, elements: Sequence[BasisSeq]) -> list[list]:
    """Rows ``i < n``, one column per basis element: ``C(i, a) * alpha^(i-a)``."""
    n = spec.order
    cols = [e.prefix(n).terms for e in elements]
    return [[col[i] for col in cols] for i in range(n)]


def casoratian_det(basis: SolutionBasis):
    return determinant(basis.ring, casoratian_matrix(basis.spec, basis.elements))


def build_basis(spec: RecurrenceSpec, roots) -> SolutionBasis:
    """Solutions ``s(alpha_u, a)``, ``0 <= a < mu_u``, ordered by root then by ``a``.

    ``roots`` must account for the whole characteristic polynomial.
    """
    R = spec.ring
    if not isinstance(roots, RootData):
        roots = RootData(R, roots)
    ok, rem = validate_roots(spec.char_poly, roots)
    if not ok:
        raise NotAllRootsInK(f"roots leave the factor {rem} unsplit")
    elements = tuple(BasisSeq(R, alpha, a) for alpha, mu in roots for a in range(mu))
    n = spec.order
    for e in elements:
        member, bad = check_membership(spec, e.prefix(3 * n))
        if not member:
            raise InternalInvariantBroken(f"{e} violates the recurrence at index {bad}")
    det = determinant(R, casoratian_matrix(spec, elements))
    if R.is_zero(det):
        raise InternalInvariantBroken("basis sequences are linearly dependent")
    return SolutionBasis(spec, roots, elements, det)


@dataclass(frozen=True)
class Representation:
    """``s = sum(coords[j] * basis[j])`` over the fraction field.

    ``denominator * s`` is an honest combination of the basis with ring
    coefficients ``scaled_coords``.
    """

    coords: tuple
    denominator: Any

    @property
    def ring(self) -> Ring:
        return self.coords[0].ring

    @property
    def scaled_coords(self) -> list:
        return [c.scaled(self.denominator) for c in self.coords]

    @property
    def minimal_denominator(self):
        """Least common multiple of the reduced coordinate denominators."""
        R = self.ring
        if R.is_field:
            return R.one
        return math.lcm(*(c.den for c in self.coords))


def replay(basis: SolutionBasis, s: PrefixSeq, rep: Representation) -> Optional[int]:
    """First index where ``d * s_i != sum(d * c_j * basis_j[i])``, or None."""
    R = basis.ring
    d = rep.denominator
    scaled = rep.scaled_coords
    prefixes = [e.prefix(len(s)).terms for e in basis.elements]
    for i, si in enumerate(s.terms):
        acc = 0
        for c, col in zip(scaled, prefixes):
            acc += c * col[i]
        if R.reduce(acc) != R.mul(d, si):
            return i
    return None


def represent(basis: SolutionBasis, s) -> Representation:
    """Coordinates of a solution ``s`` in ``basis`` plus a clearing denominator.

    Solves the Casoratian system against ``s_0 .. s_{n-1}``. The denominator
    is the Casoratian determinant; over a field everything is normalized to
    denominator 1. The result is replayed against the whole prefix.
    """
    spec = basis.spec
    s = _as_prefix(spec, s)
    n = spec.order
    if len(s) < n:
        raise BadInitLength(f"need at least {n} terms, got {len(s)}")
    member, bad = check_membership(spec, s)
    if not member:
        raise ValidationError(f"sequence violates the recurrence at index {bad}")
    R = spec.ring
    try:
        coords, det = fraction_solve(R, casoratian_matrix(spec, basis.elements), s.terms[:n])
    except SingularSystem as exc:
        raise InternalInvariantBroken("Casoratian vanished for a supposedly free basis") from exc
    if R.is_field:
        # coordinates already normalized to denominator 1
        det = R.one
    rep = Representation(tuple(coords), det)
    bad = replay(basis, s, rep)
    if bad is not None:
        raise InternalInvariantBroken(f"representation fails to reproduce term {bad}")
    return rep
