"""Finite prefixes of sequences over k, and the operators adjoint to x and delta^n.

Under the pairing ``<s, p> = sum(c_i * s_i)`` multiplication by ``x`` on
polynomials is adjoint to the left shift ``L`` (drop the first term), and
``delta^n`` is adjoint to ``D^n`` with ``(D^n s)_i = C(i, n) * s_{i-n}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .errors import InsufficientPrefix, OutOfRange, RingMismatch
from .hasse import TABLE, divided_derivative
from .poly import Poly
from .rings import Ring


@dataclass(frozen=True)
class PrefixSeq:
    """Terms ``s_0 .. s_{m-1}`` of a sequence over ``ring``."""

    ring: Ring
    terms: tuple

    def __init__(self, ring: Ring, terms: Iterable = ()):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", tuple(ring(t) for t in terms))

    @classmethod
    def _raw(cls, ring: Ring, terms) -> "PrefixSeq":
        s = object.__new__(cls)
        object.__setattr__(s, "ring", ring)
        object.__setattr__(s, "terms", tuple(terms))
        return s

    @classmethod
    def zeros(cls, ring: Ring, m: int) -> "PrefixSeq":
        return cls._raw(ring, [ring.zero] * m)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return PrefixSeq._raw(self.ring, self.terms[i])
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    def truncate(self, m: int) -> "PrefixSeq":
        if m > len(self.terms):
            raise InsufficientPrefix(f"need {m} terms, have {len(self.terms)}")
        return PrefixSeq._raw(self.ring, self.terms[:m])

    def _check(self, other: "PrefixSeq") -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other: "PrefixSeq") -> "PrefixSeq":
        """Termwise sum on the common prefix."""
        self._check(other)
        R = self.ring
        return PrefixSeq._raw(R, [R.add(a, b) for a, b in zip(self.terms, other.terms)])

    def __sub__(self, other: "PrefixSeq") -> "PrefixSeq":
        self._check(other)
        R = self.ring
        return PrefixSeq._raw(R, [R.sub(a, b) for a, b in zip(self.terms, other.terms)])

    def scale(self, c) -> "PrefixSeq":
        R = self.ring
        c = R(c)
        return PrefixSeq._raw(R, [R.mul(c, t) for t in self.terms])

    def __repr__(self) -> str:
        return f"PrefixSeq({self.ring!r}, [{', '.join(self.ring.format(t) for t in self.terms)}])"


def pairing(s: PrefixSeq, p: Poly):
    """``<s, p> = sum(c_i * s_i)``."""
    if s.ring != p.ring:
        raise RingMismatch(f"{s.ring!r} vs {p.ring!r}")
    if p.degree >= len(s):
        raise InsufficientPrefix(f"pairing with degree {p.degree} needs {p.degree + 1} terms, have {len(s)}")
    R = s.ring
    acc = 0
    for c, t in zip(p.coeffs, s.terms):
        acc += c * t
    return R.reduce(acc)


def from_pairings(ring: Ring, functional: Callable[[Poly], Any], m: int) -> PrefixSeq:
    """The prefix whose i-th term is ``functional(x**i)``."""
    return PrefixSeq(ring, [functional(Poly.monomial(ring, i)) for i in range(m)])


def shift(s: PrefixSeq, n: int = 1) -> PrefixSeq:
    """``L^n s``: drop the first ``n`` terms."""
    if n < 0:
        raise OutOfRange(f"shift amount must be >= 0, got {n}")
    if n > len(s):
        raise InsufficientPrefix(f"cannot shift {n} terms off a prefix of length {len(s)}")
    return PrefixSeq._raw(s.ring, s.terms[n:])


def shift_minus(s: PrefixSeq, alpha) -> PrefixSeq:
    """``(L - alpha) s``; one term shorter than ``s``."""
    R = s.ring
    alpha = R(alpha)
    t = s.terms
    return PrefixSeq._raw(R, [R.reduce(t[i + 1] - alpha * t[i]) for i in range(len(t) - 1)])


def divided_adjoint(s: PrefixSeq, n: int) -> PrefixSeq:
    """``D^n s`` with ``(D^n s)_i = C(i, n) * s_{i-n}``; same length as ``s``.

    ``n = -1`` gives the zero sequence.
    """
    R = s.ring
    if n == -1:
        return PrefixSeq.zeros(R, len(s))
    if n < 0:
        raise OutOfRange(f"order must be >= -1, got {n}")
    t = s.terms
    out = [R.zero] * min(n, len(t))
    for i in range(n, len(t)):
        out.append(R.reduce(R.from_int(TABLE.comb(i, n)) * t[i - n]))
    return PrefixSeq._raw(R, out)


def divided_adjoint_by_pairing(s: PrefixSeq, n: int) -> PrefixSeq:
    """``D^n s`` from its defining property ``<D^n s, x^i> = <s, delta^n x^i>``."""
    R = s.ring
    return PrefixSeq._raw(
        R, [pairing(s, divided_derivative(Poly.monomial(R, i), n)) for i in range(len(s))]
    )


def geometric_prefix(R: Ring, alpha, m: int) -> PrefixSeq:
    """``1, alpha, alpha^2, ...`` (``m`` terms); the first term is 1 even for alpha = 0."""
    alpha = R(alpha)
    out = []
    acc = R.one
    for _ in range(m):
        out.append(acc)
        acc = R.mul(acc, alpha)
    return PrefixSeq._raw(R, out)


@dataclass(frozen=True)
class BasisSeq:
    """Descriptor of ``s(alpha, n) = D^n s(alpha)``, terms ``C(i, n) * alpha^(i-n)``."""

    ring: Ring
    alpha: Any
    n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.ring(self.alpha))

    def prefix(self, m: int) -> PrefixSeq:
        return basis_seq_prefix(self, m)

    def __str__(self):
        return f"s({self.ring.format(self.alpha)}, {self.n})"


def basis_seq_prefix(d: BasisSeq, m: int) -> PrefixSeq:
    R = d.ring
    alpha = R(d.alpha)
    n = d.n
    if n < 0:
        raise OutOfRange(f"basis sequence order must be >= 0, got {n}")
    out = [R.zero] * min(n, m)
    power = R.one
    for i in range(n, m):
        out.append(R.reduce(R.from_int(TABLE.comb(i, n)) * power))
        power = R.mul(power, alpha)
    return PrefixSeq._raw(R, out)


def check_seq_commutator(s: PrefixSeq, alpha, n: int) -> bool:
    """``(L - alpha) D^n s - D^n (L - alpha) s == D^(n-1) s`` on the first ``len(s) - 1`` terms."""
    lhs = shift_minus(divided_adjoint(s, n), alpha) - divided_adjoint(shift_minus(s, alpha), n)
    rhs = divided_adjoint(s, n - 1).truncate(max(len(s) - 1, 0))
    return lhs == rhs


def lower(R: Ring, alpha, n: int, a: int, m: int) -> PrefixSeq:
    """Apply ``(L - alpha)`` ``a`` times to ``s(alpha, n)``; returns ``m`` terms.

    The result equals ``s(alpha, n - a)``; ``a > n`` is rejected.
    """
    if a < 0 or a > n:
        raise OutOfRange(f"lowering needs 0 <= a <= n, got a={a}, n={n}")
    s = basis_seq_prefix(BasisSeq(R, R(alpha), n), m + a)
    for _ in range(a):
        s = shift_minus(s, alpha)
    return s
