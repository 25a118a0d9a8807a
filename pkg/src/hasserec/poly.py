"""Dense univariate polynomials over an entire ring, with linear-factor peeling."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

from .errors import DuplicateRoot, MultiplicityMismatch, NotMonic, RingMismatch, ValidationError
from .rings import Ring


@dataclass(frozen=True)
class Poly:
    """``sum(coeffs[i] * x**i)``; coefficients lowest degree first, trailing zeros trimmed.

    The zero polynomial has no coefficients and degree -1.
    """

    ring: Ring
    coeffs: tuple

    def __init__(self, ring: Ring, coeffs: Iterable = ()):
        cs = [ring(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, ring: Ring, coeffs: list) -> "Poly":
        # coeffs already canonical; only trimming needed
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "ring", ring)
        object.__setattr__(p, "coeffs", tuple(coeffs))
        return p

    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls._raw(ring, [])

    @classmethod
    def const(cls, ring: Ring, c) -> "Poly":
        return cls(ring, [c])

    @classmethod
    def x(cls, ring: Ring) -> "Poly":
        return cls._raw(ring, [ring.zero, ring.one])

    @classmethod
    def monomial(cls, ring: Ring, i: int, c=1) -> "Poly":
        return cls(ring, [0] * i + [c])

    @classmethod
    def linear(cls, ring: Ring, alpha) -> "Poly":
        """``x - alpha``."""
        return cls._raw(ring, [ring.neg(ring(alpha)), ring.one])

    @classmethod
    def from_roots(cls, ring: Ring, roots: Iterable[tuple[Any, int]]) -> "Poly":
        """``prod((x - alpha)**mu)`` over ``(alpha, mu)`` pairs."""
        result = cls.const(ring, 1)
        for alpha, mu in roots:
            factor = cls.linear(ring, alpha)
            for _ in range(mu):
                result = result * factor
        return result

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator:
        return iter(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.ring, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        R = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = R.add(out[i], c)
        return Poly._raw(R, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        R = self.ring
        return Poly._raw(R, [R.neg(c) for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        R = self.ring
        if not isinstance(other, Poly):
            c = R(other)
            return Poly._raw(R, [R.mul(c, a) for a in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(R)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if R.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly._raw(R, [R.reduce(v) for v in out])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.ring, 1)
        for _ in range(e):
            result = result * self
        return result

    def shift_up(self, k: int) -> "Poly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly._raw(self.ring, [self.ring.zero] * k + list(self.coeffs))

    def eval_at(self, alpha):
        """Horner evaluation."""
        R = self.ring
        alpha = R(alpha)
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.reduce(acc * alpha + c)
        return acc

    __call__ = eval_at

    def __repr__(self) -> str:
        return f"Poly({self.ring!r}, [{', '.join(self.ring.format(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.ring.is_zero(c):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(self.ring.format(c))
            elif c == self.ring.one:
                terms.append(mono)
            else:
                terms.append(f"({self.ring.format(c)})*{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class RootData:
    """Pairwise distinct roots with positive multiplicities."""

    ring: Ring
    entries: tuple

    def __init__(self, ring: Ring, entries: Iterable[tuple[Any, int]] = ()):
        seen = []
        norm = []
        for alpha, mu in entries:
            alpha = ring(alpha)
            if isinstance(mu, bool) or not isinstance(mu, int) or mu < 1:
                raise ValidationError(f"multiplicity of {ring.format(alpha)} must be a positive integer, got {mu!r}")
            if alpha in seen:
                raise DuplicateRoot(f"root {ring.format(alpha)} listed twice")
            seen.append(alpha)
            norm.append((alpha, mu))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", tuple(norm))

    @property
    def total_multiplicity(self) -> int:
        return sum(mu for _, mu in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _require_monic(p: Poly) -> None:
    if not p.is_monic():
        raise NotMonic(f"polynomial {p} is not monic")


def divide_linear(p: Poly, alpha) -> tuple[Poly, Any]:
    """Synthetic division ``p = (x - alpha) * q + r`` with ``r = p(alpha)``.

    Walks the coefficients from the top with ``d_i = alpha * d_{i-1} + c_i``,
    so ``q`` comes out monic of degree ``deg p - 1``.
    """
    _require_monic(p)
    if p.degree < 1:
        raise ValidationError("divide_linear needs degree >= 1")
    R = p.ring
    alpha = R(alpha)
    c = p.coeffs
    n = p.degree
    q = [R.zero] * n
    d = c[n]
    for k in range(n - 1, -1, -1):
        q[k] = d
        d = R.reduce(alpha * d + c[k])
    return Poly._raw(R, q), d


def multiplicity(p: Poly, alpha) -> tuple[int, Poly]:
    """Largest ``m`` with ``(x - alpha)**m`` dividing ``p``, and the cofactor.

    Repeated synthetic division; no derivatives, so it is valid in every
    characteristic.
    """
    _require_monic(p)
    R = p.ring
    alpha = R(alpha)
    m = 0
    r = p
    while r.degree >= 1:
        q, rem = divide_linear(r, alpha)
        if not R.is_zero(rem):
            break
        r = q
        m += 1
    return m, r


def validate_roots(p: Poly, roots: RootData | Sequence[tuple[Any, int]]) -> tuple[bool, Poly]:
    """Peel every claimed ``(alpha, mu)`` off ``p``.

    Returns ``(remainder == 1, remainder)``. The claimed multiplicities must
    equal the computed ones.
    """
    _require_monic(p)
    if not isinstance(roots, RootData):
        roots = RootData(p.ring, roots)
    elif roots.ring != p.ring:
        raise RingMismatch(f"{roots.ring!r} vs {p.ring!r}")
    r = p
    for alpha, mu in roots:
        m, r = multiplicity(r, alpha)
        if m != mu:
            raise MultiplicityMismatch(
                f"root {p.ring.format(alpha)}: claimed multiplicity {mu}, computed {m}"
            )
    return r == Poly.const(p.ring, 1), r


def find_roots(p: Poly) -> RootData:
    """Exhaustive root search over a prime field (no other rings supported)."""
    _require_monic(p)
    R = p.ring
    elements = getattr(R, "elements", None)
    if elements is None:
        raise ValidationError(f"exhaustive root search needs a finite field, not {R!r}")
    found = []
    r = p
    for alpha in elements():
        if r.degree < 1:
            break
        m, r = multiplicity(r, alpha)
        if m:
            found.append((alpha, m))
    return RootData(R, found)
