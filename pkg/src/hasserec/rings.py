"""Entire rings, their fraction fields, and fraction-free linear solving.

Ring elements are plain Python values in canonical form:

* :class:`Integers`   -- ``int``
* :class:`Rationals`  -- ``fractions.Fraction`` (always, even when integral)
* :class:`PrimeField` -- ``int`` residue in ``[0, p)``

A ring object carries the arithmetic; values never carry their ring. Containers
(``Poly``, ``PrefixSeq``) store the ring next to the values and refuse to mix.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import (
    DivisionByZero,
    InexactDivision,
    NotAField,
    NotPrime,
    SingularSystem,
    ValidationError,
)

# Trial division stays cheap below this bound.
MAX_MODULUS = 2**31

# Interpreters with a cap on int <-> str conversion refuse huge values outright;
# split them into chunks that stay under the cap instead.
_CHUNK = 1000


def int_to_str(a: int) -> str:
    """Decimal string of ``a`` with no size limit."""
    if -(10**_CHUNK) < a < 10**_CHUNK:
        return str(a)
    if a < 0:
        return "-" + int_to_str(-a)
    digits = _CHUNK
    while 10 ** (2 * digits) <= a:
        digits *= 2
    hi, lo = divmod(a, 10**digits)
    return int_to_str(hi) + int_to_str(lo).rjust(digits, "0")


def str_to_int(text: str) -> int:
    """Parse a decimal integer with no size limit; raises ValueError like ``int``."""
    t = text.strip()
    body = t.lstrip("+-")
    if len(body) <= _CHUNK:
        return int(t)
    if len(t) - len(body) > 1 or not body.isdigit() or not body.isascii():
        raise ValueError(f"invalid literal for int(): {text!r}")
    half = len(body) // 2
    value = str_to_int(body[:-half]) * 10**half + str_to_int(body[-half:])
    return -value if t.startswith("-") else value


def str_to_fraction(text: str) -> Fraction:
    t = text.strip()
    if len(t) <= _CHUNK:
        return Fraction(t)
    num, sep, den = t.partition("/")
    if not sep:
        return Fraction(str_to_int(num))
    return Fraction(str_to_int(num), str_to_int(den))


class Ring(ABC):
    """An entire ring: commutative, unital, 1 != 0, no zero divisors."""

    is_field: bool = False
    characteristic: int = 0

    @abstractmethod
    def __call__(self, value: Any) -> Any:
        """Coerce ``value`` (int, Fraction, str, or an element) to canonical form."""

    @abstractmethod
    def to_json(self) -> Any:
        ...

    @abstractmethod
    def format(self, a) -> str:
        ...

    @abstractmethod
    def reduce(self, a):
        """Canonicalize the result of raw ``+ - *`` on canonical values."""

    @abstractmethod
    def inverse(self, a):
        ...

    @abstractmethod
    def exact_div(self, a, b):
        """Return ``q`` with ``b*q == a``; raise if no such ``q`` exists."""

    def from_int(self, z: int):
        """Image of ``z`` under the canonical homomorphism Z -> k."""
        return self.reduce(self._embed(z))

    def _embed(self, z: int):
        return z

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def mul(self, a, b):
        return self.reduce(a * b)

    def neg(self, a):
        return self.reduce(-a)

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inverse(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def parse(self, text: str):
        return self(text)

    def fraction(self, num, den) -> "FractionElement":
        return FractionElement.make(self, num, den)


def _reject_float(value):
    if isinstance(value, (float, complex)) or isinstance(value, bool):
        raise ValidationError(f"inexact or boolean value {value!r} is not a ring element")


@dataclass(frozen=True)
class Integers(Ring):
    def __call__(self, value):
        _reject_float(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValidationError(f"{value} is not an integer")
            return value.numerator
        if isinstance(value, str):
            try:
                return str_to_int(value)
            except ValueError:
                raise ValidationError(f"cannot parse {value[:40]!r} as an integer") from None
        raise ValidationError(f"cannot interpret {value!r} as an integer")

    def reduce(self, a):
        return a

    def inverse(self, a):
        raise NotAField("the integers are not a field")

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero("exact division by zero")
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(f"{b} does not divide {a}")
        return q

    def format(self, a) -> str:
        return int_to_str(a)

    def to_json(self):
        return "int"

    def __repr__(self):
        return "Integers()"


@dataclass(frozen=True)
class Rationals(Ring):
    is_field = True

    def __call__(self, value):
        _reject_float(value)
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return str_to_fraction(value)
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"cannot parse {value[:40]!r} as a rational") from None
        raise ValidationError(f"cannot interpret {value!r} as a rational")

    def _embed(self, z):
        return Fraction(z)

    def reduce(self, a):
        return a if type(a) is Fraction else Fraction(a)

    def inverse(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / Fraction(a)

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero("exact division by zero")
        return Fraction(a) / b

    def format(self, a) -> str:
        if a.denominator == 1:
            return int_to_str(a.numerator)
        return f"{int_to_str(a.numerator)}/{int_to_str(a.denominator)}"

    def to_json(self):
        return "rat"

    def __repr__(self):
        return "Rationals()"


def is_prime(p: int) -> bool:
    """Deterministic trial division; intended for p < 2**31."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int
    is_field = True

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise NotPrime(f"modulus must be an integer, got {self.p!r}")
        if self.p >= MAX_MODULUS:
            raise NotPrime(f"modulus {self.p} exceeds the supported bound 2**31")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def __call__(self, value):
        _reject_float(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            text = value.strip()
            try:
                value = str_to_fraction(text) if "/" in text else str_to_int(text)
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"cannot parse {text[:40]!r} in F_{self.p}") from None
            return self(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise ValidationError(f"cannot interpret {value!r} in F_{self.p}")

    def reduce(self, a):
        return a % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def inverse(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        return a * self.inverse(b) % self.p

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inverse(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self):
        return range(self.p)

    def format(self, a) -> str:
        return str(a)

    def to_json(self):
        return {"mod": self.p}

    def __repr__(self):
        return f"PrimeField({self.p})"


ZZ = Integers()
QQ = Rationals()


def ring_from_json(obj) -> Ring:
    """Parse ``"int"``, ``"rat"`` or ``{"mod": p}``."""
    if obj == "int":
        return ZZ
    if obj == "rat":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"mod"}:
        p = obj["mod"]
        if isinstance(p, str):
            try:
                p = int(p)
            except ValueError:
                raise ValidationError(f"bad modulus {p!r}") from None
        return PrimeField(p)
    raise ValidationError(f"unknown ring descriptor {obj!r}")


@dataclass(frozen=True)
class FractionElement:
    """An element ``num/den`` of the fraction field of ``ring``.

    Use :meth:`make`; it normalizes so that equal fractions compare equal.
    Over the integers ``gcd(num, den) == 1`` and ``den > 0``; over a field the
    denominator is always 1.
    """

    ring: Ring
    num: Any
    den: Any

    @classmethod
    def make(cls, ring: Ring, num, den) -> "FractionElement":
        if ring.is_zero(den):
            raise DivisionByZero("fraction with zero denominator")
        if ring.is_field:
            return cls(ring, ring.exact_div(num, den), ring.one)
        g = math.gcd(num, den)
        if den < 0:
            g = -g
        return cls(ring, num // g, den // g)

    @property
    def is_integral(self) -> bool:
        return self.den == self.ring.one

    def scaled(self, d):
        """``d * self`` as a ring element; fails unless ``den`` divides ``d*num``."""
        R = self.ring
        return R.exact_div(R.mul(d, self.num), self.den)

    def __str__(self):
        if self.is_integral:
            return self.ring.format(self.num)
        return f"{self.ring.format(self.num)}/{self.ring.format(self.den)}"


def _bareiss(R: Ring, rows: list[list]) -> int | None:
    """Fraction-free elimination of the leading square block of ``rows`` in place.

    Extra columns (an augmented right-hand side) are carried along. Returns
    the permutation sign, or ``None`` when the square block is singular.
    """
    n = len(rows)
    width = len(rows[0]) if rows else 0
    sign = 1
    prev = R.one
    for k in range(n):
        piv = next((i for i in range(k, n) if not R.is_zero(rows[i][k])), None)
        if piv is None:
            return None
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        row_k = rows[k]
        pk = row_k[k]
        for i in range(k + 1, n):
            row_i = rows[i]
            rik = row_i[k]
            for j in range(k + 1, width):
                row_i[j] = R.exact_div(R.sub(R.mul(row_i[j], pk), R.mul(rik, row_k[j])), prev)
            row_i[k] = R.zero
        prev = pk
    return sign


def _check_square(R: Ring, matrix: Sequence[Sequence]) -> list[list]:
    n = len(matrix)
    rows = []
    for row in matrix:
        if len(row) != n:
            raise ValidationError("matrix is not square")
        rows.append([R(v) for v in row])
    return rows


def determinant(R: Ring, matrix: Sequence[Sequence]):
    """Determinant by Bareiss elimination; only exact divisions in ``R``."""
    rows = _check_square(R, matrix)
    if not rows:
        return R.one
    sign = _bareiss(R, rows)
    if sign is None:
        return R.zero
    det = rows[-1][-1]
    return det if sign > 0 else R.neg(det)


def fraction_solve(R: Ring, matrix: Sequence[Sequence], rhs: Sequence) -> tuple[list[FractionElement], Any]:
    """Solve ``matrix @ x == rhs`` over the fraction field of ``R``.

    Returns ``(x, det)``. Each ``det * x[i]`` lies in ``R`` (Cramer), so every
    coordinate's reduced denominator divides ``det``. Raises
    :class:`SingularSystem` when ``det == 0``.
    """
    rows = _check_square(R, matrix)
    n = len(rows)
    if len(rhs) != n:
        raise ValidationError("right-hand side length does not match the matrix")
    if n == 0:
        return [], R.one
    for row, b in zip(rows, rhs):
        row.append(R(b))
    sign = _bareiss(R, rows)
    if sign is None:
        raise SingularSystem("determinant is zero")
    det = rows[-1][n - 1] if sign > 0 else R.neg(rows[-1][n - 1])

    # Back substitution on y = det * x, which stays inside R.
    y = [R.zero] * n
    for i in range(n - 1, -1, -1):
        acc = R.mul(det, rows[i][n])
        for j in range(i + 1, n):
            acc = R.sub(acc, R.mul(rows[i][j], y[j]))
        y[i] = R.exact_div(acc, rows[i][i])
    return [R.fraction(yi, det) for yi in y], det
