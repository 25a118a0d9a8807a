"""N-th term of a recurrence in O(n^2 log N) ring operations.

For a solution ``s`` of ``p(L) s = 0`` the pairing kills every multiple of
``p``: ``<s, p*q> = <p(L) s, q> = 0``. So ``s_N = <s, x^N> = <s, x^N mod p>``,
and only the first ``n`` terms of ``s`` are needed.

All residue arithmetic runs on plain ints. Over Q the modulus is first
rescaled: with ``D`` the lcm of the coefficient denominators,
``q(y) = D^n p(y / D)`` has integer coefficients, and
``y^N = r(y) mod q`` gives ``x^N = D^-N r(D x) mod p``.

Multiplication is schoolbook; an FFT or Karatsuba product would slot into
:meth:`ModPowContext.mulmod` without touching anything else.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Optional

from .errors import BadInitLength, OutOfRange, ValidationError
from .poly import Poly
from .recurrence import RecurrenceSpec, _as_prefix, integral_rescale
from .rings import PrimeField, Rationals

try:  # GMP products are several times faster on multi-thousand-bit coefficients
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _big = int


def _identity(v):
    return v


class ModPowContext:
    """Arithmetic in ``k[x] / p(x)`` on integer coefficient lists of length ``n``.

    ``memo_limit`` > 0 keeps ``x^M mod p`` for every ``M <= memo_limit`` that
    :meth:`pow_x` computes, so a sweep over consecutive exponents costs one
    squaring per exponent. The memo is filled under a lock and only ever
    grows; results never depend on it.
    """

    def __init__(self, spec: RecurrenceSpec, memo_limit: int = 0):
        self.spec = spec
        self.ring = R = spec.ring
        self.n = n = spec.order
        cs = spec.char_poly.coeffs[:n]
        if isinstance(R, Rationals):
            D, low = integral_rescale(cs)
        else:
            D = 1
            low = [int(c) for c in cs]
        self.scale = D
        if isinstance(R, PrimeField):
            self._mod = lambda v, p=R.p: v % p
            self._one = 1
        else:
            # coefficients grow without bound over Z and Q
            self._mod = _identity
            self._one = _big(1)
            low = [_big(c) for c in low]
        # y^n == sum(tail[k] * y^k for k < n)
        self.tail = [self._mod(-c) for c in low]
        self.memo_limit = memo_limit
        self._memo: dict[int, list] = {}
        self._lock = threading.Lock()

    def one(self) -> list:
        return self.monomial(0)

    def monomial(self, i: int) -> list:
        out = [0] * self.n
        out[i] = self._one
        return out

    def mulx(self, a: list) -> list:
        """``y * a mod q``."""
        top = a[-1]
        out = [0] + a[:-1]
        if top:
            mod = self._mod
            out = [mod(o + top * t) for o, t in zip(out, self.tail)]
        return out

    def mulmod(self, a: list, b: list) -> list:
        prod = [0] * (2 * self.n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return self._reduce(prod)

    def sqrmod(self, a: list) -> list:
        """``a * a mod q``; about half the products of :meth:`mulmod`."""
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                prod[2 * i] += ai * ai
                twice = 2 * ai
                for j in range(i + 1, n):
                    bj = a[j]
                    if bj:
                        prod[i + j] += twice * bj
        return self._reduce(prod)

    def _reduce(self, prod: list) -> list:
        mod = self._mod
        n = self.n
        tail = self.tail
        for k in range(2 * n - 2, n - 1, -1):
            t = mod(prod[k])
            if t:
                base = k - n
                for j, tj in enumerate(tail):
                    prod[base + j] += t * tj
        return [mod(v) for v in prod[:n]]

    def pow_x(self, N: int) -> list:
        """``y^N mod q`` by left-to-right square-and-multiply (``y = x`` unless over Q)."""
        if N < 0:
            raise OutOfRange(f"exponent must be >= 0, got {N}")
        if N < self.n:
            return self.monomial(N)
        memo = self._memo
        if N <= self.memo_limit:
            hit = memo.get(N)
            if hit is not None:
                return hit
            half = self.pow_x(N >> 1)
            acc = self.sqrmod(half)
            if N & 1:
                acc = self.mulx(acc)
            with self._lock:
                memo[N] = acc
            return acc
        acc = self.one()
        for bit in bin(N)[2:]:
            acc = self.sqrmod(acc)
            if bit == "1":
                acc = self.mulx(acc)
        return acc

    def residue_coeffs(self, N: int) -> list:
        """Coefficients of ``x^N mod p`` as ring elements."""
        r = self.pow_x(N)
        R = self.ring
        D = self.scale
        if D == 1:
            return [R(int(v)) for v in r]
        # x^N == D^-N * r(D x)
        return [Fraction(int(v) * D**i, D**N) for i, v in enumerate(r)]


def polymod_pow(ctx: ModPowContext, N: int) -> Poly:
    """``x^N mod p`` as a polynomial of degree < n."""
    return Poly._raw(ctx.ring, ctx.residue_coeffs(N))


def term(spec: RecurrenceSpec, init, N: int, ctx: Optional[ModPowContext] = None):
    """``s_N`` for the solution whose first ``n`` terms are ``init``."""
    init = _as_prefix(spec, init)
    if len(init) != spec.order:
        raise BadInitLength(f"expected {spec.order} initial terms, got {len(init)}")
    if ctx is None:
        ctx = ModPowContext(spec)
    elif ctx.spec != spec:
        raise ValidationError("context was built for a different recurrence")
    R = spec.ring
    r = ctx.pow_x(N)
    D = ctx.scale
    if isinstance(R, PrimeField):
        acc = 0
        for c, t in zip(r, init.terms):
            acc += c * t
        return R.reduce(acc)
    # sum r_i D^i init_i / D^N over the common denominator B * D^N
    if isinstance(R, Rationals):
        B = math.lcm(*(t.denominator for t in init.terms))
        nums = [t.numerator * (B // t.denominator) for t in init.terms]
    else:
        B = 1
        nums = list(init.terms)
    acc = _big(0)
    Di = 1
    for c, t in zip(r, nums):
        acc += c * Di * t
        Di *= D
    if not isinstance(R, Rationals):
        return int(acc)
    return Fraction(int(acc), B * D**N)
