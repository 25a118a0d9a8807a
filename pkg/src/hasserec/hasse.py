"""Divided (Hasse) derivatives on k[x].

``delta(p, n)`` is the coefficient of ``y**n`` in ``p(x + y)``. On monomials,
``delta(x**i, n) = bico(i - n, n) * x**(i - n)`` where ``bico(a, b)`` is the
binomial coefficient ``C(a + b, b)``, set to zero when ``a`` or ``b`` is
negative. Binomials are computed in Z and only then mapped into the ring, so
nothing here ever divides by a factorial.
"""
from __future__ import annotations

import math
import threading

from .poly import Poly
from .rings import Ring


class BinomialTable:
    """Pascal's triangle over Z, grown on demand.

    Rows past ``max_rows`` are not stored; those lookups fall back to
    ``math.comb``, which is exact.
    """

    def __init__(self, max_rows: int = 512):
        self.max_rows = max_rows
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def _grow(self, n: int) -> None:
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                prev = rows[-1]
                row = [1] * (len(prev) + 1)
                for k in range(1, len(prev)):
                    row[k] = prev[k - 1] + prev[k]
                rows.append(row)

    def comb(self, n: int, k: int) -> int:
        """``C(n, k)``; zero outside ``0 <= k <= n``."""
        if n < 0 or k < 0 or k > n:
            return 0
        if n >= self.max_rows:
            return math.comb(n, k)
        if n >= len(self._rows):
            self._grow(n)
        return self._rows[n][k]

    def bico(self, a: int, b: int) -> int:
        if a < 0 or b < 0:
            return 0
        return self.comb(a + b, b)

    def rows(self, upto: int) -> list[list[int]]:
        if upto >= len(self._rows):
            self._grow(min(upto, self.max_rows - 1))
        return self._rows[: upto + 1]


TABLE = BinomialTable()


def bico(a: int, b: int) -> int:
    return TABLE.bico(a, b)


def binomial_in_ring(R: Ring, a: int, b: int):
    """Image of ``bico(a, b) = C(a + b, b)`` under Z -> R."""
    return R.from_int(TABLE.bico(a, b))


def divided_derivative(p: Poly, n: int) -> Poly:
    """``delta^n p`` by the monomial formula, applied coefficientwise."""
    R = p.ring
    if n < 0:
        if n == -1:
            return Poly.zero(R)
        raise ValueError(f"divided derivative order must be >= 0, got {n}")
    if n == 0:
        return p
    cs = p.coeffs
    if n >= len(cs):
        return Poly.zero(R)
    out = [R.reduce(R.from_int(TABLE.bico(i - n, n)) * cs[i]) for i in range(n, len(cs))]
    return Poly._raw(R, out)


def taylor_expand(p: Poly) -> list[Poly]:
    """Polynomials ``g_j`` with ``p(x + y) == sum(g_j * y**j)``.

    Horner's rule in k[x][y]: start from zero and repeatedly multiply by
    ``x + y`` and add the next coefficient. Uses ring additions and
    multiplications only, no binomial coefficients.
    """
    R = p.ring
    x = Poly.x(R)
    g: list[Poly] = []
    for c in reversed(p.coeffs):
        # (sum g_j y^j) * (x + y) = sum (x g_j + g_{j-1}) y^j
        nxt = [x * gj for gj in g] + [Poly.zero(R)]
        for j in range(1, len(nxt)):
            nxt[j] = nxt[j] + g[j - 1]
        if nxt:
            nxt[0] = nxt[0] + Poly.const(R, c)
        else:
            nxt = [Poly.const(R, c)]
        g = nxt
    return g


def divided_derivative_taylor(p: Poly, n: int) -> Poly:
    """``delta^n p`` straight from the definition (slow; used as a cross-check)."""
    if n < 0:
        raise ValueError(f"divided derivative order must be >= 0, got {n}")
    g = taylor_expand(p)
    return g[n] if n < len(g) else Poly.zero(p.ring)


def formal_derivative(p: Poly) -> Poly:
    R = p.ring
    return Poly._raw(R, [R.mul(R.from_int(i), c) for i, c in enumerate(p.coeffs)][1:])


def check_leibniz(f: Poly, g: Poly, n: int) -> bool:
    """``delta^n(f g) == sum_{i+j=n} delta^i f * delta^j g``."""
    lhs = divided_derivative(f * g, n)
    rhs = Poly.zero(f.ring)
    for i in range(n + 1):
        rhs = rhs + divided_derivative(f, i) * divided_derivative(g, n - i)
    return lhs == rhs


def check_composition(p: Poly, n: int, m: int) -> bool:
    """``delta^n(delta^m p) == bico(m, n) * delta^(n+m) p``."""
    lhs = divided_derivative(divided_derivative(p, m), n)
    rhs = divided_derivative(p, n + m) * binomial_in_ring(p.ring, m, n)
    return lhs == rhs


def check_commutator(p: Poly, n: int) -> bool:
    """``delta^n(x p) - x delta^n(p) == delta^(n-1) p`` with ``delta^-1 = 0``."""
    x = Poly.x(p.ring)
    lhs = divided_derivative(x * p, n) - x * divided_derivative(p, n)
    rhs = Poly.zero(p.ring) if n == 0 else divided_derivative(p, n - 1)
    return lhs == rhs
