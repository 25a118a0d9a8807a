"""Random generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from hasserec import QQ, ZZ, Poly, PrefixSeq, PrimeField, RecurrenceSpec

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F97 = PrimeField(97)

RINGS = [ZZ, QQ, F2, F3, F97]
RING_IDS = ["int", "rat", "F2", "F3", "F97"]


def rand_elem(R, rng: random.Random, size: int = 3):
    if isinstance(R, PrimeField):
        return rng.randrange(R.p)
    if R is QQ:
        return Fraction(rng.randint(-size, size), rng.choice([1, 1, 2, 3]))
    return rng.randint(-size, size)


def rand_poly(R, rng, max_deg: int = 8, size: int = 3) -> Poly:
    d = rng.randint(-1, max_deg)
    return Poly(R, [rand_elem(R, rng, size) for _ in range(d + 1)])


def rand_monic(R, rng, n: int, size: int = 2) -> Poly:
    return Poly(R, [rand_elem(R, rng, size) for _ in range(n)] + [1])


def rand_prefix(R, rng, m: int, size: int = 3) -> PrefixSeq:
    return PrefixSeq(R, [rand_elem(R, rng, size) for _ in range(m)])


def rand_spec(R, rng, max_deg: int = 8, size: int = 2) -> RecurrenceSpec:
    return RecurrenceSpec(rand_monic(R, rng, rng.randint(1, max_deg), size))


def root_pool(R):
    if isinstance(R, PrimeField):
        return list(range(R.p))
    if R is QQ:
        return sorted({Fraction(a, b) for a in range(-3, 4) for b in (1, 2, 3)})
    return list(range(-3, 4))


def rand_split_spec(R, rng, max_deg: int = 8):
    """A spec built as prod (x - alpha)^mu with every root in R; returns (spec, roots)."""
    pool = root_pool(R)
    total = rng.randint(1, max_deg)
    k = rng.randint(1, min(total, len(pool)))
    alphas = rng.sample(pool, k)
    mus = [1] * k
    for _ in range(total - k):
        mus[rng.randrange(k)] += 1
    roots = list(zip(alphas, mus))
    return RecurrenceSpec(Poly.from_roots(R, roots)), roots
