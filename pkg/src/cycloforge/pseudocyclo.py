"""Inclusion-exclusion polynomials over pairwise-coprime parts.

For parts p_1..p_k the polynomial is a signed product of binomials
x^d - 1, one binomial per subset of the parts. It is always an honest
integer polynomial (a product of genuine cyclotomics), and when every
part is prime it coincides with the cyclotomic polynomial of the
product. A part equal to 1 collapses the whole product to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as cartesian
from math import gcd, prod
from typing import Iterable, Union

from ._numtheory import divisors
from .cyclotomic import CycloIndex, _div_xd_minus_1, _mul_xd_minus_1
from .errors import NotCoprime
from .intpoly import ONE, IntPolynomial


@dataclass(frozen=True, slots=True)
class PseudoParts:
    """Pairwise-coprime parts >= 1. User order is preserved for display;
    computation always runs on the sorted canonical form, so order can
    never leak into a result."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        for p in self.parts:
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be integers >= 1, got {p!r}")
        for a, b in combinations(self.parts, 2):
            if gcd(a, b) != 1:
                raise NotCoprime(f"parts {a} and {b} share a common factor")

    @staticmethod
    def of(*parts: int) -> "PseudoParts":
        return PseudoParts(tuple(parts))

    @property
    def canonical(self) -> tuple[int, ...]:
        return tuple(sorted(self.parts))

    @property
    def product(self) -> int:
        return prod(self.parts)


PartsLike = Union[PseudoParts, Iterable[int]]


def _coerce(parts: PartsLike) -> PseudoParts:
    if isinstance(parts, PseudoParts):
        return parts
    return PseudoParts(tuple(parts))


def _signed_subset_product(ps: tuple[int, ...], include_full: bool, flip: bool) -> IntPolynomial:
    # Multiply every positively-signed binomial x^d - 1 first, then
    # exact-divide by the negative ones in increasing degree order; the
    # division kernel's remainder check doubles as a self-test.
    k = len(ps)
    plus: list[int] = []
    minus: list[int] = []
    for r in range(k + 1 if include_full else k):
        positive = ((k - r) % 2 == 0) ^ flip
        bucket = plus if positive else minus
        for combo in combinations(ps, r):
            bucket.append(prod(combo))
    out = [1]
    for d in sorted(plus, reverse=True):
        out = _mul_xd_minus_1(out, d)
    for d in sorted(minus):
        out = _div_xd_minus_1(out, d)
    return IntPolynomial(tuple(out))


def pseudo_phi(parts: PartsLike) -> IntPolynomial:
    """Signed-subset product; degree is the product of (p_i - 1)."""
    ps = _coerce(parts).canonical
    if 1 in ps:
        return ONE
    return _signed_subset_product(ps, include_full=True, flip=False)


def pseudo_psi(parts: PartsLike) -> IntPolynomial:
    """Cofactor: pseudo_phi(parts) * pseudo_psi(parts) = x^(product) - 1."""
    ps = _coerce(parts).canonical
    return _signed_subset_product(ps, include_full=False, flip=True)


def pseudo_factorization(parts: PartsLike) -> list[CycloIndex]:
    """Cyclotomic indices m_1*...*m_k over divisor choices m_i | p_i with
    m_i > 1, sorted ascending. Parts equal to 1 admit no choice at all,
    so they are rejected rather than silently producing an empty list."""
    ps = _coerce(parts).canonical
    if 1 in ps:
        raise ValueError("pseudo_factorization needs every part > 1")
    choices = [[d for d in divisors(p) if d > 1] for p in ps]
    picks = (prod(pick) for pick in cartesian(*choices))
    return [CycloIndex.of(m) for m in sorted(picks)]
