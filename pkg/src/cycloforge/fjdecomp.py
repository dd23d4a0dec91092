"""Residue-class decomposition for one extra prime.

Writing f for the cyclotomic polynomial of n*p, the exponents of f are
split by their residue class mod p, giving p member polynomials, the
j-th collecting the coefficients sitting at exponents congruent to j.
The members satisfy a shift law in j, agree modulo phi(n) with the
polynomials produced by the Bezout identity on the two obvious
cofactors of f, and for p > n the first n members already exhaust the
coefficient set of f. A companion comparison classifies how the
coefficient sets for two different primes relate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, prod

from ._numtheory import factorize, is_prime, totient
from .cyclotomic import phi, psi
from .errors import (
    HypothesisViolated,
    IntegralityFailure,
    NotCoprimeIndex,
    RemainderNonzero,
    RequiresLargeP,
)
from .intpoly import (
    IntPolynomial,
    LaurentPolynomial,
    coeff_set,
    extract_residue,
    laurent,
    monomial,
    poly_add,
    poly_exact_div,
    poly_mod_monic,
    poly_mul,
    poly_sub,
    substitute_power,
)
from .pseudocyclo import pseudo_phi


@dataclass(frozen=True, slots=True)
class FjFamily:
    """The p residue-class members of the cyclotomic polynomial of n*p."""

    n: int
    p: int
    members: tuple[IntPolynomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        if len(self.members) != self.p:
            raise ValueError("need exactly p members")
        f = phi(self.n * self.p)
        rebuilt = [0] * (f.degree + 1)
        for j, m in enumerate(self.members):
            for i, c in enumerate(m.coeffs):
                k = j + self.p * i
                if c and k > f.degree:
                    raise ValueError("members overflow the source polynomial")
                if k <= f.degree:
                    rebuilt[k] += c
        if tuple(rebuilt) != f.coeffs:
            raise ValueError("members do not reassemble the source polynomial")
        tot = totient(self.n)
        for j, m in enumerate(self.members):
            ceil_share = -(-(tot + j) // self.p)
            if m and m.degree > tot - ceil_share:
                raise ValueError(f"member {j} exceeds its degree budget")
        if self.members[0].coeff(0) != 1:
            raise ValueError("member 0 must have constant term 1")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "members": [list(m.coeffs) for m in self.members],
        }


@dataclass(frozen=True, slots=True)
class BezoutSplit:
    """Cofactor pair (a, b) with f = a*g + b*h, where f is the cyclotomic
    polynomial of n*p, g substitutes x^n into the p-th, and h substitutes
    x^p into the n-th. Minimal-degree solution, hence unique."""

    n: int
    p: int
    a: IntPolynomial
    b: IntPolynomial

    def __post_init__(self) -> None:
        tot = totient(self.n)
        if self.a and self.a.degree >= tot:
            raise ValueError("a breaks its degree bound")
        if self.b and self.b.degree >= (self.n - tot) * (self.p - 1):
            raise ValueError("b breaks its degree bound")
        lhs = poly_mul(self.a, self.g())
        rhs = poly_mul(self.b, self.h())
        if poly_add(lhs, rhs) != phi(self.n * self.p):
            raise ValueError("identity f = a*g + b*h fails")

    def g(self) -> IntPolynomial:
        return substitute_power(phi(self.p), self.n)

    def h(self) -> IntPolynomial:
        return substitute_power(phi(self.n), self.p)


def bezout_split(n: int, p: int) -> BezoutSplit:
    """Unique minimal-degree (a, b). Modulo phi(n) the g factor collapses
    to the constant p and the h factor to 0, so a is the remainder of f
    by phi(n) scaled down by p; b then comes out by exact division."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n % p == 0:
        raise NotCoprimeIndex(f"{p} divides {n}")
    f = phi(n * p)
    rem = poly_mod_monic(f, phi(n))
    scaled = []
    for c in rem.coeffs:
        if c % p:
            raise IntegralityFailure(f"coefficient {c} not divisible by {p}")
        scaled.append(c // p)
    a = IntPolynomial(tuple(scaled))
    g = substitute_power(phi(p), n)
    h = substitute_power(phi(n), p)
    try:
        b = poly_exact_div(poly_sub(f, poly_mul(a, g)), h)
    except RemainderNonzero as exc:
        raise IntegralityFailure("cofactor division left a remainder") from exc
    return BezoutSplit(n, p, a, b)


def fj_family(n: int, p: int) -> FjFamily:
    """Members by direct residue extraction from the full polynomial."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n % p == 0:
        raise NotCoprimeIndex(f"{p} divides {n}")
    f = phi(n * p)
    return FjFamily(n, p, tuple(extract_residue(f, p, j) for j in range(p)))


def fj_extended(family: FjFamily, j: int) -> LaurentPolynomial:
    """Member for any integer index. The extension is pinned by keeping
    x^j * member_j(x^p) unchanged under j -> j + p, which shifts the
    member by one power of x per period step."""
    r = j % family.p
    return laurent(-(j // family.p), family.members[r].coeffs)


def gj_family(split: BezoutSplit) -> list[IntPolynomial]:
    """Residue-class members of a*g; congruent to the direct members
    modulo phi(n)."""
    ag = poly_mul(split.a, split.g())
    return [extract_residue(ag, split.p, j) for j in range(split.p)]


def _as_prime_parts(n_or_parts) -> tuple[int, ...]:
    if isinstance(n_or_parts, int):
        fac = factorize(n_or_parts)
        if any(e > 1 for _, e in fac):
            raise ValueError(f"{n_or_parts} is not squarefree")
        return tuple(p for p, _ in fac)
    parts = tuple(n_or_parts)
    if len(set(parts)) != len(parts) or not all(is_prime(q) for q in parts):
        raise ValueError("parts must be distinct primes")
    return parts


def f0_fast(n_or_parts, p: int) -> IntPolynomial:
    """Member 0 without building the full polynomial of n*p: with
    w = p mod n, extract residue class 0 with step w from the
    inclusion-exclusion polynomial of the parts plus w. Only valid for
    p beyond n."""
    parts = _as_prime_parts(n_or_parts)
    n = prod(parts)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n % p == 0:
        raise NotCoprimeIndex(f"{p} divides {n}")
    if p < n:
        raise RequiresLargeP(f"need p > n, got p={p}, n={n}")
    w = p % n
    return extract_residue(pseudo_phi(list(parts) + [w]), w, 0)


def fstar_family(n: int, p: int) -> list[IntPolynomial]:
    """The n reduced shifts of member 0: entry j is the representative of
    x^j * member_0 modulo phi(n) with degree below the totient. As a set
    this equals the first n members of the direct family."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n % p == 0:
        raise NotCoprimeIndex(f"{p} divides {n}")
    if p < n:
        raise RequiresLargeP(f"need p > n, got p={p}, n={n}")
    fac = factorize(n)
    if all(e == 1 for _, e in fac):
        f0 = f0_fast(tuple(q for q, _ in fac), p) if n > 1 else extract_residue(phi(p), p, 0)
    else:
        f0 = extract_residue(phi(n * p), p, 0)
    base = phi(n)
    out = [f0]
    x = monomial(1)
    for _ in range(1, n):
        out.append(poly_mod_monic(poly_mul(x, out[-1]), base))
    return out


def fj_constant_terms(n: int) -> list[int]:
    """Constant terms of the first n members for any prime beyond n;
    these are the negated low coefficients of the cofactor of phi(n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    q = psi(n)
    return [-q.coeff(j) for j in range(n)]


def reciprocity_partner(n: int, p: int, j: int) -> int:
    """Index whose member shares the coefficient set with member j."""
    if n % p == 0:
        raise NotCoprimeIndex(f"{p} divides {n}")
    if not 0 <= j < p:
        raise ValueError(f"index {j} outside [0, {p})")
    z = (-totient(n)) % p
    return z - j if j <= z else p + z - j


class PeriodicityRelation(Enum):
    Equal = "equal"
    Negated = "negated"
    SubsetForward = "subset-forward"
    NotComparable = "not-comparable"


@dataclass(frozen=True, slots=True)
class PeriodicityComparison:
    """Observed relation between the coefficient sets for primes s and t
    (ground truth by direct computation), alongside what the congruence
    hypotheses predict (None when no statement applies)."""

    n: int
    s: int
    t: int
    observed: PeriodicityRelation
    predicted: PeriodicityRelation | None
    vset_s: frozenset[int]
    vset_t: frozenset[int]


def periodicity_compare(n: int, s: int, t: int) -> PeriodicityComparison:
    if n < 2 or s == t or not (is_prime(s) and is_prime(t)):
        raise HypothesisViolated("need distinct primes s, t and n >= 2")
    if gcd(n, s) != 1 or gcd(n, t) != 1:
        raise HypothesisViolated("s and t must be coprime to n")
    unsigned = (s - t) % n == 0
    signed = (s + t) % n == 0
    if not (unsigned or signed):
        raise HypothesisViolated(f"{s} is not congruent to +/-{t} mod {n}")

    vs = frozenset(coeff_set(phi(n * s)))
    vt = frozenset(coeff_set(phi(n * t)))
    neg_vt = frozenset(-c for c in vt)
    both = vt | neg_vt

    threshold = n - totient(n)
    if unsigned and min(s, t) > threshold:
        predicted = PeriodicityRelation.Equal
        if vs != vt:
            raise RuntimeError("prediction Equal contradicted by direct computation")
    elif signed and min(s, t) > threshold:
        predicted = PeriodicityRelation.Negated
        if vs != neg_vt:
            raise RuntimeError("prediction Negated contradicted by direct computation")
    elif t > threshold:
        predicted = PeriodicityRelation.SubsetForward
        if not vs <= both:
            raise RuntimeError("prediction Subset contradicted by direct computation")
    else:
        predicted = None

    if vs == vt:
        observed = PeriodicityRelation.Equal
    elif vs == neg_vt:
        observed = PeriodicityRelation.Negated
    elif vs < both:
        observed = PeriodicityRelation.SubsetForward
    else:
        observed = PeriodicityRelation.NotComparable
    return PeriodicityComparison(n, s, t, observed, predicted, vs, vt)
