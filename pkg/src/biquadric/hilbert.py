"""Hilbert symbols (a,b)_v over Q with an independent brute-force oracle.

The closed-form symbol is the production path.  The oracle answers the
defining question directly, by exhaustive search for primitive solutions
of z^2 = a x^2 + b y^2 modulo p^depth, and exists solely to validate the
formula; the two share no case analysis.
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernels as kernels
from .arith import (
    REAL_PLACE,
    Place,
    Rational,
    _nonzero_fraction,
    odd_prime_divisors,
    padic_valuation,
)
from .errors import InsufficientDepthError


def _cleared(r: Fraction) -> int:
    # n/d and n*d differ by the square d^2, which no symbol can see
    return r.numerator * r.denominator


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a nontrivial solution in Q_v, else -1.

    Computed by closed-form case analysis: signs at the real place,
    Legendre symbols at odd p, mod-8 characters at p = 2.
    """
    fa = _nonzero_fraction(a, "hilbert_symbol")
    fb = _nonzero_fraction(b, "hilbert_symbol")
    return kernels.hilbert_int(_cleared(fa), _cleared(fb), v.code)


def _oracle_normalize(f: Fraction, p: int) -> int:
    """Integer representative of f differing by a rational square, with
    p-adic valuation reduced into {0, 1}."""
    n = _cleared(f)
    v, u = kernels.valuation_unit(n, p)
    return u * p if v & 1 else u


def hilbert_oracle(a: Rational, b: Rational, v: Place, depth: int | None = None) -> int:
    """Independent Hilbert symbol by exhaustive search.

    At a finite place the conic is searched for primitive solutions
    modulo p^depth after clearing denominators and normalising the
    valuations of a and b into {0, 1}.  A found solution certifies +1 by
    Hensel lifting (depth carries the required margin); an exhausted
    search certifies -1 because a Z_p-point would reduce to a primitive
    solution at every depth.  At the real place sign analysis decides.

    depth below 2 * max(|v(a)|, |v(b)|) + 5 raises InsufficientDepthError
    rather than ever returning a wrong sign.
    """
    fa = _nonzero_fraction(a, "hilbert_oracle")
    fb = _nonzero_fraction(b, "hilbert_oracle")
    if v.is_real:
        return -1 if (fa < 0 and fb < 0) else 1
    p = v.p
    required = 2 * max(abs(padic_valuation(fa, p)), abs(padic_valuation(fb, p))) + 5
    if depth is None:
        depth = max(required, 8 if p == 2 else 5)
    if depth < required:
        raise InsufficientDepthError(
            f"depth {depth} is inconclusive at p={p}; need at least {required}")
    an = _oracle_normalize(fa, p)
    bn = _oracle_normalize(fb, p)
    return 1 if kernels.conic_soluble(an, bn, p, depth) else -1


def relevant_places(a: Rational, b: Rational) -> list[Place]:
    """Real place, 2, and the odd primes dividing numerator or denominator
    of a or b; the symbol is +1 everywhere else."""
    fa = _nonzero_fraction(a, "relevant_places")
    fb = _nonzero_fraction(b, "relevant_places")
    places = [REAL_PLACE, Place.finite(2)]
    places.extend(Place.finite(p) for p in odd_prime_divisors([fa, fb]))
    return places


def reciprocity_product(a: Rational, b: Rational) -> tuple[dict[Place, int], int]:
    """Symbols of (a, b) at every relevant place, plus their product.

    Hilbert reciprocity makes the product +1; the function computes it
    rather than assuming it so tests can assert it.
    """
    symbols = {v: hilbert_symbol(a, b, v) for v in relevant_places(a, b)}
    product = 1
    for s in symbols.values():
        product *= s
    return symbols, product
