"""Exact rational arithmetic: places of Q, p-adic valuations, square classes.

Rationals are fractions.Fraction throughout (already reduced, positive
denominator), so the only types introduced here are Place and SquareClass.
Everything is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from . import _kernels as kernels
from .errors import DomainError

Rational = Union[int, Fraction]


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division; inputs are desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Place:
    """A place of Q: the real place (p is None) or a finite prime p.

    Primality is checked at construction so that a composite can never
    silently corrupt downstream symbol computations.
    """

    p: int | None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise DomainError(f"not a prime: {self.p!r}")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.p is None

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def code(self) -> int:
        """Kernel encoding: 0 for the real place, p otherwise."""
        return 0 if self.p is None else self.p

    def __lt__(self, other: "Place") -> bool:
        # the real place sorts before every finite prime
        return self.code < other.code

    def __str__(self) -> str:
        return "real" if self.p is None else str(self.p)

    def __repr__(self) -> str:
        return f"Place({self.p!r})"


REAL_PLACE = Place(None)


def _as_fraction(r: Rational) -> Fraction:
    if isinstance(r, Fraction):
        return r
    if isinstance(r, int):
        return Fraction(r)
    raise DomainError(f"expected an exact rational, got {type(r).__name__}")


def _nonzero_fraction(r: Rational, what: str) -> Fraction:
    f = _as_fraction(r)
    if f == 0:
        raise DomainError(f"{what} requires a nonzero rational")
    return f


def padic_valuation(r: Rational, p: int) -> int:
    """v with r = p^v * u, u a p-adic unit.  r must be nonzero, p prime."""
    f = _nonzero_fraction(r, "padic_valuation")
    if not is_prime(p):
        raise DomainError(f"not a prime: {p!r}")
    vn, _ = kernels.valuation_unit(f.numerator, p)
    vd, _ = kernels.valuation_unit(f.denominator, p)
    return vn - vd


@dataclass(frozen=True, order=True)
class SquareClass:
    """An element of Q*/(Q*)^2, stored as its signed squarefree representative."""

    d: int

    def __post_init__(self):
        if self.d == 0 or kernels.squarefree_int(self.d) != self.d:
            raise DomainError(f"not a squarefree nonzero representative: {self.d}")

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(kernels.squarefree_int(self.d * other.d))

    @property
    def is_trivial(self) -> bool:
        return self.d == 1

    def __str__(self) -> str:
        return str(self.d)


def square_class(r: Rational) -> SquareClass:
    """Squarefree integer d with r/d a square in Q.  r must be nonzero."""
    f = _nonzero_fraction(r, "square_class")
    # n/d and n*d differ by the square d^2
    return SquareClass(kernels.squarefree_int(f.numerator * f.denominator))


def is_local_square(r: Rational, v: Place) -> bool:
    """Is r a square in the completion of Q at v?

    Real place: r > 0.  Odd p: even valuation and unit part a quadratic
    residue mod p.  p = 2: even valuation and unit part = 1 mod 8.
    """
    f = _nonzero_fraction(r, "is_local_square")
    if v.is_real:
        return f > 0
    p = v.p
    n = f.numerator * f.denominator
    val, u = kernels.valuation_unit(n, p)
    if val & 1:
        return False
    if p == 2:
        return u % 8 == 1
    return kernels.legendre_int(u, p) == 1


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, +1}; p must be an odd prime."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"legendre_symbol needs an odd prime, got {p!r}")
    return kernels.legendre_int(a, p)


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of |n| by trial division (desk-scale inputs)."""
    if n == 0:
        raise DomainError("cannot factorize zero")
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def odd_prime_divisors(values: Iterable[Rational]) -> list[int]:
    """Sorted odd primes dividing the numerator or denominator of any value."""
    primes: set[int] = set()
    for r in values:
        f = _as_fraction(r)
        for part in (f.numerator, f.denominator):
            if part in (0, 1, -1):
                continue
            primes.update(q for q in factorize(part) if q != 2)
    return sorted(primes)
