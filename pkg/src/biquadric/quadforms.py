"""Quadratic forms over Q: diagonalisation, local invariants, isotropy.

Diagonal forms carry an explicit radical (zero) part so that degenerate
fibers of the fourfold can be handled without special cases: a form with
radical is isotropic with an obvious witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _kernels as kernels
from .arith import (
    REAL_PLACE,
    Place,
    Rational,
    _as_fraction,
    is_local_square,
    odd_prime_divisors,
    square_class,
)
from .errors import DomainError
from .hilbert import hilbert_symbol


@dataclass(frozen=True)
class GramForm:
    """Symmetric Gram matrix of a quadratic form, exact entries."""

    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]]) -> "GramForm":
        m = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        n = len(m)
        if any(len(row) != n for row in m):
            raise DomainError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise DomainError(f"Gram matrix not symmetric at ({i},{j})")
        return cls(m)

    @property
    def dimension(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class DiagonalForm:
    """Diagonal quadratic form <c_1, ..., c_r> plus radical_dim zero entries."""

    coefficients: tuple[Fraction, ...]
    radical_dim: int = 0

    def __post_init__(self):
        if any(c == 0 for c in self.coefficients):
            raise DomainError("diagonal coefficients must be nonzero")
        if self.radical_dim < 0:
            raise DomainError("radical dimension must be nonnegative")

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    @property
    def dimension(self) -> int:
        return self.rank + self.radical_dim

    def scaled_ints(self) -> tuple[int, ...]:
        """Integer coefficients defining the same zero set (common positive scaling)."""
        lcm = 1
        for c in self.coefficients:
            d = c.denominator
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        return tuple(int(c * lcm) for c in self.coefficients)

    def __str__(self) -> str:
        inner = ",".join(str(c) for c in self.coefficients)
        tail = f"; radical {self.radical_dim}" if self.radical_dim else ""
        return f"<{inner}{tail}>"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def diagonal_form(values: Iterable[Rational], radical_dim: int = 0) -> DiagonalForm:
    """DiagonalForm from raw diagonal values; zeros are moved to the radical."""
    coeffs = []
    extra = 0
    for v in values:
        f = _as_fraction(v)
        if f == 0:
            extra += 1
        else:
            coeffs.append(f)
    return DiagonalForm(tuple(coeffs), radical_dim + extra)


def diagonalize(q: GramForm) -> tuple[DiagonalForm, tuple[tuple[Fraction, ...], ...]]:
    """Exact congruence diagonalisation.

    Returns (form, T) with T invertible over Q and T^t * Gram * T equal to
    the diagonal matrix of the form's coefficients padded by radical zeros.
    Pivots prefer the largest-magnitude available diagonal entry; when the
    remaining diagonal vanishes entirely, a nonzero entry is manufactured
    by the rank-2 completion (add one variable to another).
    """
    n = q.dimension
    m = [list(row) for row in q.matrix]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add_column(dst: int, src: int, factor: Fraction) -> None:
        # congruence: variable dst := dst + factor * src (columns then rows)
        for r in range(n):
            m[r][dst] += factor * m[r][src]
        for c in range(n):
            m[dst][c] += factor * m[src][c]
        for r in range(n):
            t[r][dst] += factor * t[r][src]

    def swap_columns(i: int, j: int) -> None:
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    k = 0
    while k < n:
        pivots = [i for i in range(k, n) if m[i][i] != 0]
        if not pivots:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                        if m[i][j] != 0), None)
            if off is None:
                break  # remaining block is the radical
            add_column(off[0], off[1], Fraction(1))
            continue
        best = max(pivots, key=lambda i: (abs(m[i][i]), -i))
        if best != k:
            swap_columns(best, k)
        for j in range(k + 1, n):
            if m[k][j] != 0:
                add_column(j, k, -m[k][j] / m[k][k])
        k += 1

    coeffs = tuple(m[i][i] for i in range(k))
    form = DiagonalForm(coeffs, n - k)
    return form, tuple(tuple(row) for row in t)


def discriminant_class(q: DiagonalForm, v: Optional[Place] = None):
    """Product of the coefficients modulo squares; with a place given,
    also whether that product is a local square there."""
    if q.rank == 0:
        raise DomainError("discriminant of a rank-0 form")
    prod = Fraction(1)
    for c in q.coefficients:
        prod *= c
    cls = square_class(prod)
    if v is None:
        return cls
    return cls, is_local_square(prod, v)


def hasse_invariant(q: DiagonalForm, v: Place) -> int:
    """Product of Hilbert symbols (c_i, c_j)_v over index pairs i < j."""
    if q.rank == 0:
        raise DomainError("Hasse invariant of a rank-0 form")
    ints = [c.numerator * c.denominator for c in q.coefficients]
    code = v.code
    out = 1
    for i in range(len(ints)):
        for j in range(i + 1, len(ints)):
            out *= kernels.hilbert_int(ints[i], ints[j], code)
    return out


def is_isotropic_local(q: DiagonalForm, v: Place) -> bool:
    """Does q have a nontrivial zero over the completion at v?

    Radical forms are isotropic outright.  Otherwise the classical rank
    cases apply: rank 1 never; rank 2 iff -disc is a local square; rank 3
    iff (-1,-d)_v equals the Hasse invariant; rank 4 iff d is not a local
    square, or it is and the Hasse invariant equals (-1,-1)_v; rank >= 5
    always at finite places, sign test at the real place.
    """
    if q.radical_dim > 0:
        return True
    r = q.rank
    if r <= 1:
        return False
    prod = Fraction(1)
    for c in q.coefficients:
        prod *= c
    if r == 2:
        return is_local_square(-prod, v)
    eps = hasse_invariant(q, v)
    if r == 3:
        return hilbert_symbol(-1, -prod, v) == eps
    if r == 4:
        if not is_local_square(prod, v):
            return True
        return eps == hilbert_symbol(-1, -1, v)
    if v.is_real:
        return any(c > 0 for c in q.coefficients) and any(c < 0 for c in q.coefficients)
    return True


def relevant_places(q: DiagonalForm) -> list[Place]:
    """Places where a nondegenerate form could fail to be isotropic:
    real, 2, and odd primes meeting some coefficient."""
    places = [REAL_PLACE, Place.finite(2)]
    places.extend(Place.finite(p) for p in odd_prime_divisors(q.coefficients))
    return places


def is_isotropic_global(q: DiagonalForm) -> tuple[bool, list[Place]]:
    """Hasse-Minkowski: isotropic over Q iff isotropic at every relevant
    place.  Returns the verdict and the list of failing places."""
    if q.radical_dim > 0:
        return True, []
    failing = [v for v in relevant_places(q) if not is_isotropic_local(q, v)]
    return not failing, failing


def isotropy_oracle(q: DiagonalForm, bound: int) -> Optional[tuple[int, ...]]:
    """Small-instance ground truth: a nonzero integer vector with entries
    in [-bound, bound] on which q vanishes, or None for "not found".

    Absence at a bound proves nothing; callers must not read None as
    "anisotropic".  Coordinates are ordered rank part first, then radical.
    """
    if bound < 1:
        raise DomainError("oracle bound must be positive")
    if q.radical_dim > 0:
        return (0,) * q.rank + (1,) + (0,) * (q.radical_dim - 1)
    if q.rank == 0:
        return None
    found = kernels.isotropy_search(q.scaled_ints(), bound)
    return None if found is None else tuple(found)
