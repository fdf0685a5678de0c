"""The biquadratic fourfold X in P^2 x P^3 attached to a ternary form F:

    xy t1^2 + xz t2^2 + yz t3^2 + F(x,y,z) t4^2 = 0

Membership, fiber forms of the projection to P^2, the Jacobian smoothness
test, bounded-height rational point search, seeded local base sampling,
and real components by sign pattern.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .arith import Place, Rational, _as_fraction
from .errors import BoundaryBaseError, DomainError
from .quadforms import DiagonalForm, diagonal_form, is_isotropic_global, is_isotropic_local
from .residues import FConditionReport, TernaryForm, check_form_conditions


def _canonical(values: Sequence[Rational], what: str) -> tuple[int, ...]:
    """Primitive integer vector with positive first nonzero entry."""
    fracs = [_as_fraction(v) for v in values]
    if all(f == 0 for f in fracs):
        raise DomainError(f"{what} must not be all zero")
    lcm = 1
    for f in fracs:
        d = f.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class BasePoint:
    """A point (x : y : z) of P^2(Q), stored as a canonical primitive triple."""

    x: int
    y: int
    z: int

    @classmethod
    def of(cls, x: Rational, y: Rational, z: Rational) -> "BasePoint":
        return cls(*_canonical((x, y, z), "a base point"))

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def xyz_nonzero(self) -> bool:
        return self.x != 0 and self.y != 0 and self.z != 0

    def __str__(self) -> str:
        return f"({self.x}:{self.y}:{self.z})"


@dataclass(frozen=True)
class FourfoldPoint:
    """A point of X: a base point plus a canonical primitive fiber quadruple.

    Built through Fourfold.point so the defining equation is always
    satisfied exactly.
    """

    base: BasePoint
    t: tuple[int, int, int, int]

    @property
    def xyz_nonzero(self) -> bool:
        return self.base.xyz_nonzero

    def __str__(self) -> str:
        return f"({self.base.x}:{self.base.y}:{self.base.z}; {','.join(map(str, self.t))})"


class Component(enum.Enum):
    """Real components of the base locus, labelled by sign pattern only."""

    SAME_SIGN = "SameSign"
    MIXED = "Mixed"


def real_component(base: BasePoint) -> Component:
    """SameSign iff x, y, z carry one sign; zero coordinates are boundary."""
    if not base.xyz_nonzero:
        raise BoundaryBaseError(f"{base} lies on a coordinate line")
    signs = {v > 0 for v in base.coords}
    return Component.SAME_SIGN if len(signs) == 1 else Component.MIXED


@dataclass(frozen=True)
class SampledBases:
    """Result of local base sampling; exhausted marks a partial list."""

    bases: tuple[BasePoint, ...]
    requested: int
    exhausted: bool


class Fourfold:
    """The fourfold attached to a ternary form, with its condition report cached."""

    def __init__(self, form: TernaryForm):
        self.form = form
        self.fcond: FConditionReport = check_form_conditions(form)

    @classmethod
    def from_text(cls, text: str) -> "Fourfold":
        return cls(TernaryForm.from_text(text))

    def equation_value(self, base: Sequence[Rational], t: Sequence[Rational]) -> Fraction:
        x, y, z = (_as_fraction(v) for v in base)
        t1, t2, t3, t4 = (_as_fraction(v) for v in t)
        return (x * y * t1 * t1 + x * z * t2 * t2 + y * z * t3 * t3
                + self.form.evaluate(x, y, z) * t4 * t4)

    def contains(self, base: BasePoint, t: Sequence[Rational]) -> bool:
        """Exact evaluation of the bihomogeneous equation; t must not vanish."""
        if all(_as_fraction(v) == 0 for v in t):
            raise DomainError("fiber coordinates must not be all zero")
        return self.equation_value(base.coords, t) == 0

    def point(self, base: BasePoint, t: Sequence[Rational]) -> FourfoldPoint:
        if not self.contains(base, t):
            pretty = ",".join(str(_as_fraction(v)) for v in t)
            raise DomainError(f"not a point of the fourfold: {base}; t=({pretty})")
        return FourfoldPoint(base, _canonical(t, "fiber coordinates"))

    def fiber_coefficients(self, base: BasePoint) -> tuple[Fraction, ...]:
        """(xy, xz, yz, F(x,y,z)) at the base, in fiber coordinate order."""
        x, y, z = (Fraction(v) for v in base.coords)
        return (x * y, x * z, y * z, self.form.evaluate(x, y, z))

    def fiber_form(self, base: BasePoint) -> DiagonalForm:
        """Diagonal form of the fiber, zero entries moved to the radical."""
        return diagonal_form(self.fiber_coefficients(base))

    def is_smooth_point(self, point: FourfoldPoint) -> bool:
        """Jacobian criterion on the bihomogeneous equation.

        The Euler relations make the point singular exactly when all seven
        partial derivatives vanish at any representative.
        """
        if not self.contains(point.base, point.t):
            raise DomainError("smoothness asked at a non-point")
        x, y, z = (Fraction(v) for v in point.base.coords)
        t1, t2, t3, t4 = (Fraction(v) for v in point.t)
        fx, fy, fz = self.form.gradient(x, y, z)
        f = self.form.evaluate(x, y, z)
        partials = (
            y * t1 * t1 + z * t2 * t2 + fx * t4 * t4,
            x * t1 * t1 + z * t3 * t3 + fy * t4 * t4,
            x * t2 * t2 + y * t3 * t3 + fz * t4 * t4,
            2 * x * y * t1,
            2 * x * z * t2,
            2 * y * z * t3,
            2 * f * t4,
        )
        return any(p != 0 for p in partials)

    def search_rational_points(self, base_height: int, fiber_height: int) -> list[FourfoldPoint]:
        """All points with primitive base of height <= base_height and some
        primitive fiber vector of height <= fiber_height.

        Bases whose fiber is locally insoluble are skipped (no rational
        point can exist there); the fiber search itself is exhaustive.
        """
        if base_height < 1 or fiber_height < 1:
            raise DomainError("search heights must be at least 1")
        points: list[FourfoldPoint] = []
        h = base_height
        for coords in product(range(-h, h + 1), repeat=3):
            if coords == (0, 0, 0):
                continue
            base = BasePoint.of(*coords)
            if base.coords != coords:
                continue  # enumerate each projective base once
            fiber = self.fiber_form(base)
            if fiber.radical_dim == 0 and not is_isotropic_global(fiber)[0]:
                continue
            coeffs = self.fiber_coefficients(base)
            seen: set[tuple[int, ...]] = set()
            k = fiber_height
            for t in product(range(-k, k + 1), repeat=4):
                if t == (0, 0, 0, 0):
                    continue
                if sum(c * v * v for c, v in zip(coeffs, t)) == 0:
                    tc = _canonical(t, "fiber coordinates")
                    if tc not in seen:
                        seen.add(tc)
                        points.append(FourfoldPoint(base, tc))
        return points

    def sample_local_bases(self, v: Place, count: int, depth: int,
                           seed: int = 0) -> SampledBases:
        """Seeded pseudorandom primitive triples modulo p^depth, lifted to
        integers (centered lift), filtered by local solubility of the fiber.

        Exactly count survivors are returned when the attempt budget
        suffices; otherwise a partial list with exhausted = True.
        """
        if not v.is_finite:
            raise DomainError("local sampling needs a finite place")
        if depth < 3:
            raise DomainError("sampling depth must be at least 3")
        if count < 0:
            raise DomainError("count must be nonnegative")
        p = v.p
        modulus = p ** depth
        rng = random.Random(seed)
        out: list[BasePoint] = []
        budget = max(200 * count, 1000)
        while len(out) < count and budget > 0:
            budget -= 1
            triple = tuple(rng.randrange(modulus) for _ in range(3))
            if all(c % p == 0 for c in triple):
                continue  # not primitive mod p
            lifted = tuple(c - modulus if c > modulus // 2 else c for c in triple)
            if any(c == 0 for c in lifted):
                continue
            base = BasePoint.of(*lifted)
            if not base.xyz_nonzero:
                continue
            if is_isotropic_local(self.fiber_form(base), v):
                out.append(base)
        return SampledBases(tuple(out), count, len(out) < count)
