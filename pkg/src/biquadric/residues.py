"""Ternary forms on P^2, the square-restriction conditions, and residues
of quaternion symbols along divisors.

The residue of a symbol (a,b) along a codimension-one point with
valuation v is (-1)^{v(a)v(b)} a^{v(b)} / b^{v(a)} read in the residue
field modulo squares.  Residues are computed along linear divisors only,
where the residue field is Q(t) and square classes reduce exactly via
squarefree decomposition; the paper-level computations never need more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import Rational, SquareClass, _as_fraction, square_class
from .errors import DomainError, FConditionError, UnsupportedDivisorError
from .polynomials import MPoly, parse_polynomial, polynomial_square_root, yun_squarefree

PROJECTIVE_VARS = ("x", "y", "z")

# chart name -> affine coordinates (the named variable is set to 1)
CHART_VARS = {"z": ("x", "y"), "y": ("x", "z"), "x": ("y", "z")}


@dataclass(frozen=True)
class TernaryForm:
    """Symmetric Gram data of F = xx x^2 + yy y^2 + zz z^2 + 2 xy xy + 2 xz xz + 2 yz yz."""

    xx: Fraction
    yy: Fraction
    zz: Fraction
    xy: Fraction
    xz: Fraction
    yz: Fraction

    @classmethod
    def of(cls, xx: Rational, yy: Rational, zz: Rational,
           xy: Rational, xz: Rational, yz: Rational) -> "TernaryForm":
        return cls(*(_as_fraction(v) for v in (xx, yy, zz, xy, xz, yz)))

    @classmethod
    def from_polynomial(cls, p: MPoly) -> "TernaryForm":
        if p.variables != PROJECTIVE_VARS:
            p = p.rename_variables(PROJECTIVE_VARS) if len(p.variables) == 3 else p
        if p.is_zero or p.total_degree() != 2 or not p.is_homogeneous():
            raise DomainError("a ternary form must be a nonzero homogeneous quadratic")

        def coeff(e):
            return p.terms.get(e, Fraction(0))

        return cls(coeff((2, 0, 0)), coeff((0, 2, 0)), coeff((0, 0, 2)),
                   coeff((1, 1, 0)) / 2, coeff((1, 0, 1)) / 2, coeff((0, 1, 1)) / 2)

    @classmethod
    def from_text(cls, text: str) -> "TernaryForm":
        return cls.from_polynomial(parse_polynomial(text, PROJECTIVE_VARS))

    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return ((self.xx, self.xy, self.xz),
                (self.xy, self.yy, self.yz),
                (self.xz, self.yz, self.zz))

    def polynomial(self) -> MPoly:
        x, y, z = (MPoly.var(v, PROJECTIVE_VARS) for v in PROJECTIVE_VARS)
        return (self.xx * x * x + self.yy * y * y + self.zz * z * z
                + 2 * self.xy * x * y + 2 * self.xz * x * z + 2 * self.yz * y * z)

    def evaluate(self, x: Rational, y: Rational, z: Rational) -> Fraction:
        x, y, z = _as_fraction(x), _as_fraction(y), _as_fraction(z)
        return (self.xx * x * x + self.yy * y * y + self.zz * z * z
                + 2 * self.xy * x * y + 2 * self.xz * x * z + 2 * self.yz * y * z)

    def gradient(self, x: Rational, y: Rational, z: Rational) -> tuple[Fraction, ...]:
        x, y, z = _as_fraction(x), _as_fraction(y), _as_fraction(z)
        return (2 * (self.xx * x + self.xy * y + self.xz * z),
                2 * (self.xy * x + self.yy * y + self.yz * z),
                2 * (self.xz * x + self.yz * y + self.zz * z))

    def det(self) -> Fraction:
        (a, d, e), (_, b, g), (_, _, c) = self.gram()
        return a * (b * c - g * g) - d * (d * c - g * e) + e * (d * g - b * e)

    @property
    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def __str__(self) -> str:
        return str(self.polynomial())


def axis_tangent_form() -> TernaryForm:
    """x^2 + y^2 + z^2 - 2(xy + xz + yz): the conic tangent to all three
    coordinate lines, with restrictions (y-z)^2, (x-z)^2, (x-y)^2."""
    return TernaryForm.of(1, 1, 1, -1, -1, -1)


def restrict_to_axis(form: TernaryForm, axis: str) -> MPoly:
    """Substitute 0 for the named variable; a binary quadratic in the others."""
    if axis not in PROJECTIVE_VARS:
        raise DomainError(f"axis must be one of x, y, z, got {axis!r}")
    return form.polynomial().substitute({axis: 0}).drop_variable(axis)


@dataclass(frozen=True)
class FConditionReport:
    """Outcome of the square-restriction conditions on a ternary form."""

    nondegenerate: bool
    restrictions_square: dict[str, bool]
    restriction_roots: dict[str, Optional[MPoly]]
    f_not_square: bool
    f_root: Optional[MPoly]
    passes: bool


def check_form_conditions(form: TernaryForm) -> FConditionReport:
    """Nondegeneracy, squareness of the three axis restrictions, and
    non-squareness of the form itself; passes is the conjunction.

    Squareness of a quadratic form in k(x,y,z) reduces to squareness in
    the polynomial ring, so exact square roots decide everything.
    """
    roots = {}
    squares = {}
    for axis in PROJECTIVE_VARS:
        r = polynomial_square_root(restrict_to_axis(form, axis))
        roots[axis] = r
        squares[axis] = r is not None
    f_root = polynomial_square_root(form.polynomial())
    nondeg = form.is_nondegenerate
    passes = nondeg and all(squares.values()) and f_root is None
    return FConditionReport(nondeg, squares, roots, f_root is None, f_root, passes)


@dataclass(frozen=True)
class RatFunc:
    """Quotient of polynomials, normalised so the denominator is monic
    under grlex; the denominator is never zero."""

    num: MPoly
    den: MPoly

    @classmethod
    def of(cls, num: MPoly, den: Optional[MPoly] = None) -> "RatFunc":
        if den is None:
            den = MPoly.constant(1, num.variables)
        if den.is_zero:
            raise DomainError("rational function with zero denominator")
        _, lc = den.leading()
        return cls(num / lc, den / lc)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.of(self.num * other.num, self.den * other.den)

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class PrimeDivisor:
    """Codimension-one point of P^2 carried in an affine chart.

    chart names the coordinate set to 1; generator is an irreducible
    polynomial in the two chart variables.  The built-in divisors are the
    coordinate axes, whose generators are single variables.
    """

    chart: str
    generator: MPoly

    def __post_init__(self):
        if self.chart not in CHART_VARS:
            raise DomainError(f"chart must be one of x, y, z, got {self.chart!r}")
        if self.generator.variables != CHART_VARS[self.chart]:
            raise DomainError("generator must live in the chart coordinates")
        if self.generator.is_zero or self.generator.is_constant:
            raise DomainError("generator must be nonconstant")

    @classmethod
    def coordinate_axis(cls, name: str) -> "PrimeDivisor":
        """The divisor {name = 0}, in chart z for the x and y axes and
        chart y for the z axis."""
        if name not in PROJECTIVE_VARS:
            raise DomainError(f"axis must be one of x, y, z, got {name!r}")
        chart = "z" if name in ("x", "y") else "y"
        return cls(chart, MPoly.var(name, CHART_VARS[chart]))

    @property
    def is_linear(self) -> bool:
        return self.generator.total_degree() == 1

    def residue_substitution(self) -> tuple[str, dict[str, Union[MPoly, Fraction]]]:
        """(parameter variable, substitution solving generator = 0).

        Defined for linear generators: solve for one chart variable, the
        other becomes the rational parameter t of the residue field Q(t).
        """
        if not self.is_linear:
            raise UnsupportedDivisorError("residue field computed only along lines")
        s1, s2 = CHART_VARS[self.chart]
        g = self.generator
        a = g.terms.get((1, 0), Fraction(0))
        b = g.terms.get((0, 1), Fraction(0))
        c = g.terms.get((0, 0), Fraction(0))
        if a != 0:
            expr = (MPoly.constant(-c, g.variables) - b * MPoly.var(s2, g.variables)) / a
            return s2, {s1: expr}
        return s1, {s2: Fraction(-c) / b}

    def __str__(self) -> str:
        return f"{{{self.generator} = 0}} (chart {self.chart} = 1)"


@dataclass(frozen=True)
class QuaternionSymbolFn:
    """A quaternion symbol (a, b) with entries rational functions on P^2,
    stored as degree-zero homogeneous quotients in (x, y, z)."""

    a: RatFunc
    b: RatFunc

    def __post_init__(self):
        for f in (self.a, self.b):
            if f.is_zero:
                raise DomainError("symbol entries must be nonzero")
            if f.num.variables != PROJECTIVE_VARS:
                raise DomainError("symbol entries live on P^2 in x, y, z")
            if not (f.num.is_homogeneous() and f.den.is_homogeneous()
                    and f.num.total_degree() == f.den.total_degree()):
                raise DomainError("symbol entries must be degree-zero homogeneous quotients")

    @classmethod
    def from_pairs(cls, a_num: MPoly, a_den: MPoly,
                   b_num: MPoly, b_den: MPoly) -> "QuaternionSymbolFn":
        return cls(RatFunc.of(a_num, a_den), RatFunc.of(b_num, b_den))

    def entry_in_chart(self, which: str, chart: str) -> RatFunc:
        f = self.a if which == "a" else self.b
        return RatFunc.of(f.num.dehomogenize(chart).rename_variables(CHART_VARS[chart]),
                          f.den.dehomogenize(chart).rename_variables(CHART_VARS[chart]))

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


def standard_symbol() -> QuaternionSymbolFn:
    """The quaternion symbol (-x/z, -y/z) whose class generates the
    nonconstant part of the fourfold's Brauer group."""
    x, y, z = (MPoly.var(v, PROJECTIVE_VARS) for v in PROJECTIVE_VARS)
    return QuaternionSymbolFn.from_pairs(-x, z, -y, z)


@dataclass(frozen=True)
class ResidueClass:
    """An element of Q(t)*/(Q(t)*)^2: a rational square class times monic
    squarefree polynomial factors of odd multiplicity.

    variable is None for the trivial class along an unsupported residue
    field (where only triviality is ever asserted)."""

    variable: Optional[str]
    constant: SquareClass
    factors: tuple[MPoly, ...]

    @property
    def trivial(self) -> bool:
        return not self.factors and self.constant.is_trivial

    def odd_part(self) -> Optional[MPoly]:
        """Product of the factors, a monic squarefree representative."""
        if self.variable is None:
            return None
        out = MPoly.constant(1, (self.variable,))
        for f in self.factors:
            out = out * f
        return out

    def representative(self) -> Optional[MPoly]:
        if self.variable is None:
            return None
        return self.constant.d * self.odd_part()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueClass):
            return NotImplemented
        return (self.variable == other.variable
                and self.constant == other.constant
                and self.odd_part() == other.odd_part())

    def __hash__(self):
        return hash((self.variable, self.constant))

    def multiply(self, other: "ResidueClass") -> "ResidueClass":
        """Product in Q(t)*/(Q(t)*)^2 (both classes over the same t)."""
        if self.variable != other.variable:
            raise DomainError("cannot multiply residue classes over different parameters")
        if self.variable is None:
            return self
        return reduce_square_class_univariate(self.representative() * other.odd_part()
                                              * other.constant.d)

    def __str__(self) -> str:
        if self.trivial:
            return "trivial"
        rep = self.representative()
        return f"class of {rep}"


TRIVIAL_RESIDUE = ResidueClass(None, SquareClass(1), ())


def reduce_square_class_univariate(p: MPoly) -> ResidueClass:
    """Square class of a nonzero univariate polynomial in Q(t): squarefree
    decomposition keeps the odd-multiplicity components, the leading
    coefficient contributes its rational square class."""
    if p.is_zero:
        raise DomainError("square class of zero")
    var = p.variables[0]
    if len(p.variables) != 1:
        eff = p.effective_variables()
        if len(eff) > 1:
            raise DomainError("not univariate")
        var = eff[0] if eff else p.variables[0]
        p = MPoly.from_univariate(p.univariate_coefficients(var), var, (var,))
    lc, decomposition = yun_squarefree(p.univariate_coefficients(var))
    factors = tuple(MPoly.from_univariate(coeffs, var, (var,))
                    for coeffs, mult in decomposition if mult & 1)
    return ResidueClass(var, square_class(lc), factors)


def divisor_valuation(f: Union[RatFunc, MPoly], divisor: PrimeDivisor) -> int:
    """Multiplicity of the divisor's generator in the numerator minus the
    denominator, by exact repeated division.  f must be expressed in the
    divisor's chart and be nonzero."""
    if isinstance(f, MPoly):
        f = RatFunc.of(f)
    if f.num.variables != CHART_VARS[divisor.chart]:
        raise DomainError("function is not expressed in the divisor's chart")
    if f.is_zero:
        raise DomainError("valuation of the zero function")
    vn, _ = f.num.multiplicity_of(divisor.generator)
    vd, _ = f.den.multiplicity_of(divisor.generator)
    return vn - vd


def residue_of_symbol(symbol: QuaternionSymbolFn, divisor: PrimeDivisor) -> ResidueClass:
    """Residue of the symbol along the divisor, in Q(t)*/(Q(t)*)^2.

    With m = v(a), n = v(b) this is (-1)^{mn} a^n / b^m reduced to the
    residue field: the generator is divided out to valuation zero, the
    divisor equation substituted, and the square class extracted by
    squarefree decomposition.  Nonlinear divisors are supported only in
    the everywhere-unramified case m = n = 0, where the formula gives the
    trivial class outright.
    """
    a = symbol.entry_in_chart("a", divisor.chart)
    b = symbol.entry_in_chart("b", divisor.chart)
    gen = divisor.generator
    a_num_mult, a_num_cof = a.num.multiplicity_of(gen)
    a_den_mult, a_den_cof = a.den.multiplicity_of(gen)
    b_num_mult, b_num_cof = b.num.multiplicity_of(gen)
    b_den_mult, b_den_cof = b.den.multiplicity_of(gen)
    m = a_num_mult - a_den_mult
    n = b_num_mult - b_den_mult
    if m == 0 and n == 0 and not divisor.is_linear:
        return TRIVIAL_RESIDUE
    tvar, sub = divisor.residue_substitution()
    parts = MPoly.constant(-1 if (m * n) & 1 else 1, gen.variables)
    if n & 1:
        parts = parts * a_num_cof * a_den_cof
    if m & 1:
        parts = parts * b_num_cof * b_den_cof
    reduced = parts.substitute(sub)
    solved = next(v for v in gen.variables if v != tvar)
    univ = reduced.drop_variable(solved)
    return reduce_square_class_univariate(
        MPoly.from_univariate(univ.univariate_coefficients(tvar), tvar, (tvar,)))


# axis -> (remaining coordinates in order, chart used for dehomogenising)
_AXIS_DATA = {"x": (("y", "z"), "z"), "y": (("x", "z"), "z"), "z": (("x", "y"), "y")}


def discriminant_residue_class(form: TernaryForm, axis: str) -> ResidueClass:
    """Square class, over the residue field of a coordinate axis, of minus
    the product of the two remaining coordinates times the restricted form.

    Requires the square-restriction conditions: the restriction is then a
    square and drops out, leaving the class of -(product of remaining
    coordinates), which is exactly the residue of the standard symbol.
    """
    if axis not in PROJECTIVE_VARS:
        raise DomainError(f"axis must be one of x, y, z, got {axis!r}")
    report = check_form_conditions(form)
    if not report.passes:
        raise FConditionError(
            "discriminant residue requires the square-restriction conditions")
    (t_coord, other_coord), chart = _AXIS_DATA[axis]
    restriction = restrict_to_axis(form, axis)  # in the two remaining coordinates
    dehom = restriction.dehomogenize(chart)
    tvar = t_coord if t_coord != chart else other_coord
    univ = MPoly.from_univariate(dehom.univariate_coefficients(tvar), tvar, (tvar,))
    t = MPoly.var(tvar, (tvar,))
    return reduce_square_class_univariate(-t * univ)
