"""Sparse multivariate polynomials over Q with exact arithmetic.

Monomial order is graded lexicographic throughout (total degree first,
then lexicographic with earlier variables larger).  The module also
carries the text parser used by the CLI and the square-root / squarefree
machinery needed for residue computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Union

from .arith import Rational, _as_fraction
from .errors import DomainError, PolyParseError

Exponent = tuple[int, ...]


def rational_sqrt(f: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None if it is not a square."""
    if f < 0:
        return None
    rn, rd = isqrt(f.numerator), isqrt(f.denominator)
    if rn * rn != f.numerator or rd * rd != f.denominator:
        return None
    return Fraction(rn, rd)


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MPoly:
    """Immutable sparse polynomial over Q in a fixed ordered variable tuple."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: tuple[str, ...], terms: dict[Exponent, Fraction]):
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "terms",
                           {e: c for e, c in terms.items() if c != 0})

    def __setattr__(self, *_):
        raise AttributeError("MPoly is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> "MPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, value: Rational, variables: tuple[str, ...]) -> "MPoly":
        c = _as_fraction(value)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: tuple[str, ...]) -> "MPoly":
        if name not in variables:
            raise DomainError(f"unknown variable {name!r}")
        e = tuple(int(v == name) for v in variables)
        return cls(variables, {e: Fraction(1)})

    def _new(self, terms: dict[Exponent, Fraction]) -> "MPoly":
        return MPoly(self.variables, terms)

    # predicates and views -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise DomainError("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading (exponent, coefficient) under grlex; zero poly is an error."""
        if self.is_zero:
            raise DomainError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def effective_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise DomainError("mixed variable sets")
            return other
        return MPoly.constant(other, self.variables)

    def __add__(self, other) -> "MPoly":
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = _as_fraction(other)
            return self._new({e: co * c for e, co in self.terms.items()})
        o = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        c = _as_fraction(other)
        if c == 0:
            raise DomainError("division by zero")
        return self * (1 / c)

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise DomainError("negative power of a polynomial")
        out = MPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # substitution and friends ----------------------------------------------

    def substitute(self, mapping: dict[str, Union["MPoly", Rational]]) -> "MPoly":
        """Replace variables by polynomials (same variable tuple) or constants."""
        values: list[MPoly] = []
        for v in self.variables:
            if v in mapping:
                m = mapping[v]
                values.append(m if isinstance(m, MPoly) else
                              MPoly.constant(m, self.variables))
            else:
                values.append(MPoly.var(v, self.variables))
        out = MPoly.zero(self.variables)
        for e, c in self.terms.items():
            term = MPoly.constant(c, self.variables)
            for val, k in zip(values, e):
                if k:
                    term = term * val ** k
            out = out + term
        return out

    def drop_variable(self, name: str) -> "MPoly":
        """Forget a variable the polynomial no longer involves."""
        i = self.variables.index(name)
        if self.degree_in(name) > 0:
            raise DomainError(f"polynomial still involves {name!r}")
        new_vars = self.variables[:i] + self.variables[i + 1:]
        return MPoly(new_vars, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def dehomogenize(self, name: str) -> "MPoly":
        """Set one variable to 1 and remove it from the variable tuple."""
        return self.substitute({name: 1}).drop_variable(name)

    def rename_variables(self, new_vars: tuple[str, ...]) -> "MPoly":
        if len(new_vars) != len(self.variables):
            raise DomainError("variable count mismatch")
        return MPoly(new_vars, dict(self.terms))

    def derivative(self, name: str) -> "MPoly":
        i = self.variables.index(name)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = out.get(ne, Fraction(0)) + c * e[i]
        return self._new(out)

    # division --------------------------------------------------------------

    def divide_exact(self, g: "MPoly") -> Optional["MPoly"]:
        """Quotient self/g when the division is exact, else None."""
        g = self._coerce(g)
        if g.is_zero:
            raise DomainError("division by the zero polynomial")
        if self.is_zero:
            return self
        ge, gc = g.leading()
        h = self
        q: dict[Exponent, Fraction] = {}
        while not h.is_zero:
            he, hc = h.leading()
            te = tuple(a - b for a, b in zip(he, ge))
            if any(k < 0 for k in te):
                return None
            tc = hc / gc
            q[te] = q.get(te, Fraction(0)) + tc
            h = h - g * MPoly(self.variables, {te: tc})
        return self._new(q)

    def multiplicity_of(self, g: "MPoly") -> tuple[int, "MPoly"]:
        """Largest k with g^k dividing self, plus the cofactor; zero input errors."""
        if self.is_zero:
            raise DomainError("multiplicity in the zero polynomial")
        k = 0
        h = self
        while True:
            nxt = h.divide_exact(g)
            if nxt is None:
                return k, h
            k += 1
            h = nxt

    # univariate bridge -------------------------------------------------------

    def univariate_coefficients(self, name: str) -> list[Fraction]:
        """Dense ascending coefficient list; other variables must not occur."""
        i = self.variables.index(name)
        for e in self.terms:
            if any(k and j != i for j, k in enumerate(e)):
                raise DomainError("polynomial is not univariate in " + name)
        out = [Fraction(0)] * (self.degree_in(name) + 1 if not self.is_zero else 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs: Iterable[Rational], name: str,
                        variables: tuple[str, ...]) -> "MPoly":
        i = variables.index(name)
        terms = {}
        for k, c in enumerate(coeffs):
            f = _as_fraction(c)
            if f:
                e = [0] * len(variables)
                e[i] = k
                terms[tuple(e)] = f
        return cls(variables, terms)

    # printing ----------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, k in zip(self.variables, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
        return " ".join([head] + parts[1:])

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"


# univariate helpers on dense ascending coefficient lists ----------------------


def _u_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _u_degree(c: list[Fraction]) -> int:
    return len(c) - 1


def _u_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _u_trim(out)


def _u_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not b:
        raise DomainError("univariate division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and _u_trim(r):
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] -= f * y
        _u_trim(r)
    return _u_trim(q), r


def _u_monic(c: list[Fraction]) -> list[Fraction]:
    if not c:
        return c
    lc = c[-1]
    return [x / lc for x in c]


def _u_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while _u_trim(b):
        a, b = b, _u_divmod(a, b)[1]
    return _u_monic(_u_trim(a))


def _u_derivative(c: list[Fraction]) -> list[Fraction]:
    return _u_trim([c[i] * i for i in range(1, len(c))])


def _u_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _u_trim([(a[k] if k < len(a) else Fraction(0))
                    - (b[k] if k < len(b) else Fraction(0)) for k in range(n)])


def yun_squarefree(c: list[Fraction]) -> tuple[Fraction, list[tuple[list[Fraction], int]]]:
    """Yun's squarefree decomposition over Q.

    Returns (lc, [(a_i, i), ...]) with each a_i monic squarefree, the a_i
    pairwise coprime, and the input equal to lc * prod a_i^i.  Constants
    decompose as (value, []).  Needs no factorisation, only gcds.
    """
    c = _u_trim(list(c))
    if not c:
        raise DomainError("squarefree decomposition of zero")
    lc = c[-1]
    f = _u_monic(c)
    if _u_degree(f) == 0:
        return lc, []
    fp = _u_derivative(f)
    g = _u_gcd(f, fp)
    if _u_degree(g) == 0:
        return lc, [(f, 1)]
    out = []
    cpart = _u_divmod(f, g)[0]
    dpart = _u_sub(_u_divmod(fp, g)[0], _u_derivative(cpart))
    i = 1
    while _u_degree(cpart) > 0:
        a = _u_gcd(cpart, dpart)
        if _u_degree(a) > 0:
            out.append((a, i))
        cpart = _u_divmod(cpart, a)[0]
        dpart = _u_sub(_u_divmod(dpart, a)[0], _u_derivative(cpart))
        i += 1
    return lc, out


# square roots -----------------------------------------------------------------


def _binary_quadratic_sqrt(p: MPoly) -> Optional[MPoly]:
    """Closed form for homogeneous quadratics in two effective variables:
    a square exactly when the leading coefficient is a rational square and
    the discriminant vanishes."""
    eff = p.effective_variables()
    u, v = eff[0], eff[1]
    iu, iv = p.variables.index(u), p.variables.index(v)

    def coeff(ku: int, kv: int) -> Fraction:
        for e, c in p.terms.items():
            if e[iu] == ku and e[iv] == kv:
                return c
        return Fraction(0)

    a, b, c = coeff(2, 0), coeff(1, 1), coeff(0, 2)
    if b * b - 4 * a * c != 0:
        return None
    ra = rational_sqrt(a)
    if ra is None:
        return None
    if ra == 0:
        rc = rational_sqrt(c)
        if rc is None or b != 0:
            return None
        root = rc * MPoly.var(v, p.variables)
    else:
        root = ra * MPoly.var(u, p.variables) + (b / (2 * ra)) * MPoly.var(v, p.variables)
    return root if root * root == p else None


def polynomial_square_root(p: MPoly) -> Optional[MPoly]:
    """g with g^2 = p exactly, or None.  The zero polynomial is 0^2.

    Homogeneous binary quadratics use the discriminant criterion; the
    general case recurses on grlex leading terms.  The result, when any,
    is normalised to a positive leading coefficient and verified by
    squaring before being returned, so a wrong answer is impossible.
    """
    if p.is_zero:
        return p
    if p.total_degree() & 1:
        return None
    eff = p.effective_variables()
    if p.total_degree() == 2 and len(eff) == 2 and p.is_homogeneous():
        return _binary_quadratic_sqrt(p)
    e, c = p.leading()
    if any(k & 1 for k in e):
        return None
    rc = rational_sqrt(c)
    if rc is None:
        return None
    half = tuple(k >> 1 for k in e)
    g = MPoly(p.variables, {half: rc})
    lead2 = 2 * rc
    prev_key = None
    r = p - g * g
    while not r.is_zero:
        re, rcoef = r.leading()
        te = tuple(a - b for a, b in zip(re, half))
        if any(k < 0 for k in te):
            return None
        key = _grlex_key(te)
        if key >= _grlex_key(half) or (prev_key is not None and key >= prev_key):
            return None
        prev_key = key
        t = MPoly(p.variables, {te: rcoef / lead2})
        g = g + t
        r = p - g * g
    return g


# parser -------------------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise PolyParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]


def parse_polynomial(text: str, variables: tuple[str, ...] = ("x", "y", "z")) -> MPoly:
    """Parse polynomial text: variables, integer or rational coefficients,
    ^ for powers, * optional (juxtaposition multiplies), / only by nonzero
    constants.  Errors carry the character position."""
    toks = _Tokens(text)

    def parse_atom() -> MPoly:
        ch = toks.peek()
        if ch == "(":
            toks.pos += 1
            inner = parse_expr()
            if toks.peek() != ")":
                raise PolyParseError("expected ')'", toks.pos)
            toks.pos += 1
            return inner
        if ch.isdigit():
            return MPoly.constant(toks.take_int(), variables)
        if ch.isalpha() or ch == "_":
            start = toks.pos
            name = toks.take_name()
            if name not in variables:
                raise PolyParseError(f"unknown variable {name!r}", start)
            return MPoly.var(name, variables)
        raise PolyParseError("expected a number, variable or '('", toks.pos)

    def parse_factor() -> MPoly:
        base = parse_atom()
        if toks.peek() == "^":
            toks.pos += 1
            if not toks.peek().isdigit():
                raise PolyParseError("expected an integer exponent", toks.pos)
            base = base ** toks.take_int()
        return base

    def parse_term() -> MPoly:
        out = parse_factor()
        while True:
            ch = toks.peek()
            if ch == "*":
                toks.pos += 1
                out = out * parse_factor()
            elif ch == "/":
                at = toks.pos
                toks.pos += 1
                divisor = parse_factor()
                if not divisor.is_constant or divisor.constant_value() == 0:
                    raise PolyParseError("division only by a nonzero constant", at)
                out = out * (1 / divisor.constant_value())
            elif ch == "(" or ch.isdigit() or ch.isalpha() or ch == "_":
                out = out * parse_factor()
            else:
                return out

    def parse_expr() -> MPoly:
        ch = toks.peek()
        negate = False
        if ch in "+-":
            toks.pos += 1
            negate = ch == "-"
        out = parse_term()
        if negate:
            out = -out
        while True:
            ch = toks.peek()
            if ch == "+":
                toks.pos += 1
                out = out + parse_term()
            elif ch == "-":
                toks.pos += 1
                out = out - parse_term()
            else:
                return out

    result = parse_expr()
    toks.skip_ws()
    if toks.pos != len(toks.text):
        raise PolyParseError("unexpected trailing input", toks.pos)
    return result
