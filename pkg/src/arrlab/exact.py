"""Exact arithmetic: rationals, quadratic fields Q(sqrt d), univariate
polynomials and rational functions over them.

Rationals are plain :class:`fractions.Fraction` values.  A :class:`QuadExt`
is ``a + b*sqrt(d)`` with rational ``a, b`` and a squarefree integer ``d``;
``d == 1`` is the rational field and always carries ``b == 0``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction


class MixedField(ValueError):
    """Operands live in different quadratic fields."""


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtEvaluationPoint(ZeroDivisionError):
    pass


class UnsupportedDegree(ValueError):
    pass


@lru_cache(maxsize=None)
def is_squarefree(d: int) -> bool:
    if d == 0:
        return False
    m = abs(d)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


def squarefree_part(q: Fraction | int) -> int:
    """Squarefree integer D with sqrt(q) in Q(sqrt D); 0 for q == 0."""
    q = Fraction(q)
    if q == 0:
        return 0
    # sqrt(p/r) = sqrt(p*r)/r
    m = q.numerator * q.denominator
    sign = -1 if m < 0 else 1
    m = abs(m)
    from sympy import factorint

    out = 1
    for p, e in factorint(m).items():
        if e % 2:
            out *= p
    return sign * out


Number = Union[int, Fraction, "QuadExt"]


_ZERO = Fraction(0)


class QuadExt:
    """Element a + b*sqrt(d) of Q(sqrt d).  Immutable, hashable."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, d: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        if not is_squarefree(d):
            raise ValueError(f"d={d} is not squarefree")
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def __reduce__(self):
        return (QuadExt, (self.a, self.b, self.d))

    @classmethod
    def coerce(cls, x: Number) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadExt")

    @classmethod
    def sqrt(cls, d: int) -> QuadExt:
        """sqrt(d) for squarefree d."""
        return cls(0, 1, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: QuadExt) -> int:
        if self.d == other.d or other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        raise MixedField(f"sqrt({self.d}) and sqrt({other.d}) in one expression")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QuadExt:
        """Unchecked constructor for results of field operations."""
        x = object.__new__(cls)
        if not b:
            b, d = _ZERO, 1
        object.__setattr__(x, "a", a)
        object.__setattr__(x, "b", b)
        object.__setattr__(x, "d", d)
        return x

    def __add__(self, other: Number) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)):
                return QuadExt._raw(self.a + other, self.b, self.d)
            return NotImplemented
        return QuadExt._raw(self.a + other.a, self.b + other.b, self._field(other))

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt._raw(-self.a, -self.b, self.d)

    def __sub__(self, other: Number) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)):
                return QuadExt._raw(self.a - other, self.b, self.d)
            return NotImplemented
        return QuadExt._raw(self.a - other.a, self.b - other.b, self._field(other))

    def __rsub__(self, other: Number) -> QuadExt:
        return QuadExt.coerce(other) - self

    def __mul__(self, other: Number) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)):
                return QuadExt._raw(self.a * other, self.b * other, self.d)
            return NotImplemented
        if other.d == 1:
            return QuadExt._raw(self.a * other.a, self.b * other.a, self.d)
        if self.d == 1:
            return QuadExt._raw(self.a * other.a, self.a * other.b, other.d)
        d = self._field(other)
        return QuadExt._raw(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QuadExt._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Number) -> QuadExt:
        try:
            other = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        self._field(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> QuadExt:
        return QuadExt.coerce(other) / self

    def __pow__(self, k: int) -> QuadExt:
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self.a, -self.b, self.d)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and self.d == other.d
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def __repr__(self) -> str:
        return f"QuadExt({self})"

    def __str__(self) -> str:
        return format_quad(self)


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_quad(x: QuadExt) -> str:
    """Render as ``a`` or ``a+b*sqrt(d)`` / ``a-b*sqrt(d)``."""
    if x.b == 0:
        return _fmt_rat(x.a)
    sign = "+" if x.b > 0 else "-"
    return f"{_fmt_rat(x.a)}{sign}{_fmt_rat(abs(x.b))}*sqrt({x.d})"


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})\s*)?"
    rf"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>[+-]?\d+)\s*\))?\s*$"
)


def parse_quad(text: str) -> QuadExt:
    """Inverse of :func:`format_quad`; also accepts ``sqrt(d)`` and ``-1/2*sqrt(5)``."""
    m = _QUAD_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ValueError(f"cannot parse {text!r} as a quadratic-field element")
    a = Fraction(m.group("a")) if m.group("a") is not None else Fraction(0)
    if m.group("d") is None:
        return QuadExt(a)
    if m.group("a") is not None and m.group("sign") is None:
        raise ValueError(f"missing sign before sqrt in {text!r}")
    b = Fraction(m.group("b")) if m.group("b") is not None else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    return QuadExt(a, b, int(m.group("d")))


def common_field(values: Iterable[QuadExt]) -> int:
    d = 1
    for v in values:
        if v.d != 1:
            if d != 1 and v.d != d:
                raise MixedField(f"sqrt({d}) and sqrt({v.d}) mixed")
            d = v.d
    return d


# ---------------------------------------------------------------------------
# univariate polynomials


class Poly:
    """Univariate polynomial with QuadExt coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [QuadExt.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> QuadExt:
        return self.coeffs[-1] if self.coeffs else QuadExt(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadExt)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = QuadExt(0)
        return Poly(
            (self.coeffs[i] if i < len(self.coeffs) else z)
            + (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other) -> Poly:
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [QuadExt(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        other = _as_poly(other)
        if not other:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.lead.inverse()
        quo = [QuadExt(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if not c:
                continue
            quo[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - c * b
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, x: Number) -> QuadExt:
        return self.evaluate(x)

    def evaluate(self, x: Number) -> QuadExt:
        x = QuadExt.coerce(x)
        acc = QuadExt(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(c * i for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.lead.inverse()
        return Poly(c * inv for c in self.coeffs)

    def conjugate(self) -> Poly:
        return Poly(c.conjugate() for c in self.coeffs)

    def normalize(self) -> Poly:
        return Poly(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x)


def format_poly(p: Poly, var: str = "t") -> str:
    if not p.coeffs:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = format_quad(c)
        if c.b != 0 and c.a != 0:
            cs = f"({cs})"
        if mono and c == 1:
            term = mono
        elif mono and c == -1:
            term = "-" + mono
        else:
            term = f"{cs}*{mono}" if mono else cs
        terms.append(term)
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while q:
        p, q = q, p % q
    return p.monic()


def poly_gcd_all(polys: Iterable[Poly]) -> Poly:
    g = Poly()
    for p in polys:
        g = poly_gcd(g, p)
        if g.degree == 0:
            break
    return g


def squarefree(p: Poly) -> Poly:
    """Monic squarefree part (characteristic zero)."""
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def primitive_integer(p: Poly) -> tuple[int, ...]:
    """Integer coefficients of a rational polynomial, content removed, positive lead."""
    if not p.is_rational():
        raise ValueError("not a rational polynomial")
    if not p.coeffs:
        return ()
    den = 1
    for c in p.coeffs:
        den = den * c.a.denominator // math.gcd(den, c.a.denominator)
    ints = [int(c.a * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def poly_roots_quadratic(p: Poly) -> tuple[list[tuple[QuadExt, int]], int]:
    """All roots of a rational polynomial of degree 1 or 2, with multiplicity.

    Returns ``(roots, d)``: the roots lie in Q(sqrt d), d the squarefree part
    of the discriminant (1 when the roots are rational).
    """
    if not p.is_rational():
        raise ValueError("coefficients must be rational")
    if p.degree == 1:
        c0, c1 = p.coeffs
        return [(-c0 / c1, 1)], 1
    if p.degree != 2:
        raise UnsupportedDegree(f"degree {p.degree} not in {{1, 2}}")
    c, b, a = (x.a for x in p.coeffs)
    disc = b * b - 4 * a * c
    if disc == 0:
        return [(QuadExt(-b / (2 * a)), 2)], 1
    d = squarefree_part(disc)
    # sqrt(disc) = s * sqrt(d) with s rational
    s2 = disc / d
    s = _rational_sqrt(s2)
    if d == 1:
        r1 = QuadExt((-b - s) / (2 * a))
        r2 = QuadExt((-b + s) / (2 * a))
    else:
        r1 = QuadExt(-b / (2 * a), -s / (2 * a), d)
        r2 = QuadExt(-b / (2 * a), s / (2 * a), d)
    roots = sorted([r1, r2], key=QuadExt.sort_key)
    return [(r, 1) for r in roots], d


def _rational_sqrt(q: Fraction) -> Fraction:
    n, m = q.numerator, q.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn != n or rm * rm != m:
        raise ValueError(f"{q} is not a rational square")
    return Fraction(rn, rm)


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of a nonzero rational polynomial, sorted."""
    ints = primitive_integer(p)
    if not ints:
        raise ValueError("zero polynomial has every root")
    roots: set[Fraction] = set()
    # strip x^k factor
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    ints = ints[k:]
    if len(ints) > 1:
        from sympy import divisors

        for num in divisors(abs(ints[0])):
            for den in divisors(abs(ints[-1])):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if _eval_int(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _eval_int(ints: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def split_roots(p: Poly) -> tuple[list[QuadExt], int, Poly]:
    """Roots of a squarefree rational polynomial reachable by the degree-<=2 solver.

    Rational roots are divided out; if what remains has degree <= 2 it is
    solved too.  Returns ``(roots, d, unresolved)`` where ``unresolved`` is the
    leftover factor (constant when everything was solved).
    """
    roots = [QuadExt(r) for r in rational_roots(p)]
    rest = p
    for r in roots:
        rest = rest // Poly([-r, 1])
    d = 1
    if rest.degree in (1, 2):
        extra, d = poly_roots_quadratic(rest)
        roots.extend(r for r, _ in extra)
        rest = Poly.const(1)
    roots.sort(key=QuadExt.sort_key)
    return roots, d, rest


# ---------------------------------------------------------------------------
# rational functions


class RatFun:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly.const(1) if den is None else _as_poly(den)
        if not den:
            raise DivisionByZero("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lead
        if lc != 1:
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    def __reduce__(self):
        return (RatFun, (self.num, self.den))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            other = RatFun(_as_poly(other))
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> RatFun:
        other = _as_ratfun(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> RatFun:
        return self + (-_as_ratfun(other))

    def __rsub__(self, other) -> RatFun:
        return _as_ratfun(other) - self

    def __mul__(self, other) -> RatFun:
        other = _as_ratfun(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFun:
        other = _as_ratfun(other)
        if not other.num:
            raise DivisionByZero("rational function division by zero")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RatFun:
        return _as_ratfun(other) / self

    def evaluate(self, x: Number) -> QuadExt:
        dv = self.den.evaluate(x)
        if not dv:
            raise PoleAtEvaluationPoint(f"pole at {x}")
        return self.num.evaluate(x) / dv

    __call__ = evaluate

    def normalize(self) -> RatFun:
        return RatFun(self.num, self.den)

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_ratfun(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    return RatFun(_as_poly(x))
