"""Rational functions over Q and F_p in a unique canonical form.

Over Q a map is stored as a pair of integer coefficient tuples with joint
content 1 and a denominator whose leading coefficient is positive; over F_p
the denominator is monic.  Numerator and denominator are always coprime, so
structural equality is equality of maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from . import poly
from .errors import FieldMismatch, NotMoebius, ZeroDenominator
from .fields import QQ, Field


class _Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


@dataclass(frozen=True)
class RatFun:
    """A reduced rational function num/den; build with :func:`normalize`."""

    num: tuple
    den: tuple
    field: Field = QQ

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1 if self.num else len(self.den) - 1

    @property
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def coefficients(self) -> list:
        """Field coefficients of a polynomial map, lowest degree first."""
        if not self.is_polynomial:
            raise ValueError("not a polynomial")
        K = self.field
        inv = K.inv(K(self.den[0]))
        return [K.mul(K(c), inv) for c in self.num]

    def __call__(self, z):
        return evaluate(self, z)

    def __matmul__(self, other: "RatFun") -> "RatFun":
        return compose(self, other)

    def __str__(self):
        return to_expr(self)

    def __repr__(self):
        return f"RatFun({to_expr(self)!r}, field={self.field})"


def _to_int_pair(num, den):
    m = poly.lcm_denominators(list(num) + list(den))
    num = [Fraction(c) * m for c in num]
    den = [Fraction(c) * m for c in den]
    return (poly.strip(int(c) for c in num), poly.strip(int(c) for c in den))


def _finish(num, den, field: Field) -> RatFun:
    """Scale a coprime pair into canonical form (no gcd computation)."""
    if not den:
        raise ZeroDenominator("denominator is zero")
    p = field.p
    if p:
        inv = pow(den[-1], -1, p)
        return RatFun(poly.scale(num, inv, p), poly.scale(den, inv, p), field)
    g = igcd(poly.content(num), poly.content(den))
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        den = tuple(c // g for c in den)
    return RatFun(tuple(num), tuple(den), field)


def normalize(num, den=(1,), field: Field = QQ) -> RatFun:
    """Canonical representative of num/den; coefficients may be any field values."""
    p = field.p
    if p:
        num = poly.strip(field(c) for c in num)
        den = poly.strip(field(c) for c in den)
    else:
        num, den = _to_int_pair(num, den)
    if not den:
        raise ZeroDenominator("denominator is zero")
    if not num:
        return _finish((), (1,), field)
    g = poly.gcd(num, den, p)
    if len(g) > 1:
        num = poly.exact_div(num, g, p)
        den = poly.exact_div(den, g, p)
    return _finish(num, den, field)


def x(field: Field = QQ) -> RatFun:
    return RatFun((0, 1), (1,), field)


def constant(c, field: Field = QQ) -> RatFun:
    return normalize([c], [1], field)


def polynomial(coeffs, field: Field = QQ) -> RatFun:
    return normalize(coeffs, [1], field)


def _check_same_field(f: RatFun, g: RatFun):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")


def compose(f: RatFun, g: RatFun) -> RatFun:
    """f o g, i.e. x -> f(g(x))."""
    _check_same_field(f, g)
    if f.is_constant:
        return f
    if g.is_constant:
        value = evaluate(f, evaluate(g, INF))
        if value is INF:
            raise ZeroDenominator("composition is the constant map at infinity")
        return constant(value, f.field)
    p = f.field.p
    d = f.degree
    num = poly.substitute_homogeneous(f.num, d, g.num, g.den, p)
    den = poly.substitute_homogeneous(f.den, d, g.num, g.den, p)
    # coprime homogeneous forms stay coprime under substitution
    result = _finish(num, den, f.field)
    assert result.degree == d * g.degree
    return result


def iterate(f: RatFun, n: int) -> RatFun:
    result = x(f.field)
    base = f
    while n:
        if n & 1:
            result = compose(base, result)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def evaluate(f: RatFun, z):
    """Value of f as a morphism of P^1 at an exact point (or INF)."""
    K = f.field
    if z is INF:
        dn, dd = len(f.num) - 1, len(f.den) - 1
        if dn > dd:
            return INF
        if dn < dd:
            return K.zero
        return K.div(K(f.num[-1]), K(f.den[-1]))
    z = K(z)
    if K.p:
        n = poly.evaluate(f.num, z, K.p)
        d = poly.evaluate(f.den, z, K.p)
    else:
        # clear the denominator of z to stay in integers
        a, b = z.numerator, z.denominator
        deg = f.degree
        n = poly.homogeneous_eval(f.num, a, b, deg)
        d = poly.homogeneous_eval(f.den, a, b, deg)
    if K.is_zero(d):
        return INF
    return K.div(K(n), K(d))


def derivative(f: RatFun) -> RatFun:
    p = f.field.p
    num = poly.sub(poly.mul(poly.derivative(f.num, p), f.den, p),
                   poly.mul(f.num, poly.derivative(f.den, p), p), p)
    den = poly.mul(f.den, f.den, p)
    return normalize(num, den, f.field)


def moebius(a, b, c, d, field: Field = QQ) -> RatFun:
    """(a x + b) / (c x + d)."""
    sigma = normalize([b, a], [d, c], field)
    if sigma.degree != 1:
        raise NotMoebius("ad - bc must be nonzero")
    return sigma


def moebius_inverse(sigma: RatFun) -> RatFun:
    if sigma.degree != 1:
        raise NotMoebius(f"degree {sigma.degree} map is not a Moebius transformation")
    K = sigma.field
    b, a = (list(sigma.num) + [0, 0])[:2]
    d, c = (list(sigma.den) + [0, 0])[:2]
    return normalize([K.neg(K(b)), K(d)], [K(a), K.neg(K(c))], K)


def conjugate(f: RatFun, sigma: RatFun) -> RatFun:
    """sigma^-1 o f o sigma."""
    _check_same_field(f, sigma)
    return compose(moebius_inverse(sigma), compose(f, sigma))


def chebyshev(d: int, field: Field = QQ) -> RatFun:
    """T_d normalised by T_d(z + 1/z) = z^d + z^-d, so T_2 = x^2 - 2."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    prev, cur = (2,), (0, 1)
    for _ in range(d - 1):
        prev, cur = cur, poly.sub(poly.shift(cur, 1), prev)
    return normalize(cur, [1], field)


# -- field arithmetic of rational functions -----------------------------------


def _pair(f: RatFun):
    return f.num, f.den, f.field.p


def add(f: RatFun, g: RatFun) -> RatFun:
    _check_same_field(f, g)
    a, b, p = _pair(f)
    c, d, _ = _pair(g)
    return normalize(poly.add(poly.mul(a, d, p), poly.mul(c, b, p), p), poly.mul(b, d, p), f.field)


def neg(f: RatFun) -> RatFun:
    return RatFun(poly.neg(f.num, f.field.p), f.den, f.field)


def sub(f: RatFun, g: RatFun) -> RatFun:
    return add(f, neg(g))


def mul(f: RatFun, g: RatFun) -> RatFun:
    _check_same_field(f, g)
    a, b, p = _pair(f)
    c, d, _ = _pair(g)
    return normalize(poly.mul(a, c, p), poly.mul(b, d, p), f.field)


def div(f: RatFun, g: RatFun) -> RatFun:
    _check_same_field(f, g)
    if not g.num:
        raise ZeroDenominator("division by the zero function")
    a, b, p = _pair(f)
    c, d, _ = _pair(g)
    return normalize(poly.mul(a, d, p), poly.mul(b, c, p), f.field)


def power(f: RatFun, n: int) -> RatFun:
    """f**n (pointwise product, not iteration)."""
    if n < 0:
        raise ValueError("negative exponent")
    p = f.field.p
    return _finish(poly.power(f.num, n, p), poly.power(f.den, n, p), f.field)


# -- printing ----------------------------------------------------------------


def poly_expr(coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def to_expr(f: RatFun) -> str:
    """An expression string that parses back to exactly ``f``."""
    num = poly_expr(f.num)
    if f.den == (1,):
        return num
    den = poly_expr(f.den)
    if sum(1 for c in f.num if c) > 1:
        num = f"({num})"
    if sum(1 for c in f.den if c) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


def point_str(z) -> str:
    """Exact text form of a point: 'p/q', an integer, or 'inf'."""
    if z is INF:
        return "inf"
    return str(z)


def parse_point(text: str, field: Field = QQ):
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return INF
    return field(Fraction(text))
