"""Truncated power series over exact fields, and Boettcher coordinates.

A :class:`SeriesTrunc` with precision N is known modulo X^(N+1).  Every
operation returns the largest precision its inputs justify, so a
coefficient that is printed is a coefficient that is known.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import divisors

from .errors import (CharacteristicDividesDegree, NonzeroConstantTerm, NotFixed, NotInvertible,
                     RootUnavailable)
from .fields import Field, KummerExtension, binomial_irreducible
from .ratfun import INF, RatFun, conjugate, evaluate, moebius

_UNBOUNDED = 10 ** 9


@dataclass(frozen=True)
class SeriesTrunc:
    coeffs: tuple
    prec: int
    ring: object

    def __post_init__(self):
        K = self.ring
        c = list(self.coeffs[: self.prec + 1])
        while c and K.is_zero(c[-1]):
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_list(cls, coeffs, prec: int, ring) -> "SeriesTrunc":
        return cls(tuple(ring(c) for c in coeffs), prec, ring)

    def __getitem__(self, i: int):
        if i > self.prec:
            raise IndexError(f"coefficient {i} is beyond the precision {self.prec}")
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; prec + 1 if none is known."""
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return self.prec + 1

    def positive_valuation(self):
        """Index of the first nonzero coefficient of positive degree, or None."""
        for i in range(1, len(self.coeffs)):
            if not self.ring.is_zero(self.coeffs[i]):
                return i
        return None

    def __str__(self):
        return series_str(self)

    def to_json(self) -> list:
        return [self.ring.fmt(self[i]) for i in range(self.prec + 1)]


def X(ring, prec: int = _UNBOUNDED) -> SeriesTrunc:
    return SeriesTrunc((ring.zero, ring.one), prec, ring)


def monomial(coeff, n: int, prec: int, ring) -> SeriesTrunc:
    return SeriesTrunc((ring.zero,) * n + (coeff,), prec, ring)


def _coeff_str(K, c):
    if isinstance(K, Field) and K.is_rational:
        return str(c)
    text = K.fmt(c)
    return f"({text})" if " " in text else text


def series_str(s: SeriesTrunc, var: str = "X") -> str:
    K = s.ring
    parts = []
    for i, c in enumerate(s.coeffs):
        if K.is_zero(c):
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        text = _coeff_str(K, c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if mono and text == "1":
            body = mono
        elif mono:
            body = f"{text}*{mono}"
        else:
            body = text
        parts.append(("-" if negative else "+", body))
    tail = f"O({var}^{s.prec + 1})"
    if not parts:
        return tail
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return f"{out} + {tail}"


def _check_ring(a: SeriesTrunc, b: SeriesTrunc):
    if a.ring != b.ring:
        raise ValueError(f"series over different rings: {a.ring} vs {b.ring}")


def ps_add(a: SeriesTrunc, b: SeriesTrunc) -> SeriesTrunc:
    _check_ring(a, b)
    K, prec = a.ring, min(a.prec, b.prec)
    return SeriesTrunc(tuple(K.add(a[i], b[i]) for i in range(min(prec, max(len(a.coeffs), len(b.coeffs))) + 1)),
                       prec, K)


def ps_neg(a: SeriesTrunc) -> SeriesTrunc:
    return SeriesTrunc(tuple(a.ring.neg(c) for c in a.coeffs), a.prec, a.ring)


def ps_sub(a: SeriesTrunc, b: SeriesTrunc) -> SeriesTrunc:
    return ps_add(a, ps_neg(b))


def ps_scale(a: SeriesTrunc, c) -> SeriesTrunc:
    return SeriesTrunc(tuple(a.ring.mul(c, u) for u in a.coeffs), a.prec, a.ring)


def _mul_trunc(a, b, top, K):
    out = [K.zero] * (top + 1)
    for i, u in enumerate(a[: top + 1]):
        if K.is_zero(u):
            continue
        for j, v in enumerate(b[: top + 1 - i]):
            out[i + j] = K.add(out[i + j], K.mul(u, v))
    return out


def ps_mul(a: SeriesTrunc, b: SeriesTrunc) -> SeriesTrunc:
    _check_ring(a, b)
    prec = min(a.prec + b.valuation(), b.prec + a.valuation())
    top = min(prec, len(a.coeffs) + len(b.coeffs))
    return SeriesTrunc(tuple(_mul_trunc(a.coeffs, b.coeffs, top, a.ring)), prec, a.ring)


def compose_precision(f: SeriesTrunc, g: SeriesTrunc) -> int:
    """Largest N for which f o g is determined modulo X^(N+1)."""
    v = g.valuation()
    bound = v * (f.prec + 1)
    u = f.positive_valuation()
    if u is not None:
        bound = min(bound, (u - 1) * v + g.prec + 1)
    return bound - 1


def ps_compose(f: SeriesTrunc, g: SeriesTrunc) -> SeriesTrunc:
    """f o g for g without constant term."""
    _check_ring(f, g)
    K = g.ring
    if g.coeffs and not K.is_zero(g.coeffs[0]):
        raise NonzeroConstantTerm("inner series must vanish at 0")
    prec = compose_precision(f, g)
    top = min(prec, (len(f.coeffs) - 1) * max(len(g.coeffs) - 1, 0)) if f.coeffs else 0
    # Horner in the truncated ring
    acc = [K.zero] * (top + 1)
    for c in reversed(f.coeffs):
        acc = _mul_trunc(acc, g.coeffs, top, K)
        acc[0] = K.add(acc[0], c)
    return SeriesTrunc(tuple(acc), prec, K)


def ps_inverse(L: SeriesTrunc) -> SeriesTrunc:
    """Compositional inverse M with M o L = L o M = X to the precision of L."""
    K = L.ring
    if L.coeffs and not K.is_zero(L.coeffs[0]):
        raise NotInvertible("series has a nonzero constant term")
    if L.prec < 1 or K.is_zero(L[1]):
        raise NotInvertible("linear coefficient is zero or unknown")
    N = L.prec
    inv1 = K.inv(L[1])
    m = [K.zero, inv1]
    for k in range(2, N + 1):
        M = SeriesTrunc(tuple(m), k, K)
        c = ps_compose(L, M)[k]
        m.append(K.neg(K.mul(c, inv1)))
    return SeriesTrunc(tuple(m), N, K)


def monomial_detect(s: SeriesTrunc):
    """(xi, n) when s has exactly one nonzero known coefficient xi at X^n."""
    nonzero = [(i, c) for i, c in enumerate(s.coeffs) if not s.ring.is_zero(c)]
    if len(nonzero) != 1:
        return None
    n, xi = nonzero[0]
    return xi, n


def lift(s: SeriesTrunc, ring) -> SeriesTrunc:
    """View a series over a base field inside an extension of it."""
    if s.ring == ring:
        return s
    return SeriesTrunc(tuple(ring(c) for c in s.coeffs), s.prec, ring)


# -- local expansions ----------------------------------------------------------


def series_of_ratfun(f: RatFun, N: int) -> SeriesTrunc:
    """Taylor expansion at 0 of a map with no pole at 0, to precision N."""
    K = f.field
    num = [K(c) for c in f.num]
    den = [K(c) for c in f.den]
    if K.is_zero(den[0]):
        raise ValueError("map has a pole at 0")
    inv0 = K.inv(den[0])
    out = []
    for k in range(N + 1):
        acc = num[k] if k < len(num) else K.zero
        for i in range(1, min(k, len(den) - 1) + 1):
            acc = K.sub(acc, K.mul(den[i], out[k - i]))
        out.append(K.mul(acc, inv0))
    return SeriesTrunc(tuple(out), N, K)


def local_map(f: RatFun, alpha) -> RatFun:
    """f in a coordinate where alpha sits at 0: translation, or 1/x for infinity."""
    K = f.field
    if alpha is INF:
        sigma = moebius(0, 1, 1, 0, K)
    else:
        sigma = moebius(1, alpha, 0, 1, K)
    return conjugate(f, sigma)


def local_expansion(f: RatFun, alpha, N: int) -> SeriesTrunc:
    if evaluate(f, alpha) != alpha:
        raise NotFixed(f"{alpha} is not fixed by {f}")
    return series_of_ratfun(local_map(f, alpha), N)


# -- Boettcher coordinates -------------------------------------------------------


def radical(K, k: int, a):
    """(ring, r) with r^k = a, adjoining one Kummer layer to K if needed."""
    r = K.nth_root(a, k) if isinstance(K, Field) else None
    if r is not None:
        return K, K(r)
    if not isinstance(K, Field):
        if K.pow(K.gen, k) == a:
            return K, K.gen
        raise RootUnavailable("nested radical extensions are not supported")
    # t^k = a is solved by any t' with t'^k' = b where b^(k/k') = a
    for kk in sorted(divisors(k))[1:]:
        b = K.nth_root(a, k // kk)
        if b is not None and binomial_irreducible(K, kk, b):
            E = KummerExtension(K, kk, K(b))
            return E, E.gen
    raise RootUnavailable(f"no single radical extension contains a {k}-th root of {K.fmt(a)}")


def boettcher(f: SeriesTrunc, N: int) -> SeriesTrunc:
    """L with L^-1 o f o L = X^m modulo X^(N+1), where m is the order of f at 0.

    The linear coefficient is a root of l^(m-1) = 1/a_m (positive rational
    when available, else the generator of one Kummer extension), and each
    later coefficient is fixed by one linear equation with pivot m.  The
    result is known to precision N - m + 1, which is exactly what the
    identity needs; it is re-verified by composition before returning.
    """
    K = f.ring
    if f.prec < N:
        raise ValueError(f"series precision {f.prec} is below the requested {N}")
    if f.coeffs and not K.is_zero(f.coeffs[0]):
        raise NonzeroConstantTerm("0 must be a fixed point")
    m = f.positive_valuation()
    if m is None or m > N:
        raise ValueError("series vanishes to the requested precision")
    if m < 2:
        raise ValueError("need a superattracting fixed point (order >= 2)")
    p = K.char
    if p and m % p == 0:
        raise CharacteristicDividesDegree(f"characteristic {p} divides {m}")
    ring, l1 = radical(K, m - 1, K.inv(f[m]))
    F = lift(SeriesTrunc(f.coeffs, N, K), ring)
    inv_m = ring.inv(ring(m))
    top = N - m + 1
    coeffs = [ring.zero, l1]
    for k in range(2, top + 1):
        L = SeriesTrunc(tuple(coeffs), k, ring)
        lhs = ps_compose(F, L)[m + k - 1]
        j, r = divmod(m + k - 1, m)
        rhs = coeffs[j] if r == 0 and j < len(coeffs) else ring.zero
        coeffs.append(ring.neg(ring.mul(ring.sub(lhs, rhs), inv_m)))
    L = SeriesTrunc(tuple(coeffs), top, ring)
    if not boettcher_check(F, L, m, N):
        raise ArithmeticError("Boettcher coordinate failed its self-check")
    return L


def conjugate_series(F: SeriesTrunc, L: SeriesTrunc) -> SeriesTrunc:
    """L^-1 o F o L."""
    return ps_compose(ps_inverse(L), ps_compose(lift(F, L.ring), L))


def boettcher_check(F: SeriesTrunc, L: SeriesTrunc, m: int, N: int) -> bool:
    G = conjugate_series(F, L)
    if G.prec < N:
        return False
    target = monomial(L.ring.one, m, N, L.ring)
    return all(G[i] == target[i] for i in range(N + 1))
