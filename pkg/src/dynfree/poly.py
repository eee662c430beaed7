"""Dense univariate polynomial arithmetic on coefficient tuples.

Coefficients run lowest degree first and the zero polynomial is ``()``.
Most functions take a modulus ``p``: ``p == 0`` means integer coefficients
(Z[x]), otherwise coefficients are residues in ``range(p)``.  A small
generic layer at the bottom works over any object with the ``Field``
element protocol and is used for the Kummer extension.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .errors import ZeroDenominator

_KRONECKER_CUTOFF = 24


def strip(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def degree(a) -> int:
    return len(a) - 1  # -1 for the zero polynomial


def reduce(a, p: int) -> tuple:
    return strip(c % p for c in a) if p else strip(a)


def add(a, b, p: int = 0) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return reduce(out, p) if p else strip(out)


def neg(a, p: int = 0) -> tuple:
    return reduce([-c for c in a], p)


def sub(a, b, p: int = 0) -> tuple:
    return add(a, neg(b, p), p)


def scale(a, c, p: int = 0) -> tuple:
    if p:
        return strip(x * c % p for x in a)
    return strip(x * c for x in a)


def shift(a, k: int) -> tuple:
    return (0,) * k + tuple(a) if a else ()


def _school_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(a, k):
    kb = k // 8
    half = 1 << (k - 1)
    raw = b"".join((c + half).to_bytes(kb, "little") for c in a)
    return int.from_bytes(raw, "little") - _offset(len(a), k)


def _offset(n, k):
    return (1 << (k - 1)) * (((1 << (k * n)) - 1) // ((1 << k) - 1))


def _kronecker_mul(a, b):
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    k = bound.bit_length() + 2
    k += (-k) % 8
    n = len(a) + len(b) - 1
    prod = _pack(a, k) * _pack(b, k) + _offset(n, k)
    kb = k // 8
    raw = prod.to_bytes(kb * n, "little")
    half = 1 << (k - 1)
    return [int.from_bytes(raw[i * kb:(i + 1) * kb], "little") - half for i in range(n)]


def mul(a, b, p: int = 0) -> tuple:
    if not a or not b:
        return ()
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        out = _school_mul(a, b)
    else:
        out = _kronecker_mul(a, b)
    return reduce(out, p)


def power(a, n: int, p: int = 0) -> tuple:
    result, base = (1,), tuple(a)
    while n:
        if n & 1:
            result = mul(result, base, p)
        n >>= 1
        if n:
            base = mul(base, base, p)
    return result


def content(a) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def primitive(a) -> tuple:
    """Primitive part over Z with positive leading coefficient."""
    if not a:
        return ()
    g = content(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def divmod_p(a, b, p: int):
    """Quotient and remainder over F_p."""
    if not b:
        raise ZeroDenominator("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * y) % p
    return strip(q), strip(a[:db])


def exact_div(a, b, p: int = 0) -> tuple:
    """a / b when b divides a exactly (over Z: with integer quotient)."""
    if p:
        q, r = divmod_p(a, b, p)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q
    if not b:
        raise ZeroDenominator("polynomial division by zero")
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c, r = divmod(a[i], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] -= c * y
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return strip(q)


def prem(a, b) -> tuple:
    """Pseudo-remainder over Z: lc(b)^k * a mod b."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        k = len(a) - 1 - db
        a = [x * lead for x in a]
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a = list(strip(a))
    return tuple(a)


def gcd(a, b, p: int = 0) -> tuple:
    """Monic gcd over F_p; primitive gcd with positive leading term over Z."""
    if p:
        while b:
            a, b = b, divmod_p(a, b, p)[1]
        if not a:
            return ()
        inv = pow(a[-1], -1, p)
        return tuple(c * inv % p for c in a)
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)
    return a if len(a) > 1 else (1,)


def evaluate(a, x, p: int = 0):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if p:
            acc %= p
    return acc


def homogeneous_eval(a, x, y, d: int, p: int = 0):
    """sum a_i x^i y^(d-i), computed by Horner with precomputed y powers."""
    ypows = [1]
    for _ in range(d):
        ypows.append(ypows[-1] * y % p if p else ypows[-1] * y)
    acc = 0
    for i in range(d, -1, -1):
        c = a[i] if i < len(a) else 0
        acc = acc * x + c * ypows[d - i]
        if p:
            acc %= p
    return acc


def derivative(a, p: int = 0) -> tuple:
    return reduce([i * a[i] for i in range(1, len(a))], p)


def substitute_homogeneous(a, d: int, num, den, p: int = 0) -> tuple:
    """sum a_i num^i den^(d-i): the homogenized a evaluated at (num : den)."""
    dpows = [(1,)]
    den_const = len(den) == 1
    for _ in range(d):
        dpows.append(scale(dpows[-1], den[0], p) if den_const else mul(dpows[-1], den, p))
    acc = ()
    for i in range(d, -1, -1):
        c = a[i] if i < len(a) else 0
        acc = mul(acc, num, p) if acc else ()
        if c:
            acc = add(acc, scale(dpows[d - i], c, p), p)
    return acc


def lcm_denominators(coeffs) -> int:
    m = 1
    for c in coeffs:
        den = Fraction(c).denominator
        m = m * den // igcd(m, den)
    return m


# -- generic field layer ---------------------------------------------------


def field_strip(a, K) -> list:
    a = list(a)
    while a and K.is_zero(a[-1]):
        a.pop()
    return a


def field_divmod(a, b, K):
    a, b = field_strip(a, K), field_strip(b, K)
    if not b:
        raise ZeroDenominator("polynomial division by zero")
    inv = K.inv(b[-1])
    db = len(b) - 1
    q = [K.zero] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = K.mul(a[i], inv)
        if not K.is_zero(c):
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = K.sub(a[i - db + j], K.mul(c, y))
    return field_strip(q, K), field_strip(a[:db], K)


def field_mul(a, b, K) -> list:
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return field_strip(out, K)


def field_inverse_mod(a, m, K) -> list:
    """s with s*a = 1 mod m, for a coprime to m (extended Euclid)."""
    r0, r1 = field_strip(m, K), field_strip(a, K)
    s0, s1 = [], [K.one]
    while r1:
        q, r = field_divmod(r0, r1, K)
        qs = field_mul(q, s1, K)
        n = max(len(s0), len(qs))
        s_new = [K.sub(s0[i] if i < len(s0) else K.zero, qs[i] if i < len(qs) else K.zero)
                 for i in range(n)]
        r0, r1 = r1, r
        s0, s1 = s1, field_strip(s_new, K)
    if len(r0) != 1:
        raise ZeroDenominator("element is not invertible modulo the given polynomial")
    inv = K.inv(r0[0])
    s, rem = field_divmod([K.mul(c, inv) for c in s0], m, K)
    return rem
