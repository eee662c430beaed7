"""Exact coefficient fields: the rationals, prime fields, and one Kummer layer.

Elements are plain Python values so they hash and compare cheaply:
``Fraction`` over Q, ``int`` in ``range(p)`` over F_p, and tuples of base
elements (coefficients of 1, t, ..., t^(k-1)) in a Kummer extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint, integer_nthroot, isprime
from sympy.ntheory.residue_ntheory import nthroot_mod

from .errors import ZeroDenominator


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, spec: str) -> "Field":
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rationals"):
            return QQ
        if spec.startswith("fp:"):
            return cls(int(spec[3:]))
        raise ValueError(f"unknown field {spec!r}; use 'q' or 'fp:<p>'")

    @property
    def char(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"

    def spec(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    def __call__(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDenominator(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else a * b % self.p

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDenominator("inverse of zero")
        return 1 / Fraction(a) if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        return Fraction(a) ** n if self.p == 0 else pow(a, n, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_root_of_unity(self, a) -> bool:
        if self.is_zero(a):
            return False
        return self.p != 0 or a in (1, -1)

    def fmt(self, a) -> str:
        return str(a)

    def nth_root(self, a, k: int):
        """Some k-th root of ``a`` in this field, or None.

        Over Q the positive root is preferred when both signs work.
        """
        if k == 1:
            return a
        if self.is_zero(a):
            return self.zero
        if self.p == 0:
            a = Fraction(a)
            sign = 1
            if a < 0:
                if k % 2 == 0:
                    return None
                sign = -1
            num, exact_n = integer_nthroot(abs(a.numerator), k)
            den, exact_d = integer_nthroot(a.denominator, k)
            if exact_n and exact_d:
                return sign * Fraction(num, den)
            return None
        roots = nthroot_mod(a % self.p, k, self.p, all_roots=True)
        return min(roots) if roots else None


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def binomial_irreducible(field: Field, k: int, a) -> bool:
    """Whether t^k - a is irreducible over ``field`` (Capelli's criterion)."""
    if field.is_zero(a):
        return False
    for ell in factorint(k):
        if field.nth_root(a, ell) is not None:
            return False
    if k % 4 == 0:
        # a = -4 b^4 also makes t^k - a reducible
        b4 = field.div(field.neg(a), field(4)) if field.p != 2 else None
        if b4 is not None and field.nth_root(b4, 4) is not None:
            return False
    return True


@dataclass(frozen=True)
class KummerExtension:
    """K(t) with t^k = a, for t^k - a irreducible over the base field K."""

    base: Field
    k: int
    a: object

    def __post_init__(self):
        if self.k < 1 or self.base.is_zero(self.a):
            raise ValueError("need k >= 1 and a != 0")

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def char(self) -> int:
        return self.base.p

    @property
    def is_rational(self) -> bool:
        return False

    def __str__(self):
        return f"{self.base}(t), t^{self.k} = {self.base.fmt(self.a)}"

    def __call__(self, x):
        if isinstance(x, tuple):
            return x
        return (self.base(x),) + (self.base.zero,) * (self.k - 1)

    @property
    def zero(self):
        return (self.base.zero,) * self.k

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        if self.k == 1:
            return (self.a,)
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.k - 2)

    def add(self, x, y):
        return tuple(self.base.add(u, v) for u, v in zip(x, y))

    def sub(self, x, y):
        return tuple(self.base.sub(u, v) for u, v in zip(x, y))

    def neg(self, x):
        return tuple(self.base.neg(u) for u in x)

    def mul(self, x, y):
        K, k = self.base, self.k
        acc = [K.zero] * (2 * k - 1)
        for i, u in enumerate(x):
            if K.is_zero(u):
                continue
            for j, v in enumerate(y):
                acc[i + j] = K.add(acc[i + j], K.mul(u, v))
        out = acc[:k]
        for i in range(k, 2 * k - 1):
            out[i - k] = K.add(out[i - k], K.mul(acc[i], self.a))
        return tuple(out)

    def inv(self, x):
        from . import poly

        if self.is_zero(x):
            raise ZeroDenominator("inverse of zero")
        K = self.base
        modulus = [K.neg(self.a)] + [K.zero] * (self.k - 1) + [K.one]
        s = poly.field_inverse_mod(list(x), modulus, K)
        return tuple(s) + (K.zero,) * (self.k - len(s))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        result, base = self.one, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, x) -> bool:
        return all(self.base.is_zero(u) for u in x)

    def is_root_of_unity(self, x) -> bool:
        if self.is_zero(x):
            return False
        if self.base.p:
            return True
        # roots of unity of order r in a degree-k number field need phi(r) <= k,
        # and phi(r) >= sqrt(r/2)
        for r in range(1, 2 * self.k * self.k + 1):
            if self.pow(x, r) == self.one:
                return True
        return False

    def fmt(self, x) -> str:
        terms = []
        for i, u in enumerate(x):
            if self.base.is_zero(u):
                continue
            c = self.base.fmt(u)
            if i == 0:
                terms.append(c)
                continue
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(mono if c == "1" else f"-{mono}" if c == "-1" else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"
