"""Weil heights on P^1(Q), composition bounds, canonical heights, escape rates.

All real outputs are enclosures: :class:`HeightInterval` endpoints are exact
rationals obtained from outward-rounded interval arithmetic (mpmath ``iv``),
so comparisons between intervals never depend on float ties.

Orbits are iterated with exact integers while they are small.  Past
``EXACT_BITS`` the orbit is carried as interval approximations of the
reduced numerator and denominator, with the cancellation at each step
recovered exactly from residues: for a polynomial with cleared-denominator
coefficients ``c`` and denominator ``D``, the gcd of numerator and
denominator of f(p/q) always divides ``R = D * c_d**d``, so residues of p, q
modulo a power of R determine it.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd

from mpmath import iv, mp
from mpmath.libmp import mpf_lt

from . import poly
from .errors import BudgetExceeded, PrecisionExhausted, UnsupportedMap
from .ratfun import INF, RatFun

EXACT_BITS = 2048
MAX_STEPS = 100_000
DEFAULT_PREC = 96

_iv_lock = threading.RLock()


@contextmanager
def ivprec(bits: int):
    """Run a block with the shared interval context at ``bits`` precision."""
    with _iv_lock:
        saved = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = saved


def _mpf_to_fraction(t) -> Fraction:
    sign, man, exp, bc = t
    if not man:
        if bc:
            raise PrecisionExhausted("interval endpoint is not finite")
        return Fraction(0)
    man = int(man)
    value = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -value if sign else value


def _ends(x) -> tuple:
    lo, hi = x._mpi_
    return _mpf_to_fraction(lo), _mpf_to_fraction(hi)


def _iv_from_fraction(q: Fraction):
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class HeightInterval:
    """A closed interval [lo, hi] known to contain a height value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "HeightInterval":
        return cls(Fraction(value), Fraction(value))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def contains(self, value) -> bool:
        if isinstance(value, HeightInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        if isinstance(value, float):
            value = Fraction(value)
        return self.lo <= value <= self.hi

    def overlaps(self, other: "HeightInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def gap(self, other: "HeightInterval") -> Fraction:
        """Distance between the intervals (0 when they overlap)."""
        return max(other.lo - self.hi, self.lo - other.hi, Fraction(0))

    def scale(self, k) -> "HeightInterval":
        k = Fraction(k)
        a, b = self.lo * k, self.hi * k
        return HeightInterval(min(a, b), max(a, b))

    def intersect(self, other: "HeightInterval") -> "HeightInterval":
        return HeightInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __str__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"

    def to_json(self, digits: int = 25) -> dict:
        return {"lo": decimal_str(self.lo, digits, "down"),
                "hi": decimal_str(self.hi, digits, "up")}


def decimal_str(value: Fraction, digits: int = 25, direction: str = "nearest") -> str:
    """Decimal text of an exact rational with ``digits`` places after the point.

    ``direction`` rounds toward -inf ("down"), +inf ("up") or to nearest, so
    printed enclosures stay enclosures.
    """
    value = Fraction(value)
    scaled = value * 10 ** digits
    if direction == "down":
        n = scaled.numerator // scaled.denominator
    elif direction == "up":
        n = -((-scaled.numerator) // scaled.denominator)
    else:
        n = round(scaled)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


def log_interval(n: int, prec: int = DEFAULT_PREC) -> tuple:
    """Enclosure (lo, hi) of log n for a positive integer n."""
    if n == 1:
        return Fraction(0), Fraction(0)
    with ivprec(prec):
        return _ends(iv.log(iv.mpf(n)))


def _log_up(n: int) -> Fraction:
    return log_interval(n)[1]


# -- Weil height -------------------------------------------------------------


def naive_height_int(z) -> int:
    """max(|p|, |q|) for z = p/q in lowest terms; 1 at infinity."""
    if z is INF:
        return 1
    z = Fraction(z)
    return max(abs(z.numerator), z.denominator)


def weil_height(z) -> HeightInterval:
    lo, hi = log_interval(naive_height_int(z))
    return HeightInterval(lo, hi)


# -- composition bound -------------------------------------------------------


@dataclass(frozen=True)
class CompBound:
    """Certified C with |h(f(z)) - d h(z)| <= C on all of P^1(Q)."""

    value: Fraction
    f: object
    kind: str = "ExactRational"
    terms: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self) -> int:
        return self.f.degree if isinstance(self.f, RatFun) else len(self.f) - 1

    def tail(self) -> Fraction:
        """C / (d - 1): the total telescoping error of the canonical limit."""
        return self.value / (self.degree - 1)

    def one_sided_tails(self) -> tuple:
        """(below, above): how far the canonical limit can sit under / over h(z).

        h(f(z)) - d h(z) lies in [-lower, upper], so summing the geometric
        tail side by side gives a tighter enclosure than +-C'.  Both are at
        most :meth:`tail`.
        """
        if not self.terms:
            return self.tail(), self.tail()
        lower = max(self.terms["lower_near"], self.terms["lower_far"], Fraction(0))
        upper = max(self.terms["upper"], Fraction(0))
        return lower / (self.degree - 1), upper / (self.degree - 1)


def _escape_radius(abs_coeffs, lead) -> Fraction:
    """Least power of two kappa >= 1 with sum_{i<d} |c_i| kappa^(i-d) <= |c_d|/2."""
    d = len(abs_coeffs) - 1
    kappa = Fraction(1)
    while sum(Fraction(abs_coeffs[i]) / kappa ** (d - i) for i in range(d)) > Fraction(lead) / 2:
        kappa *= 2
    return kappa


def _require_poly(f: RatFun):
    if not isinstance(f, RatFun) or not f.field.is_rational:
        raise UnsupportedMap("exact heights need a map over Q")
    if not f.is_polynomial or f.degree < 2:
        raise UnsupportedMap("exact heights need a polynomial of degree >= 2")


def composition_bound(f: RatFun) -> CompBound:
    """Certified two-sided bound for |h(f(z)) - d h(z)| over P^1(Q).

    With z = p/q reduced and f = sum c_i x^i / D (integers), f(z) is
    N / (D q^d) where N = sum c_i p^i q^(d-i).  The upper side is the
    triangle inequality.  For the lower side the cancellation
    gcd(N, D q^d) divides D c_d^d; when |p| < kappa |q| the reduced
    denominator alone gives the bound, and when |p| >= kappa |q| the
    leading term dominates so |N| >= |c_d| |p|^d / 2.
    """
    _require_poly(f)
    c, D, d = f.num, f.den[0], f.degree
    lead = abs(c[-1])
    abs_c = [abs(v) for v in c]
    kappa = _escape_radius(abs_c, lead)
    upper = _log_up(max(sum(abs_c), D))
    with ivprec(DEFAULT_PREC):
        k = iv.mpf(kappa.numerator) / kappa.denominator
        near = _ends(d * iv.log(k) + d * iv.log(iv.mpf(lead)))[1]
        far = _ends(iv.log(iv.mpf(2)) + iv.log(iv.mpf(D)) + (d - 1) * iv.log(iv.mpf(lead)))[1]
    value = max(upper, near, far, Fraction(0))
    return CompBound(value, f, "ExactRational",
                     {"upper": upper, "lower_near": near, "lower_far": far, "kappa": kappa})


# -- canonical height ----------------------------------------------------------


def _step_exact(c, D, d, p, q):
    n = poly.homogeneous_eval(c, p, q, d)
    e = D * q ** d
    g = igcd(n, e)
    return n // g, e // g


def _interval_tail(c, D, d, p, q, steps, prec):
    """Carry the orbit of p/q for ``steps`` more steps; return log H enclosure."""
    R = D * abs(c[-1]) ** d
    M = R ** (steps + 1) if R > 1 else 1
    pr, qr = p % M, q % M
    with ivprec(prec):
        P, Q = iv.mpf(p), iv.mpf(q)
        coeffs = [iv.mpf(v) for v in c]
        Div = iv.mpf(D)
        for _ in range(steps):
            N = coeffs[d]
            for i in range(d - 1, -1, -1):
                N = N * P + coeffs[i] * Q ** (d - i)
            E = Div * Q ** d
            if M > 1:
                nr = poly.homogeneous_eval(c, pr, qr, d, M)
                er = D * pow(qr, d, M) % M
                g = igcd(igcd(nr % R, R), er % R)
                M //= g
                pr, qr = (nr // g) % M, (er // g) % M
                if g > 1:
                    N, E = N / g, E / g
            P, Q = N, E
        return _ends(iv.log(_iv_max(abs(P), Q)))


def _iv_max(a, b):
    """Enclosure of max(x, y) for x in a, y in b."""
    (alo, ahi), (blo, bhi) = a._mpi_, b._mpi_
    lo = blo if mpf_lt(alo, blo) else alo
    hi = bhi if mpf_lt(ahi, bhi) else ahi
    return iv.mpf([mp.make_mpf(lo), mp.make_mpf(hi)])


@dataclass(frozen=True)
class OrbitSummary:
    """Outcome of iterating a polynomial map on a rational point."""

    log_height: tuple  # enclosure of h(f^n(z))
    steps: int
    cycle: tuple | None = None  # (entry index, period) if a repeat was seen


def orbit_log_height(f: RatFun, z, n: int, detect_cycle: bool = True) -> OrbitSummary:
    """Enclosure of h(f^n(z)) for a polynomial f over Q (exact, then interval)."""
    _require_poly(f)
    if n > MAX_STEPS:
        raise BudgetExceeded(f"{n} iterations exceed the step budget {MAX_STEPS}")
    if z is INF:
        return OrbitSummary((Fraction(0), Fraction(0)), n, (0, 1))
    c, D, d = f.num, f.den[0], f.degree
    z = Fraction(z)
    p, q = z.numerator, z.denominator
    seen = {(p, q): 0} if detect_cycle else None
    for k in range(1, n + 1):
        p, q = _step_exact(c, D, d, p, q)
        if seen is not None:
            if (p, q) in seen:
                entry = seen[(p, q)]
                return OrbitSummary(log_interval(max(abs(p), q)), n, (entry, k - entry))
            seen[(p, q)] = k
        if k < n and max(abs(p), q).bit_length() > EXACT_BITS:
            return OrbitSummary(_tail_with_precision(f, p, q, n - k), n)
    return OrbitSummary(log_interval(max(abs(p), q)), n)


def _tail_with_precision(f, p, q, steps):
    c, D, d = f.num, f.den[0], f.degree
    target = composition_bound(f).value * Fraction(1, 1 << 30)
    prec = 128 + 4 * steps
    for _ in range(6):
        lo, hi = _interval_tail(c, D, d, p, q, steps, prec)
        if hi - lo <= target:
            return lo, hi
        prec *= 2
    return lo, hi


def canonical_height(f: RatFun, z, n: int, collapse_preperiodic: bool = True) -> HeightInterval:
    """Enclosure of the canonical height of z under a polynomial f over Q.

    Returns h(f^n z)/d^n widened by the one-sided tails of the composition
    bound (each at most C'/d^n with C' = C(f)/(d-1)), clipped at 0 since
    canonical heights are nonnegative.  When the orbit is seen to repeat
    within n steps and ``collapse_preperiodic`` is set, z is preperiodic and
    the exact value [0, 0] is returned.
    """
    bound = composition_bound(f)
    d = f.degree
    scale = Fraction(d) ** n
    below, above = bound.one_sided_tails()
    orbit = orbit_log_height(f, z, n, detect_cycle=collapse_preperiodic)
    if orbit.cycle is not None and collapse_preperiodic:
        return HeightInterval.point(0)
    lo, hi = orbit.log_height
    return HeightInterval(max((lo - below) / scale, Fraction(0)), (hi + above) / scale)


# -- archimedean escape rate ---------------------------------------------------


def _complex_iv(w):
    w = complex(w)
    return iv.mpf(w.real), iv.mpf(w.imag)


def _coeff_abs_ends(coeffs):
    out = []
    for a in coeffs:
        re, im = _complex_iv(a)
        out.append(_ends(iv.sqrt(re ** 2 + im ** 2)))
    return out


def archimedean_bound(coeffs) -> CompBound:
    """C with |log+|f(z)| - d log+|z|| <= C over C, for complex coefficients.

    The float coefficients are taken as exact binary values.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 2:
        raise UnsupportedMap("escape rates need degree >= 2")
    with ivprec(DEFAULT_PREC):
        ends = _coeff_abs_ends(coeffs)
        total_hi = sum(hi for _, hi in ends)
        lead_lo = ends[-1][0]
        kappa = Fraction(1)
        while sum(ends[i][1] / kappa ** (d - i) for i in range(d)) > lead_lo / 2:
            kappa *= 2
        upper = _ends(iv.log(_iv_from_fraction(max(total_hi, Fraction(1)))))[1]
        near = _ends(d * iv.log(_iv_from_fraction(kappa)))[1]
        far = _ends(iv.log(iv.mpf(2)) - iv.log(_iv_from_fraction(lead_lo)))[1]
    value = max(upper, near, far, Fraction(0))
    return CompBound(value, tuple(coeffs), "ComplexNumeric",
                     {"upper": upper, "lower_near": near, "lower_far": far, "kappa": kappa})


def _as_complex_coeffs(f):
    if isinstance(f, RatFun):
        if not f.is_polynomial or not f.field.is_rational:
            raise UnsupportedMap("escape rates need a polynomial")
        return [complex(Fraction(v, f.den[0])) for v in f.num]
    return [complex(v) for v in f]


def escape_rate_complex(f, z, n: int = 40, prec: int = 256, strict: bool = False) -> HeightInterval:
    """Enclosure of G_f(z) = lim log+|f^n(z)| / d^n for a complex polynomial.

    ``f`` is a coefficient sequence (lowest degree first) or a polynomial
    RatFun over Q.  Each step k gives an enclosure log+|f^k z|/d^k +- C'/d^k;
    the running intersection is returned.  Iteration stops early once the
    rounding width of log+|f^k z| exceeds C' (noise has overtaken the
    telescoping gain); with ``strict`` that raises PrecisionExhausted.
    """
    coeffs = _as_complex_coeffs(f)
    bound = archimedean_bound(coeffs)
    d = len(bound.f) - 1
    cprime = bound.tail()
    best = HeightInterval(Fraction(0), Fraction(10) ** 9)
    with ivprec(prec):
        A = [_complex_iv(a) for a in bound.f]
        X, Y = _complex_iv(z)
        for k in range(0, n + 1):
            if k:
                RX, RY = A[d]
                for i in range(d - 1, -1, -1):
                    RX, RY = RX * X - RY * Y + A[i][0], RX * Y + RY * X + A[i][1]
                X, Y = RX, RY
            try:
                log_plus = iv.log(_iv_max(iv.sqrt(X ** 2 + Y ** 2), iv.mpf(1)))
                lo_t, hi_t = _ends(log_plus)
            except (PrecisionExhausted, ValueError, ZeroDivisionError):
                if strict:
                    raise PrecisionExhausted(f"orbit enclosure diverged at step {k}")
                break
            if hi_t - lo_t > cprime:
                if strict:
                    raise PrecisionExhausted(f"rounding slack exceeds C' at step {k}")
                break
            scale = Fraction(d) ** k
            tail = cprime / scale
            step = HeightInterval(max(lo_t / scale - tail, Fraction(0)), hi_t / scale + tail)
            best = best.intersect(step)
    return best
