"""Freeness certificates, relation search, and fixed-point monomial tests.

A certificate for polynomials f, g over Q names a point beta where the
canonical heights of f and g differ by at least eps_lo.  With
C = max(C(f), C(g)), C' = C/(d-1) and d the smaller degree, any j with
C'/d^j < eps_lo/4 makes <f^j, g^j> free on two generators, and no word
ending in f^j agrees with a word ending in g^j at beta when their degrees
match.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (BudgetExceeded, CharacteristicDividesDegree, DynFreeError, NotFixed,
                     UnsupportedMap)
from .heights import HeightInterval, _require_poly, canonical_height, composition_bound, decimal_str
from .intern import Interner
from .parser import parse_expression
from .powerseries import (boettcher, conjugate_series, lift, local_expansion, local_map,
                          monomial_detect)
from .preper import default_budget, point_key, prep_difference_witness, rationals_by_height
from .ratfun import INF, RatFun, evaluate, iterate, parse_point, point_str, to_expr
from .words import Word, all_words, generator_names, word_degree

DIGITS = 25
DEFAULT_N_ITER = 8
MAX_N_ITER = 60
CANDIDATE_HEIGHT = 6


def _dec(value, direction: str) -> Fraction:
    """``value`` rounded to DIGITS decimal places in the given direction."""
    return Fraction(decimal_str(value, DIGITS, direction))


def compute_j(Cprime, d: int, eps_lo) -> int:
    """Least j >= 1 with Cprime / d^j < eps_lo / 4."""
    Cprime, eps_lo = Fraction(Cprime), Fraction(eps_lo)
    if eps_lo <= 0:
        raise ValueError("eps_lo must be positive")
    if d < 2:
        raise ValueError("d must be at least 2")
    j, scale = 1, Fraction(d)
    while Cprime / scale >= eps_lo / 4:
        j += 1
        scale *= d
    return j


@dataclass(frozen=True)
class FreenessCertificate:
    f: RatFun
    g: RatFun
    beta: object
    eps_lo: Fraction
    C: Fraction
    Cprime: Fraction
    d: int
    j: int
    hf_interval: HeightInterval
    hg_interval: HeightInterval
    n_iter: int

    def to_json(self) -> dict:
        return {
            "f": to_expr(self.f),
            "g": to_expr(self.g),
            "beta": point_str(self.beta),
            "eps_lo": decimal_str(self.eps_lo, DIGITS, "down"),
            "C": decimal_str(self.C, DIGITS, "up"),
            "Cprime": decimal_str(self.Cprime, DIGITS, "up"),
            "d": self.d,
            "j": self.j,
            "n_iter": self.n_iter,
            "hf_interval": self.hf_interval.to_json(DIGITS),
            "hg_interval": self.hg_interval.to_json(DIGITS),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FreenessCertificate":
        def interval(part):
            return HeightInterval(Fraction(part["lo"]), Fraction(part["hi"]))

        return cls(
            f=parse_expression(doc["f"]),
            g=parse_expression(doc["g"]),
            beta=parse_point(doc["beta"]),
            eps_lo=Fraction(doc["eps_lo"]),
            C=Fraction(doc["C"]),
            Cprime=Fraction(doc["Cprime"]),
            d=int(doc["d"]),
            j=int(doc["j"]),
            hf_interval=interval(doc["hf_interval"]),
            hg_interval=interval(doc["hg_interval"]),
            n_iter=int(doc["n_iter"]),
        )


@dataclass(frozen=True)
class NoWitnessFound:
    """No candidate separated the canonical heights; ``best_gap`` is the largest gap seen."""

    f: RatFun
    g: RatFun
    candidates_tried: int
    best_gap: Fraction
    n_iter: int

    def to_json(self) -> dict:
        return {
            "status": "no-witness",
            "f": to_expr(self.f),
            "g": to_expr(self.g),
            "candidates_tried": self.candidates_tried,
            "best_gap": decimal_str(self.best_gap, DIGITS, "down"),
            "n_iter": self.n_iter,
        }


def _constants(f: RatFun, g: RatFun):
    C = _dec(max(composition_bound(f).value, composition_bound(g).value), "up")
    d = min(f.degree, g.degree)
    return C, _dec(C / (d - 1), "up"), d


def _candidates(f, g, hint):
    seen = set()
    first = []
    if hint is not None:
        first.append(hint)
    w = prep_difference_witness(f, g)
    if w is not None:
        first.append(w)
    for z in first + list(rationals_by_height(CANDIDATE_HEIGHT)):
        key = point_key(z)
        if key not in seen:
            seen.add(key)
            yield z


def freeness_certificate(f: RatFun, g: RatFun, witness_hint=None, n_iter: int = DEFAULT_N_ITER,
                         max_iter: int = MAX_N_ITER):
    """A verified FreenessCertificate, or NoWitnessFound.

    Candidates are the hint, then a rational point preperiodic for exactly
    one map, then rationals by increasing height.  Each is tried at depth
    n_iter, doubling up to max_iter while the two enclosures overlap.
    """
    _require_poly(f)
    _require_poly(g)
    C, Cprime, d = _constants(f, g)
    best, tried, depth = Fraction(0), 0, n_iter
    for beta in _candidates(f, g, witness_hint):
        tried += 1
        n = n_iter
        while True:
            hf = canonical_height(f, beta, n)
            hg = canonical_height(g, beta, n)
            gap = hf.gap(hg)
            best = max(best, gap)
            if gap > 0 or n >= max_iter:
                break
            n = min(2 * n, max_iter)
        depth = max(depth, n)
        eps_lo = _dec(gap, "down")
        if eps_lo > 0:
            return FreenessCertificate(f, g, beta, eps_lo, C, Cprime, d, compute_j(Cprime, d, eps_lo),
                                       _outward(hf), _outward(hg), n)
    return NoWitnessFound(f, g, tried, best, depth)


def _outward(h: HeightInterval) -> HeightInterval:
    return HeightInterval(_dec(h.lo, "down"), _dec(h.hi, "up"))


def verify_certificate(cert: FreenessCertificate) -> bool:
    """Recompute every invariant of ``cert`` from its maps and point."""
    try:
        f, g = cert.f, cert.g
        _require_poly(f)
        _require_poly(g)
        d = min(f.degree, g.degree)
        if cert.d != d or cert.beta is INF:
            return False
        C_true = max(composition_bound(f).value, composition_bound(g).value)
        if cert.C < C_true:
            return False
        # Cprime is C/(d-1) rounded up in the last printed digit
        if cert.Cprime < cert.C / (d - 1) or cert.Cprime - cert.C / (d - 1) > Fraction(1, 10 ** DIGITS):
            return False
        hf = canonical_height(f, cert.beta, cert.n_iter)
        hg = canonical_height(g, cert.beta, cert.n_iter)
        if not (cert.hf_interval.contains(hf) and cert.hg_interval.contains(hg)):
            return False
        if not (0 < cert.eps_lo <= hf.gap(hg)):
            return False
        return cert.j == compute_j(cert.Cprime, d, cert.eps_lo)
    except (DynFreeError, ValueError, ZeroDivisionError):
        return False


# -- relation search ---------------------------------------------------------------


@dataclass(frozen=True)
class RelationReport:
    gens: tuple
    max_len: int
    relations: tuple  # pairs (earlier word, later word) with equal maps
    distinct_count: int
    word_count: int
    confirmation: dict

    def to_json(self) -> dict:
        names = generator_names(len(self.gens))
        return {
            "generators": {n: to_expr(g) for n, g in zip(names, self.gens)},
            "field": self.gens[0].field.spec(),
            "max_len": self.max_len,
            "word_count": self.word_count,
            "distinct_count": self.distinct_count,
            "relations": [[u.to_string(names), v.to_string(names)] for u, v in self.relations],
            "confirmation": self.confirmation,
        }


def brute_force_relation_search(gens, max_len: int, budget: int | None = None,
                                seed: int = 0) -> RelationReport:
    """Every coincidence among words of length 1..max_len.

    Each relation pairs a word with the first (shortest, then lexicographic)
    word that has the same map.
    """
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if any(g.is_constant for g in gens):
        raise UnsupportedMap("generators must be nonconstant")
    budget = default_budget() if budget is None else budget
    total = sum(len(gens) ** k for k in range(1, max_len + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} words exceed the budget {budget}")
    store = Interner(gens, seed=seed)
    level = [(Word(), store.identity_key())]
    relations = []
    for _ in range(max_len):
        nxt = []
        for w, key in level:
            for i in range(len(gens)):
                w2, k2 = Word(w.letters + (i,)), store.extend(key, i)
                idx, new = store.intern(k2, w2)
                if not new:
                    relations.append((store.word(idx), w2))
                nxt.append((w2, k2))
        level = nxt
    return RelationReport(gens, max_len, tuple(relations), len(store), total, store.confirmation())


# -- word inequality at the witness -------------------------------------------------


def word_inequality_check(cert: FreenessCertificate, max_len: int, budget: int | None = None) -> bool:
    """a(f^j(beta)) != b(g^j(beta)) for all words a, b of length 0..max_len
    with deg(a) deg(f)^j == deg(b) deg(g)^j."""
    f, g, j = cert.f, cert.g, cert.j
    budget = default_budget() if budget is None else budget
    words = list(all_words(2, max_len, min_len=0))
    if len(words) ** 2 > budget:
        raise BudgetExceeded(f"{len(words) ** 2} word pairs exceed the budget {budget}")
    degs = (f.degree, g.degree)
    left = evaluate(iterate(f, j), cert.beta)
    right = evaluate(iterate(g, j), cert.beta)

    def orbit_values(start):
        out = {Word(): start}
        for w in words[1:]:
            out[w] = evaluate((f, g)[w.letters[-1]], out[w.prefix(len(w) - 1)])
        return out

    a_vals, b_vals = orbit_values(left), orbit_values(right)
    fj, gj = f.degree ** j, g.degree ** j
    by_degree = {}
    for b in words:
        by_degree.setdefault(word_degree(b, degs) * gj, []).append(b_vals[b])
    for a in words:
        for value in by_degree.get(word_degree(a, degs) * fj, ()):
            if value == a_vals[a]:
                return False
    return True


# -- fixed points and monomial obstructions ---------------------------------------------


def fixed_point_order(f: RatFun, alpha) -> int:
    """Degree of the lowest positive-degree term of f's expansion at a fixed point."""
    if evaluate(f, alpha) != alpha:
        raise NotFixed(f"{point_str(alpha)} is not fixed by {to_expr(f)}")
    num = local_map(f, alpha).num  # the denominator does not vanish at 0
    for i, c in enumerate(num):
        if c:
            return i
    raise UnsupportedMap("a constant map has no local order")


@dataclass(frozen=True)
class Free:
    reason: str

    def to_json(self) -> dict:
        return {"result": "free", "reason": self.reason}


@dataclass(frozen=True)
class MonomialObstruction:
    xi: object
    n: int
    xi_text: str = ""

    def to_json(self) -> dict:
        return {"result": "monomial-obstruction", "xi": self.xi_text, "n": self.n}


@dataclass(frozen=True)
class Unknown:
    reason: str

    def to_json(self) -> dict:
        return {"result": "unknown", "reason": self.reason}


def jz_free_test(f: RatFun, g: RatFun, alpha, prec: int):
    """Classify <f, g> through the Boettcher coordinate of f at a common fixed point.

    After conjugating f to X^m, a conjugate of g with two or more terms, or
    a monomial xi X^n with xi of infinite order, gives a free semigroup; a
    monomial with xi a root of unity is an obstruction.  A monomial seen
    below precision 2 (deg f + deg g) is reported as Unknown.
    """
    m, n = fixed_point_order(f, alpha), fixed_point_order(g, alpha)
    if m < 2 or n < 2:
        raise UnsupportedMap("both maps need a superattracting fixed point (order >= 2)")
    p = f.field.char
    if p and (m % p == 0 or n % p == 0):
        raise CharacteristicDividesDegree(f"characteristic {p} divides {m} or {n}")
    F = local_expansion(f, alpha, prec)
    G = local_expansion(g, alpha, prec)
    L = boettcher(F, prec)
    H = conjugate_series(lift(G, L.ring), L)
    mono = monomial_detect(H)
    if mono is None:
        return Free("conjugate of g has at least two terms")
    xi, k = mono
    threshold = 2 * (f.degree + g.degree)
    if H.prec < threshold:
        return Unknown(f"conjugate of g is monomial only to precision {H.prec} < {threshold}")
    ring = L.ring
    if ring.is_root_of_unity(xi):
        return MonomialObstruction(xi, k, ring.fmt(xi))
    return Free(f"conjugate of g is {ring.fmt(xi)}*X^{k} with {ring.fmt(xi)} of infinite order")
