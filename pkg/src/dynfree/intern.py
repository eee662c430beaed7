"""Interning of semigroup elements so that equal maps are counted once.

Over F_p the canonical form itself is the key.  Over Q exact forms of long
words are far too large (degrees grow exponentially with word length), so
each element is keyed by its degree and its action on a few random points
of P^1(F_l) for a random ~62-bit prime l at which every generator has good
reduction.  Reduction commutes with composition, so different keys prove
different maps.  Equal keys are confirmed: exactly by comparing canonical
forms when the degree is at most ``EXACT_CONFIRM_DEGREE``, and otherwise by
evaluating both words at ``EXTRA_CHECKS`` fresh (prime, point) pairs.  The
number of probabilistic confirmations is reported to callers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from sympy import prevprime

from . import poly
from .ratfun import RatFun, compose, x
from .words import Word

EXACT_CONFIRM_DEGREE = 1024
EXTRA_CHECKS = 8
N_POINTS = 4
PRIME_BITS = 62


def _good_reduction(f: RatFun, ell: int) -> bool:
    """Numerator and denominator keep their degrees and stay coprime mod ell."""
    num, den = poly.reduce(f.num, ell), poly.reduce(f.den, ell)
    if len(num) != len(f.num) or len(den) != len(f.den):
        return False
    return len(poly.gcd(num, den, ell)) == 1


def good_primes(gens, count: int, start: int):
    """The ``count`` largest primes below ``start`` with good reduction for every generator."""
    out, ell = [], prevprime(start)
    while len(out) < count:
        if all(_good_reduction(g, ell) for g in gens):
            out.append(ell)
        ell = prevprime(ell)
    return out


@dataclass(frozen=True)
class ReducedMap:
    """A map over Q reduced mod ell, acting on P^1(F_ell) with ell standing for infinity."""

    num: tuple
    den: tuple
    ell: int

    @classmethod
    def of(cls, f: RatFun, ell: int) -> "ReducedMap":
        return cls(poly.reduce(f.num, ell), poly.reduce(f.den, ell), ell)

    def __call__(self, a: int) -> int:
        ell = self.ell
        if a == ell:
            if len(self.num) > len(self.den):
                return ell
            if len(self.num) < len(self.den):
                return 0
            return self.num[-1] * pow(self.den[-1], -1, ell) % ell
        e = poly.evaluate(self.den, a, ell)
        if e == 0:
            return ell
        return poly.evaluate(self.num, a, ell) * pow(e, -1, ell) % ell


@dataclass
class Interner:
    """Assigns each distinct map a stable integer id.

    Elements are presented as (word, key) where keys come from :meth:`identity_key`
    followed by one :meth:`extend` per letter.
    """

    gens: tuple
    seed: int = 0
    exact_confirm_degree: int = EXACT_CONFIRM_DEGREE
    confirmed_exact: int = 0
    confirmed_probabilistic: int = 0
    _ids: dict = field(default_factory=dict, repr=False)
    _words: list = field(default_factory=list, repr=False)
    _exact: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.gens = tuple(self.gens)
        self.field = self.gens[0].field
        self.degrees = tuple(g.degree for g in self.gens)
        if self.field.is_rational:
            rng = random.Random(self.seed)
            # a random starting point avoids special primes such as 2^61 - 1,
            # modulo which 2 has tiny order
            start = rng.randrange(1 << (PRIME_BITS - 1), 1 << PRIME_BITS)
            primes = good_primes(self.gens, 1 + EXTRA_CHECKS, start)
            self._base = tuple(ReducedMap.of(g, primes[0]) for g in self.gens)
            self._points = [rng.randrange(primes[0]) for _ in range(N_POINTS)]
            self._checks = [(tuple(ReducedMap.of(g, ell) for g in self.gens), rng.randrange(ell))
                            for ell in primes[1:]]

    @property
    def exact_keys(self) -> bool:
        return not self.field.is_rational

    def __len__(self):
        return len(self._words)

    # -- keys -----------------------------------------------------------------

    def identity_key(self):
        if self.exact_keys:
            return x(self.field)
        return (1, tuple(self._points))

    def extend(self, key, letter: int):
        """Key of gens[letter] o (element with ``key``)."""
        g = self.gens[letter]
        if self.exact_keys:
            return compose(g, key)
        degree, pts = key
        red = self._base[letter]
        return (degree * self.degrees[letter], tuple(red(a) for a in pts))

    def key_of_word(self, w: Word):
        key = self.identity_key()
        for i in w.letters:
            key = self.extend(key, i)
        return key

    # -- interning --------------------------------------------------------------

    def lookup(self, key, word: Word):
        """Id of an existing element equal to ``word``'s map, else None."""
        ids = self._ids.get(key, ())
        if self.exact_keys:
            return ids[0] if ids else None
        for i in ids:
            if self._same(self._words[i], word, key[0]):
                return i
        return None

    def add(self, key, word: Word) -> int:
        i = len(self._words)
        self._ids.setdefault(key, []).append(i)
        self._words.append(word)
        return i

    def intern(self, key, word: Word) -> tuple:
        """(id, is_new) for the map of ``word`` with precomputed ``key``."""
        i = self.lookup(key, word)
        if i is not None:
            return i, False
        return self.add(key, word), True

    def word(self, i: int) -> Word:
        return self._words[i]

    # -- confirmation -------------------------------------------------------------

    def exact_map(self, w: Word) -> RatFun:
        if w in self._exact:
            return self._exact[w]
        if not w.letters:
            result = x(self.field)
        else:
            result = compose(self.gens[w.letters[-1]], self.exact_map(w.prefix(len(w) - 1)))
        self._exact[w] = result
        return result

    def _same(self, u: Word, v: Word, degree: int) -> bool:
        if degree <= self.exact_confirm_degree:
            self.confirmed_exact += 1
            return self.exact_map(u) == self.exact_map(v)
        for reds, a in self._checks:
            b, c = a, a
            for i in u.letters:
                b = reds[i](b)
            for i in v.letters:
                c = reds[i](c)
            if b != c:
                return False
        self.confirmed_probabilistic += 1
        return True

    def confirmation(self) -> dict:
        return {"method": "canonical-form" if self.exact_keys else "fingerprint",
                "exact": self.confirmed_exact,
                "probabilistic": self.confirmed_probabilistic}
