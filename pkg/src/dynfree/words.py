"""Words over a generator alphabet, stored first-acting letter first.

``Word((0, 1))`` over generators ``(f, g)`` is the map ``g o f``: the prefix
of length i is the composite of the first i letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import FieldMismatch, WordIndexError
from .ratfun import RatFun, compose, x

DEFAULT_NAMES = ("f", "g", "h", "k")


def generator_names(count: int) -> list:
    if count <= len(DEFAULT_NAMES):
        return list(DEFAULT_NAMES[:count])
    return [f"s{i}" for i in range(count)]


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def prefix(self, i: int) -> "Word":
        return Word(self.letters[:i])

    def to_string(self, names=None) -> str:
        if not self.letters:
            return ""
        names = names or generator_names(max(self.letters) + 1)
        return ".".join(names[i] for i in self.letters)

    @classmethod
    def parse(cls, text: str, names) -> "Word":
        text = text.strip()
        if not text:
            return cls(())
        index = {name: i for i, name in enumerate(names)}
        try:
            return cls(tuple(index[tok.strip()] for tok in text.split(".")))
        except KeyError as exc:
            raise WordIndexError(f"unknown generator {exc.args[0]!r}") from None


def all_words(n_gens: int, max_len: int, min_len: int = 1):
    """Every word of length min_len..max_len, shorter words first."""
    for length in range(min_len, max_len + 1):
        for letters in product(range(n_gens), repeat=length):
            yield Word(letters)


def word_degree(w: Word, degrees) -> int:
    result = 1
    for i in w.letters:
        if not 0 <= i < len(degrees):
            raise WordIndexError(f"letter {i} out of range for {len(degrees)} generators")
        result *= degrees[i]
    return result


def evaluate_word(w: Word, gens) -> RatFun:
    """The composite map, first letter applied first; the empty word is x."""
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    if any(g.field != field for g in gens):
        raise FieldMismatch("generators live over different fields")
    result = x(field)
    for i in w.letters:
        if not 0 <= i < len(gens):
            raise WordIndexError(f"letter {i} out of range for {len(gens)} generators")
        result = compose(gens[i], result)
    return result
