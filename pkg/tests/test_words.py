import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynfree.errors import FieldMismatch, WordIndexError
from dynfree.fields import GF
from dynfree.ratfun import compose, polynomial, x
from dynfree.words import Word, all_words, evaluate_word, word_degree
from strategies import ratfuns

F, G = 0, 1
words = st.lists(st.integers(0, 2), max_size=4).map(lambda ls: Word(tuple(ls)))


def test_word_degree_examples():
    assert word_degree(Word((F, G)), (2, 3)) == 6
    assert word_degree(Word(), (2, 3)) == 1
    assert word_degree(Word((F, F, G)), (2, 3)) == 12


def test_word_degree_index_error():
    with pytest.raises(WordIndexError):
        word_degree(Word((0, 2)), (2, 3))


def test_first_letter_acts_first():
    f, g = polynomial([0, 0, 1]), polynomial([1, 1])
    assert evaluate_word(Word((G, F)), [f, g]) == polynomial([1, 2, 1])


def test_monomials_commute():
    f, g = polynomial([0, 0, 1]), polynomial([0, 0, 0, 1])
    assert evaluate_word(Word((F, G)), [f, g]) == evaluate_word(Word((G, F)), [f, g])


def test_empty_word_is_identity():
    assert evaluate_word(Word(), [polynomial([0, 0, 1])]) == x()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        evaluate_word(Word((0,)), [x(), x(GF(5))])


def test_string_form():
    w = Word((G, F))
    assert w.to_string() == "g.f"
    assert Word.parse("g.f", ["f", "g"]) == w
    assert Word.parse("", ["f", "g"]) == Word()
    with pytest.raises(WordIndexError):
        Word.parse("f.q", ["f", "g"])


def test_all_words_counts():
    assert sum(1 for _ in all_words(2, 6)) == 2 ** 7 - 2
    assert [len(w) for w in all_words(2, 2)] == [1, 1, 2, 2, 2, 2]


@given(words, st.lists(ratfuns(max_deg=2), min_size=3, max_size=3))
def test_degree_agrees_with_composition(w, gens):
    assert word_degree(w, [g.degree for g in gens]) == evaluate_word(w, gens).degree


@given(words, words, st.lists(ratfuns(max_deg=2), min_size=3, max_size=3))
def test_concatenation_order(u, v, gens):
    assert evaluate_word(u + v, gens) == compose(evaluate_word(v, gens), evaluate_word(u, gens))
