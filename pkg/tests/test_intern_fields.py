from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynfree.fields import GF, QQ, Field, KummerExtension, binomial_irreducible
from dynfree.intern import Interner, ReducedMap, good_primes
from dynfree.parser import parse_list
from dynfree.words import Word, all_words, evaluate_word

F = Fraction


# -- fields -----------------------------------------------------------------------------------

def test_field_parse():
    assert Field.parse("q") == QQ
    assert Field.parse("fp:7") == GF(7)
    for bad in ("fp:4", "fp:x", "r"):
        with pytest.raises(ValueError):
            Field.parse(bad)


def test_prime_field_arithmetic():
    K = GF(7)
    assert K.inv(3) == 5 and K.div(1, 3) == 5
    assert K.nth_root(2, 3) is None and K.nth_root(1, 3) == 1
    assert K.is_root_of_unity(6)


def test_rational_roots_and_unity():
    assert QQ.nth_root(F(4, 9), 2) == F(2, 3)
    assert QQ.nth_root(F(2), 2) is None
    assert QQ.is_root_of_unity(F(-1)) and not QQ.is_root_of_unity(F(2))


def test_binomial_irreducibility():
    assert binomial_irreducible(QQ, 2, F(2))
    assert not binomial_irreducible(QQ, 2, F(4))
    assert binomial_irreducible(QQ, 2, F(-1, 2))


def test_kummer_extension():
    E = KummerExtension(QQ, 2, F(-1, 2))
    t = E.gen
    assert E.mul(t, t) == E(F(-1, 2))
    assert E.mul(t, E.inv(t)) == E.one
    assert E.fmt(t) == "t" and E.fmt(E.neg(t)) == "-t"
    assert not E.is_root_of_unity(t)  # t^4 = 1/4


# -- interning --------------------------------------------------------------------------------

def test_good_primes_avoid_bad_reduction():
    # (x^2 + 3)/3 loses its degree mod 3; (x+1)/(x+7) degenerates mod 2 and 3
    gens = parse_list("x^2/3 + 1; (x+1)/(x+7)")
    assert good_primes(gens, 3, 12) == [11, 7, 5]
    primes = good_primes(gens, 5, 1000)
    assert primes == sorted(primes, reverse=True) and all(p < 1000 for p in primes)


def test_reduced_map_handles_infinity():
    [f] = parse_list("1/x")
    red = ReducedMap.of(f, 101)
    assert red(0) == 101 and red(101) == 0  # 101 stands for infinity
    [g] = parse_list("(2x+1)/(x+3)")
    assert ReducedMap.of(g, 101)(101) == 2


@pytest.mark.parametrize("srcs", ["x^2; x^3", "x^2-2; x^3-3x", "x^2; -x^2", "1/x; x+1", "2x; x+1"])
@pytest.mark.parametrize("threshold", [0, 1024])
def test_fingerprints_agree_with_canonical_forms(srcs, threshold):
    gens = parse_list(srcs)
    store = Interner(gens, seed=3, exact_confirm_degree=threshold)
    exact = {}
    for w in all_words(len(gens), 5):
        i, new = store.intern(store.key_of_word(w), w)
        h = evaluate_word(w, gens)
        assert new == (h not in exact)
        exact.setdefault(h, i)
        assert exact[h] == i
    conf = store.confirmation()
    assert conf["method"] == "fingerprint"
    if threshold == 0 and len(store) < sum(2 ** k for k in range(1, 6)):
        assert conf["probabilistic"] > 0


@given(st.integers(0, 2 ** 32))
def test_seed_does_not_change_counts(seed):
    gens = parse_list("x^2; x^2+1; 2x")
    store = Interner(gens, seed=seed)
    for w in all_words(3, 3):
        store.intern(store.key_of_word(w), w)
    assert len(store) == len({evaluate_word(w, gens) for w in all_words(3, 3)})


def test_exact_keys_over_prime_fields():
    gens = parse_list("x^2; x^2+x", GF(3))
    store = Interner(gens)
    assert store.exact_keys
    ids = [store.intern(store.key_of_word(w), w)[0] for w in (Word((0, 1)), Word((1, 0)))]
    assert ids[0] != ids[1]
