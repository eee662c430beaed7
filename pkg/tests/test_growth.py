from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dynfree.errors import AllConstant, BudgetExceeded, FieldMismatch, TableTooShort, UnsupportedMap
from dynfree.fields import GF
from dynfree.freeness import brute_force_relation_search
from dynfree.growth import (AffineMap, GrowthTable, absorb_constants, affine_growth,
                            classify_growth, growth_table)
from dynfree.parser import parse_expression, parse_list
from dynfree.ratfun import chebyshev, compose, constant
from dynfree.words import all_words, evaluate_word

F = Fraction
CHEB = [chebyshev(2), chebyshev(3)]


def P(src, field=None):
    return parse_expression(src) if field is None else parse_expression(src, field)


def oracle_counts(gens, n_max):
    """d_S(1..n_max) by evaluating every word explicitly."""
    seen, out = set(), []
    for n in range(1, n_max + 1):
        seen |= {evaluate_word(w, gens) for w in all_words(len(gens), n, min_len=n)}
        out.append(len(seen))
    return out


def oracle_affine_1d(maps, n_max):
    """Same count for maps x -> a x + b, composed as pairs."""
    seen, layer, out = set(), {(F(1), F(0))}, []
    for _ in range(n_max):
        layer = {(a * A, a * B + b) for (A, B) in layer for (a, b) in maps} - seen
        seen |= layer
        out.append(len(seen))
    return out


def oracle_affine_matrices(maps, n_max):
    """Same count for affine maps of Q^k via sympy products of the block matrices."""
    mats = [sympy.Matrix(m.embed()) for m in maps]
    seen, out = set(), []
    for n in range(1, n_max + 1):
        for w in all_words(len(mats), n, min_len=n):
            M = sympy.eye(len(maps[0].translation) + 1)
            for i in w.letters:
                M = mats[i] * M
            seen.add(tuple(M))
        out.append(len(seen))
    return out


# -- exact tables -----------------------------------------------------------------------------

def test_chebyshev_closed_form():
    table = growth_table(CHEB, 10)
    assert table.values == [n * (n + 3) // 2 for n in range(1, 11)]


def test_chebyshev_degrees_are_smooth():
    for w in all_words(2, 6):
        d = evaluate_word(w, CHEB).degree
        while d % 2 == 0:
            d //= 2
        while d % 3 == 0:
            d //= 3
        assert d == 1


def test_single_square():
    assert growth_table([P("x^2")], 8).values == list(range(1, 9))


def test_p_counter_is_free():
    K = GF(3)
    table = growth_table([P("x^2", K), P("x^2+x", K)], 8)
    assert table.values == [2 ** (n + 1) - 2 for n in range(1, 9)]
    assert table.field == "fp:3"


@pytest.mark.parametrize("srcs", [["x^2", "x^3"], ["x^2-2", "x^3-3x"], ["x^2", "-x^2"],
                                  ["x^2", "x+1"], ["1/x", "x+1"], ["x^2", "2x"]])
def test_matches_oracle(srcs):
    gens = [P(s) for s in srcs]
    assert growth_table(gens, 5).values == oracle_counts(gens, 5)


def test_matches_oracle_mod_p():
    K = GF(5)
    gens = [P("x^2+1", K), P("2x^3", K), P("x+1", K)]
    assert growth_table(gens, 4).values == oracle_counts(gens, 4)


def test_identity_excluded_in_csv():
    csv = growth_table([P("x^2")], 3).to_csv()
    lines = csv.splitlines()
    assert lines[0] == "# generators: x^2"
    assert "identity excluded" in lines[2]
    assert lines[3:] == ["n,d_S(n)", "1,1", "2,2", "3,3"]


def test_budget_keeps_partial_table():
    with pytest.raises(BudgetExceeded) as info:
        growth_table([P("x^2"), P("x^2-2")], 10, budget=40)
    partial = info.value.partial
    assert partial.truncated and partial.values == [2, 6, 14, 30]


def test_generator_checks():
    with pytest.raises(UnsupportedMap):
        growth_table([P("x^2"), constant(1)], 3)
    with pytest.raises(FieldMismatch):
        growth_table([P("x^2"), P("x^2", GF(3))], 3)


@given(st.lists(st.sampled_from(["x^2", "x^2-2", "x^3", "x+1", "-x", "1/x", "x^2+x", "2x"]),
                min_size=1, max_size=3, unique=True), st.integers(1, 5))
def test_monotone_and_free_bound(srcs, n):
    gens = parse_list(";".join(srcs))
    values = growth_table(gens, n).values
    assert all(a <= b for a, b in zip(values, values[1:]))
    k = len(gens)
    free = [sum(k ** i for i in range(1, m + 1)) for m in range(1, n + 1)]
    assert all(v <= c for v, c in zip(values, free))
    no_relation = brute_force_relation_search(gens, n).relations == ()
    assert (values[-1] == free[-1]) == no_relation


@pytest.mark.parametrize("srcs", [["x^2-2", "x^3-3x"], ["x^2", "x+1"], ["x^2", "x^2-2"]])
def test_generating_set_robustness(srcs):
    S = [P(s) for s in srcs]
    T = S + [compose(S[0], S[1])]
    n = 4
    dS = growth_table(S, 2 * n).values
    dT = growth_table(T, n).values
    for i in range(n):
        assert dS[i] <= dT[i] <= dS[2 * i + 1]


# -- constants --------------------------------------------------------------------------------

def test_absorb_constants():
    kept, dropped = absorb_constants([P("x^2"), constant(1)])
    assert kept == [P("x^2")] and dropped
    assert absorb_constants([P("x^2"), P("x^3")]) == ([P("x^2"), P("x^3")], False)
    with pytest.raises(AllConstant):
        absorb_constants([constant(0)])


def test_constant_lemma_audit():
    S = growth_table([P("x^2")], 8).values
    S1 = growth_table([P("x^2"), constant(1)], 8, allow_constants=True).values
    assert S == list(range(1, 9))
    assert all(a <= 2 * b for a, b in zip(S1, S))
    assert S1 == [n + 1 for n in range(1, 9)]


# -- classification ---------------------------------------------------------------------------

def test_classify_examples():
    poly = classify_growth([2, 5, 9, 14, 20, 27, 35, 44])
    assert poly.kind == "Polynomial" and 1.8 <= poly.estimate <= 2.2
    assert classify_growth([1, 2, 3, 4, 5, 6]).kind == "Linear"
    exp = classify_growth([2, 6, 14, 30, 62, 126])
    assert exp.kind == "Exponential" and abs(exp.estimate - 2) < 0.1
    assert classify_growth([3, 5, 5, 5, 5, 5]).kind == "Bounded"


def test_classify_chebyshev_table():
    cls = classify_growth(growth_table(CHEB, 10))
    assert cls.kind == "Polynomial" and 1.8 <= cls.estimate <= 2.2


def test_classify_inconclusive():
    assert classify_growth([1, 50, 2, 400, 3, 9000, 4, 10]).kind == "Inconclusive"


def test_classify_too_short():
    with pytest.raises(TableTooShort):
        classify_growth([1, 2, 3])


@given(st.lists(st.integers(1, 10 ** 6), min_size=4, max_size=12).map(sorted))
def test_classification_is_reproducible(values):
    t = GrowthTable(["x"], values)
    assert classify_growth(t) == classify_growth(list(values))


# -- affine maps ------------------------------------------------------------------------------

def test_translation():
    assert affine_growth([AffineMap(((1,),), (1,))], 6).values == list(range(1, 7))


def test_identity_map():
    assert affine_growth([AffineMap(((1,),), (0,))], 5).values == [1] * 5


def test_doubling_and_translation_against_oracle():
    values = affine_growth([AffineMap(((2,),), (0,)), AffineMap(((1,),), (1,))], 10).values
    assert values == oracle_affine_1d([(F(2), F(0)), (F(1), F(1))], 10)
    assert values == [2, 6, 13, 25, 45, 78, 132, 220, 363, 595]


def test_affine_relation_breaks_free_count():
    # applying x+1 twice after 2x equals applying 2x after x+1
    maps = parse_list("2x; x+1")
    double, shift = maps
    assert compose(shift, compose(shift, double)) == compose(double, shift)


def test_affine_from_ratfun_and_rejects():
    m = AffineMap.from_ratfun(P("3x - 1/2"))
    assert m.matrix == ((3,),) and m.translation == (F(-1, 2),) and str(m) == "3*x - 1/2"
    with pytest.raises(ValueError):
        AffineMap.from_ratfun(P("x^2"))
    with pytest.raises(ValueError):
        AffineMap(((1, 2), (2, 4)), (0, 0))


def test_two_dimensional_heisenberg():
    # unipotent shears generate a nilpotent group: polynomial growth
    a = AffineMap(((1, 1), (0, 1)), (0, 0))
    b = AffineMap(((1, 0), (0, 1)), (0, 1))
    values = affine_growth([a, b], 12).values
    assert values[:6] == oracle_affine_matrices([a, b], 6)
    # the Heisenberg group has polynomial growth of degree 4
    cls = classify_growth(values)
    assert cls.kind == "Polynomial" and 3.5 <= cls.estimate <= 4.5


def test_affine_budget():
    with pytest.raises(BudgetExceeded):
        affine_growth([AffineMap(((2,),), (0,)), AffineMap(((3,),), (1,))], 12, budget=50)
