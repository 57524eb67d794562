"""t-spread monomials, closures, the set formula and the Betti formula."""

from random import Random

import pytest

from extres import (
    Ambient,
    MonomialIdeal,
    TSpreadError,
    betti_lq,
    betti_stable,
    betti_tspread,
    is_strongly_stable,
    is_tspread,
    is_tspread_ideal,
    is_tspread_strongly_stable,
    lex_lq_order,
    lex_order,
    oracle_betti,
    set_E_formula,
    tspread_closure,
)
from extres.exterior import bits_of, indices_of

from util import random_strongly_stable, random_tspread_strongly_stable


E4 = Ambient(4)
E6 = Ambient(6)
E7 = Ambient(7)
E8 = Ambient(8)


def ideal(ambient, *supports):
    return MonomialIdeal(ambient, [ambient.monomial(s) for s in supports])


def test_is_tspread_examples():
    assert is_tspread(E8.monomial((1, 3)), (2, 2))
    assert is_tspread(E8.monomial((2, 6)), (2, 2))
    assert is_tspread(E8.monomial((2, 4, 8)), (2, 2))
    assert not is_tspread(E8.monomial((2, 4, 8)), (3, 2))
    I = ideal(E8, (1, 3), (2, 6), (2, 4, 8))
    assert is_tspread_ideal(I, (2, 2))
    assert not is_tspread_ideal(I, (3, 2))


def test_any_variable_is_tspread():
    for k in range(1, 5):
        assert is_tspread(E4.variable(k), (9,))
    assert is_tspread(E4.unit(), (3, 3))


def test_is_tspread_degree_guard():
    with pytest.raises(TSpreadError):
        is_tspread(E4.monomial((1, 2, 3)), (1,))
    with pytest.raises(TSpreadError):
        is_tspread(E4.monomial((1, 2)), ())


def test_tspread_t_zero_entries():
    # a zero threshold imposes nothing beyond strictly increasing indices
    assert is_tspread(E4.monomial((1, 2)), (0, 0))
    assert is_tspread(E4.monomial((1, 2, 3)), (0, 0))


def test_ordinary_monomials_are_one_spread():
    for bits in range(1, 1 << 4):
        m = E4.from_bits(bits, 1)
        assert is_tspread(m, (1, 1, 1))


def test_is_tspread_strongly_stable_worked():
    I = ideal(E6, (1, 3), (1, 4), (2, 4, 6))
    assert is_tspread_strongly_stable(I, (2, 2))


def test_t_one_reduces_to_strongly_stable():
    rng = Random(101)
    for _ in range(25):
        n = rng.randint(3, 6)
        I = random_strongly_stable(rng, n)
        t = (1,) * (n - 1)
        assert is_tspread_strongly_stable(I, t) == is_strongly_stable(I)
    # and a non strongly stable example
    J = ideal(E4, (2, 4))
    assert not is_tspread_strongly_stable(J, (1, 1, 1))
    assert not is_strongly_stable(J)


def test_tss_requires_tspread_generators():
    with pytest.raises(TSpreadError):
        is_tspread_strongly_stable(ideal(E4, (1, 2)), (2, 2))


def test_tss_exchange_counterexample():
    # exchanging 2 -> 1 in e2e4 gives the (2,)-spread e1e4, not in (e2e4)
    assert not is_tspread_strongly_stable(ideal(E4, (2, 4)), (2,))


def test_closure_worked_seed():
    closed = tspread_closure([E6.monomial((2, 4, 6))], (2, 2))
    assert {g.support for g in closed.gens} == {
        (1, 3, 5), (1, 3, 6), (1, 4, 6), (2, 4, 6)}
    assert is_tspread_strongly_stable(closed, (2, 2))


def test_closure_trivial_cases():
    closed = tspread_closure([E4.variable(1)], (1,))
    assert [g.support for g in closed.gens] == [(1,)]
    rng = Random(3)
    for _ in range(10):
        I = random_strongly_stable(rng, rng.randint(3, 5))
        t = (1,) * (I.n - 1)
        again = tspread_closure(I.gens, t)
        assert again == I


def test_closure_always_satisfies_predicate():
    rng = Random(9)
    for t in [(2,), (2, 2), (3, 2), (2, 1)]:
        for _ in range(10):
            n = rng.randint(1 + sum(t), 8)
            I = random_tspread_strongly_stable(rng, n, t)
            assert is_tspread_strongly_stable(I, t)


def test_closure_rejects_bad_seed():
    with pytest.raises(TSpreadError):
        tspread_closure([E4.monomial((1, 2))], (2,))


def test_set_formula_worked_values():
    t = (2, 2)
    assert set_E_formula(E6.monomial((2, 4, 6)), t) == bits_of((1, 2, 4, 6))
    assert set_E_formula(E6.monomial((1, 3)), t) == bits_of((1, 3))
    assert set_E_formula(E6.monomial((1, 4)), t) == bits_of((1, 3, 4))


def test_set_formula_t_one_gives_initial_segment():
    for support in [(1, 2), (2, 3), (3, 4, 5)]:
        u = E6.monomial(support)
        assert set_E_formula(u, (1, 1, 1)) == (1 << u.maxindex) - 1


def test_set_formula_size():
    rng = Random(12)
    for t in [(2,), (2, 2), (3, 2)]:
        for _ in range(20):
            n = rng.randint(1 + sum(t), 8)
            I = random_tspread_strongly_stable(rng, n, t)
            for u in I.gens:
                size = set_E_formula(u, t).bit_count()
                drop = sum(t[h] - 1 for h in range(u.degree - 1))
                assert size == u.maxindex - drop


def test_lex_order_direction():
    gens = [E6.monomial(s) for s in [(2, 4, 6), (1, 4), (1, 3)]]
    ordered = lex_order(gens)
    assert [g.support for g in ordered] == [(1, 3), (1, 4), (2, 4, 6)]
    increasing = lex_order(gens, increasing=True)
    assert [g.support for g in increasing] == [(2, 4, 6), (1, 4), (1, 3)]


def test_lex_lq_order_worked():
    I = ideal(E6, (1, 3), (1, 4), (2, 4, 6))
    lq = lex_lq_order(I, (2, 2))
    assert [g.support for g in lq.order] == [(1, 3), (1, 4), (2, 4, 6)]
    assert [indices_of(s) for s in lq.sets] == [
        (1, 3), (1, 3, 4), (1, 2, 4, 6)]


def test_lex_lq_order_single_generator():
    # e1e3e5 admits no spread-preserving exchange, so it is a principal
    # (2,2)-spread strongly stable ideal
    I = ideal(E8, (1, 3, 5))
    lq = lex_lq_order(I, (2, 2))
    assert lq.sets == (bits_of((1, 3, 5)),)
    assert set_E_formula(E8.monomial((1, 3, 5)), (2, 2)) == bits_of((1, 3, 5))


def test_lex_lq_sets_match_formula_random():
    # the colon computation and the closed formula agree generator by
    # generator; this is the executable form of the set identity
    rng = Random(77)
    for t in [(2,), (2, 2), (2, 1)]:
        for _ in range(15):
            n = rng.randint(1 + sum(t), 7)
            I = random_tspread_strongly_stable(rng, n, t)
            lq = lex_lq_order(I, t)
            for u, s in zip(lq.order, lq.sets):
                assert s == set_E_formula(u, t)


def test_betti_tspread_worked_totals():
    I = ideal(E6, (1, 3), (1, 4), (2, 4, 6))
    table = betti_tspread(I, (2, 2), 6)
    assert table.totals() == [3, 9, 19, 34, 55, 83, 119]
    assert table.row(2) == [2, 5, 9, 14, 20, 27, 35]
    assert table.row(3) == [1, 4, 10, 20, 35, 56, 84]


def test_betti_tspread_t_one_equals_stable():
    rng = Random(21)
    for _ in range(15):
        n = rng.randint(3, 6)
        I = random_strongly_stable(rng, n)
        t = (1,) * (n - 1)
        assert betti_tspread(I, t, 4).entries == betti_stable(I, 4).entries


def test_betti_tspread_principal_vs_oracle():
    I = ideal(E6, (1, 3, 5))
    t = (2, 2)
    table = betti_tspread(I, t, 3)
    from math import comb

    # single generator: beta_{i,i+3} = C(m - sum(t-1) + i - 1, i)
    for i in range(4):
        assert table.beta(i, i + 3) == comb(5 - 2 + i - 1, i)
    oracle = oracle_betti(I, 3).betti_ideal
    assert oracle.entries == table.entries


def test_betti_tspread_rejects_non_tss():
    with pytest.raises(TSpreadError):
        betti_tspread(ideal(E4, (2, 4)), (2,), 2)


def test_formula_triangle_random():
    rng = Random(5150)
    for t in [(2,), (2, 2)]:
        for _ in range(8):
            n = rng.randint(1 + sum(t), 6)
            I = random_tspread_strongly_stable(rng, n, t)
            lq = lex_lq_order(I, t)
            a = betti_tspread(I, t, 3).entries
            b = betti_lq(lq, 3).entries
            assert a == b
            c = oracle_betti(I, 2).betti_ideal.entries
            assert c == betti_lq(lq, 2).entries
