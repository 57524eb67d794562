"""Homology oracle: differentials, blockwise Betti numbers, stable cycles."""

from math import comb
from random import Random

import pytest

from extres import (
    Ambient,
    MonomialIdeal,
    QQ,
    ResourceLimitError,
    betti_lq,
    betti_stable,
    cartan_differential,
    cartan_module_basis,
    find_lq_order,
    oracle_betti,
    stable_cycle_basis,
)
from extres.cartan import exponents_on, quotient_monomials
from extres.fields import GF2, PrimeField
from extres.exterior import bits_of, sigma

from util import random_monomial_ideal, random_stable, random_strongly_stable


E4 = Ambient(4)
E5 = Ambient(5)
E6 = Ambient(6)


def ideal(ambient, *supports):
    return MonomialIdeal(ambient, [ambient.monomial(s) for s in supports])


def worked_ideal():
    return ideal(E6, (1, 3), (1, 4), (2, 4, 6))


def test_divided_power_count():
    for n in range(1, 5):
        for i in range(5):
            assert len(list(exponents_on(i, range(1, n + 1), n))) == comb(
                n + i - 1, i
            )


def test_basis_dimension_formula():
    I = ideal(E4, (1, 2))
    for i in range(3):
        basis = cartan_module_basis(I, i)
        by_degree = {}
        for mu, a in basis:
            d = mu.bit_count() + sum(a)
            by_degree[d] = by_degree.get(d, 0) + 1
        for d, count in by_degree.items():
            expected = comb(I.n + i - 1, i) * len(
                quotient_monomials(I, d - i)
            ) if i else len(quotient_monomials(I, d))
            assert count == expected


def test_differential_single_variable():
    # d(1 * x_k) = e_k in E/I for each variable not in the ideal
    Z = MonomialIdeal(E4, [])
    rows, cols, entries = cartan_differential(Z, 1)
    for c, (mu, a) in enumerate(cols):
        if mu != 0 or sum(a) != 1:
            continue
        k = next(i for i, v in enumerate(a, start=1) if v)
        col = entries[c]
        assert len(col) == 1
        ((r, coeff),) = col.items()
        assert rows[r] == (bits_of((k,)), (0,) * 4)
        assert coeff == 1


def test_differential_drops_ideal_products():
    I = ideal(E4, (1, 2))
    rows, cols, entries = cartan_differential(I, 1)
    # e_2 x_1 -> e_1 ^ e_2 = e_12 which dies in E/I
    c = cols.index((bits_of((2,)), (1, 0, 0, 0)))
    assert entries[c] == {}
    # e_3 x_1 -> e_1 ^ e_3 survives
    c2 = cols.index((bits_of((3,)), (1, 0, 0, 0)))
    ((r, coeff),) = entries[c2].items()
    assert rows[r] == (bits_of((1, 3)), (0,) * 4)
    assert coeff == 1


def test_differential_signs():
    Z = MonomialIdeal(E4, [])
    rows, cols, entries = cartan_differential(Z, 1)
    c = cols.index((bits_of((2,)), (0, 0, 1, 0)))
    ((r, coeff),) = entries[c].items()
    assert rows[r] == (bits_of((2, 3)), (0,) * 4)
    assert coeff == -1  # e_3 ^ e_2 = -e_23


def test_dd_zero_random():
    rng = Random(42)
    for _ in range(12):
        n = rng.randint(2, 4)
        I = random_monomial_ideal(rng, n)
        for i in (2, 3):
            rows_lo, _, lo = cartan_differential(I, i - 1)
            _, cols_hi, hi = cartan_differential(I, i)
            lo_by_col = lo
            for c in range(len(cols_hi)):
                acc = {}
                for r, v in hi[c].items():
                    for rr, w in lo_by_col[r].items():
                        acc[rr] = acc.get(rr, 0) + v * w
                assert all(v == 0 for v in acc.values())


def test_oracle_zero_ideal():
    Z = MonomialIdeal(E4, [])
    result = oracle_betti(Z, 2)
    assert result.betti_quotient.beta(0, 0) == 1
    assert sum(result.betti_quotient.entries.values()) == 1
    assert result.betti_ideal.entries == {}


def test_oracle_worked_example_gf2():
    result = oracle_betti(worked_ideal(), 3, field=GF2)
    t = result.betti_ideal
    assert t.totals() == [3, 9, 19, 34]
    assert t.row(2) == [2, 5, 9, 14]
    assert t.row(3) == [1, 4, 10, 20]
    assert t.slopes() == [2, 3]


def test_oracle_worked_example_qq():
    result = oracle_betti(worked_ideal(), 2, j_max=5, field=QQ)
    t = result.betti_ideal
    assert t.beta(0, 2) == 2 and t.beta(0, 3) == 1
    assert t.beta(1, 3) == 5 and t.beta(1, 4) == 4
    assert t.beta(2, 4) == 9 and t.beta(2, 5) == 10


def test_oracle_principal_ideal_cross_formula():
    I = ideal(E4, (1, 2))
    lq = find_lq_order(I)
    assert oracle_betti(I, 3, field=GF2).betti_ideal.entries == betti_lq(
        lq, 3
    ).entries


def test_oracle_remark_stable_value():
    I = ideal(E5, (1, 2), (1, 3), (2, 3), (3, 4, 5))
    result = oracle_betti(I, 1, field=GF2)
    assert result.betti_ideal.beta(1, 3) == 8
    assert result.betti_ideal.entries == betti_stable(I, 1).entries


def test_oracle_agrees_with_formula_random():
    rng = Random(2718)
    matched = 0
    for _ in range(25):
        n = rng.randint(2, 5)
        I = random_monomial_ideal(rng, n)
        lq = find_lq_order(I)
        if lq is None:
            continue
        matched += 1
        formula = betti_lq(lq, 2)
        oracle = oracle_betti(I, 2, field=GF2).betti_ideal
        assert oracle.entries == formula.entries
    assert matched >= 8


def test_oracle_field_independence_spot():
    rng = Random(31415)
    for _ in range(6):
        I = random_strongly_stable(rng, rng.randint(3, 5))
        gf2 = oracle_betti(I, 2, field=GF2).betti_ideal.entries
        qq = oracle_betti(I, 2, field=QQ).betti_ideal.entries
        gp = oracle_betti(I, 2, field=PrimeField(5)).betti_ideal.entries
        assert gf2 == qq == gp


def test_oracle_resource_limit():
    with pytest.raises(ResourceLimitError) as err:
        oracle_betti(worked_ideal(), 3, max_block_cells=100)
    assert "x" in str(err.value)


def test_oracle_guideline_scale():
    # n = 6 with i_max = 4 is the documented guideline boundary and must
    # clear the default block limit
    result = oracle_betti(worked_ideal(), 4, field=GF2)
    assert result.betti_ideal.totals() == [3, 9, 19, 34, 55]


def test_oracle_rejects_unit_ideal():
    I = ideal(E4, (2,))
    unit = I.colon(E4.variable(2))
    with pytest.raises(ValueError):
        oracle_betti(unit, 1)


def test_stable_cycles_single_variable():
    I = ideal(E4, (1,))
    for i in (1, 2, 3):
        cycles = stable_cycle_basis(I, i)
        assert len(cycles) == 1
        (cyc,) = cycles
        assert cyc.mu_bits == 0
        assert cyc.a == (i, 0, 0, 0)


def test_stable_cycles_count_matches_homology():
    # cycles at chain degree i span H_i(E/I), whose dimensions are the
    # Betti numbers of I in homological degree i - 1
    I = ideal(E5, (1, 2), (1, 3), (2, 3), (3, 4, 5))
    for i in (1, 2, 3):
        cycles = stable_cycle_basis(I, i)
        assert len(cycles) == betti_stable(I, i - 1).total(i - 1)
    at2 = stable_cycle_basis(I, 2)
    split = {}
    for c in at2:
        split[c.internal_degree] = split.get(c.internal_degree, 0) + 1
    assert split == {3: 8, 4: 5}  # the beta_{1,3} / beta_{1,4} split


def test_stable_cycles_are_cycles_random():
    rng = Random(55)
    for _ in range(10):
        I = random_stable(rng, rng.randint(3, 5))
        for i in (1, 2):
            for cyc in stable_cycle_basis(I, i):
                for k, ak in enumerate(cyc.a, start=1):
                    if not ak:
                        continue
                    kb = 1 << (k - 1)
                    if kb & cyc.mu_bits:
                        continue
                    assert I.contains_bits(kb | cyc.mu_bits)


def test_stable_cycles_requires_stable():
    with pytest.raises(ValueError):
        stable_cycle_basis(ideal(E4, (2, 4)), 1)


def test_oracle_non_lq_ideal():
    # no closed formula applies, but the homology is still well defined:
    # beta_0 counts the minimal generators, and this instance is
    # characteristic independent
    I = ideal(E6, (1, 2), (3, 4), (5, 6))
    gf2 = oracle_betti(I, 2, field=GF2)
    qq = oracle_betti(I, 2, field=QQ)
    assert gf2.betti_ideal.total(0) == 3
    assert gf2.betti_ideal.entries == qq.betti_ideal.entries
    # the i=2 row spreads over three internal degrees, which a
    # linear-quotient resolution never does
    assert gf2.betti_ideal.beta(2, 6) == 1


def test_sigma_consistency_in_columns():
    # spot-check one coefficient: e_3 ^ e_2e_4 = -e_2e_3e_4
    I = MonomialIdeal(E5, [])
    rows, cols, entries = cartan_differential(I, 1)
    c = cols.index((bits_of((2, 4)), (0, 0, 1, 0, 0)))
    ((r, coeff),) = entries[c].items()
    assert rows[r] == (bits_of((2, 3, 4)), (0,) * 5)
    assert coeff == (-1) ** sigma(bits_of((3,)), bits_of((2, 4)))
