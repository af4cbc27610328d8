import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import closure_1d, f2_is_irreducible, f2_mask_mul, poly_mul
from qfctool import gf2x
from qfctool.laurent import GF, LaurentPoly, parse, render
from qfctool.monoid import FgMonoid
from qfctool.oracle import (EXACT, WITHIN_RADIUS, BudgetExceeded, FuzzConfig, NegativeExponent,
                            X_TIMES_X_PLUS_1, agreement_check, check_F2_witness,
                            enumerate_polynomials, fuzz_monoid_algebra, irreducibles_F2,
                            no_monomial_invariant_F2, qfc_shiftable_1d, random_algebra_element,
                            strong_qfc_witness_F2, verify_counterexample)

F2 = GF(2)


def Z(*vals):
    return FgMonoid.integers(vals)


def f2(text):
    return parse(text, 1, F2)


def independent_recheck(M_vals, cx, prop, p, radius=40):
    f, g = cx.f.terms, cx.g.terms
    prod = poly_mul(f, g, p)
    assert prod == cx.product.terms
    closure = closure_1d(M_vals, 200, 0)
    assert all(e[0] in closure for e in prod)
    fs, gs = [e[0] for e in f], [e[0] for e in g]
    ok_f = {s for s in range(-radius, radius + 1) if all(x + s in closure for x in fs)}
    ok_g = {s for s in range(-radius, radius + 1) if all(x + s in closure for x in gs)}
    if prop == "qfc":
        return not (ok_f and ok_g)
    if prop == "pfc":
        return not any(-s in ok_g for s in ok_f)
    return not (0 in ok_f and 0 in ok_g)


def test_two_gives_x_plus_one_squared():
    r = fuzz_monoid_algebra(Z(2), FuzzConfig(((-1,), (3,)), "qfc", 2))
    pairs = {(render(c.f), render(c.g)) for c in r.counterexamples}
    assert ("1 + x1", "1 + x1") in pairs
    cx = next(c for c in r.counterexamples if render(c.f) == "1 + x1" == render(c.g))
    assert cx.product == f2("1 + x1^2") and cx.obstruction == EXACT


def test_three_five_has_no_qfc_counterexample():
    r = fuzz_monoid_algebra(Z(3, 5), FuzzConfig(((0,), (8,)), "qfc", 2))
    assert r.counterexamples == [] and not r.budget_exceeded


def test_naturals_pfc_clean():
    r = fuzz_monoid_algebra(Z(1), FuzzConfig(((-2,), (4,)), "pfc", 2))
    assert r.counterexamples == []


def test_two_three_pfc_counterexample():
    r = fuzz_monoid_algebra(Z(2, 3), FuzzConfig(((-2,), (6,)), "pfc", 2, max_counterexamples=3))
    assert r.counterexamples
    for cx in r.counterexamples:
        assert cx.obstruction == EXACT
        assert independent_recheck([2, 3], cx, "pfc", 2)


@pytest.mark.parametrize("vals,prop", [((2,), "qfc"), ((2,), "pfc"), ((2, 3), "fc"),
                                       ((3, 4), "pfc"), ((2, -4), "qfc")])
def test_counterexamples_recheck(vals, prop):
    M = Z(*vals)
    r = fuzz_monoid_algebra(M, FuzzConfig(((-2,), (4,)), prop, 2, max_counterexamples=5))
    for cx in r.counterexamples:
        assert verify_counterexample(M, cx, prop, 40)
        assert independent_recheck(list(vals), cx, prop, 2)


def test_residue_rule_matches_shift_search():
    rng = random.Random(9)
    for vals in ([2], [3, 5], [2, 3], [4, 6], [-3], [2, -4], [6, 9, 15]):
        closure = closure_1d(vals, 300, 0)
        for _ in range(40):
            supp = tuple(sorted({(rng.randint(-6, 6),) for _ in range(rng.randint(1, 4))}))
            brute = any(all(e[0] + s in closure for e in supp) for s in range(-150, 151))
            assert qfc_shiftable_1d(supp, Z(*vals)) == brute, (vals, supp)


def test_fuzz_in_two_variables_is_evidence():
    M = FgMonoid([(2, 0), (0, 1)])
    r = fuzz_monoid_algebra(M, FuzzConfig(((0, 0), (1, 1)), "qfc", 2, radius=3))
    assert not r.exact
    assert r.counterexamples and all(c.obstruction == WITHIN_RADIUS for c in r.counterexamples)


def test_agreement_examples():
    box = ((-2,), (4,))
    for vals in ([2], [3, 5], [1, -1]):
        assert agreement_check(Z(*vals), FuzzConfig(box))


def test_enumeration_order_and_budget():
    polys = list(enumerate_polynomials(((0,), (2,)), 3))
    # C(3,k) supports of size k, each with 2^(k-1) coefficient choices
    assert len(polys) == 3 + 3 * 2 + 1 * 4
    assert [len(s) for s, _ in polys] == sorted(len(s) for s, _ in polys)
    assert all(c[0] == 1 for _, c in polys)
    with pytest.raises(BudgetExceeded):
        list(enumerate_polynomials(((0,), (30,)), 2, budget=1000))


def test_config_validation():
    with pytest.raises(ValueError):
        FuzzConfig(((0,), (3,)), "qfc", 4)
    with pytest.raises(ValueError):
        FuzzConfig(((0,), (3,)), "ac", 2)
    assert FuzzConfig(((0, 0), (3, 5))).shift_radius == 10


# F_2 example


def test_irreducibles_examples():
    assert irreducibles_F2(2) == [f2("1 + x1 + x1^2")]
    assert set(map(render, irreducibles_F2(3))) == {"1 + x1 + x1^2", "1 + x1 + x1^3",
                                                     "1 + x1^2 + x1^3"}
    assert len([g for g in irreducibles_F2(4) if max(e[0] for e in g.terms) == 4]) == 3


def test_irreducible_table_matches_brute_force():
    table = set(gf2x.irreducibles(8))
    assert table == {f for f in range(2, 1 << 9) if f2_is_irreducible(f)}


@given(st.integers(1, (1 << 17) - 1))
def test_factor_remultiplies(f):
    parts = gf2x.factor(f)
    prod = 1
    for g, e in parts:
        for _ in range(e):
            prod = f2_mask_mul(prod, g)
        assert gf2x.degree(g) > 8 or f2_is_irreducible(g)
    assert prod == f


def test_witness_examples():
    w = strong_qfc_witness_F2(f2("x1^3 + x1"))
    assert w.shift == 1 and w.factors == [(X_TIMES_X_PLUS_1, 2)]
    w = strong_qfc_witness_F2(f2("x1^2 + x1 + 1"))
    assert w.shift == 0 and w.factors == [(f2("1 + x1 + x1^2"), 1)]
    assert strong_qfc_witness_F2(f2("x1 + 1 + x1^-1")).shift == 1


def test_x_times_x_plus_one_is_in_the_algebra():
    assert f2("x1^2 + x1 + 1") + f2("1") == X_TIMES_X_PLUS_1


@given(st.integers(1, (1 << 13) - 1), st.integers(-6, 0))
def test_witness_remultiplies(mask, offset):
    f = LaurentPoly({(k + offset,): 1 for k in range(13) if mask >> k & 1}, 1, F2)
    w = strong_qfc_witness_F2(f)
    assert check_F2_witness(f, w)
    assert f.shift((w.shift,)) == w.product()
    for g, _ in w.factors:
        if g != X_TIMES_X_PLUS_1:
            m = sum(1 << e[0] for e in g.terms)
            assert min(e[0] for e in g.terms) == 0 and m.bit_length() >= 3
            assert f2_is_irreducible(m)


def test_invariant_examples():
    assert no_monomial_invariant_F2(f2("x1^2 + x1 + 1"))
    assert not no_monomial_invariant_F2(f2("x1^5"))
    a, b = f2("x1^2 + x1 + 1"), f2("x1^3 + x1 + 1")
    assert no_monomial_invariant_F2(a * b + a)
    with pytest.raises(NegativeExponent):
        no_monomial_invariant_F2(f2("x1^-1 + 1"))


def test_invariant_on_random_elements():
    rng = random.Random(1)
    for _ in range(200):
        f = random_algebra_element(rng)
        assert no_monomial_invariant_F2(f)
        at0 = f.coefficient((0,)) % 2
        at1 = sum(f.coefficient(e) for e in f.terms) % 2
        assert at0 == at1
