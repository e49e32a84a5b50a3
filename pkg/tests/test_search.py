import json
from functools import lru_cache
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import FAMILY_TABLE, input_path
from nsdivisor import (PolarizedContext, SearchQuery, TwoForm, congruence_filter, degree,
                       diagonal_period_matrix, divisibility_predicate, divisor_multiple,
                       divisor_representative, enumerate_divisors, is_primitive, load_document,
                       mixed_power, ns_basis, q_values, satisfies_target, xr_closed_form, xr_recursive)


def test_is_primitive_examples():
    assert is_primitive((0, 1, 0, 0, 0))
    assert not is_primitive((2, 4, -2, 0, 0))
    assert is_primitive((1, -2, -1, 0, 0))
    assert not is_primitive((0, 0, 0))


def test_satisfies_target_examples(family, ctx3):
    _, pns = family
    assert satisfies_target(ctx3, pns, (0, 1, 0, 0, 0), 4)
    assert satisfies_target(ctx3, pns, (0, 0, -1, 0, 0), 6)
    assert not satisfies_target(ctx3, pns, (0, 1, 0, 0, 0), 6)
    for d in (1, 2, 7):
        assert not satisfies_target(ctx3, pns, (0, 0, 0, 0, 0), d)
    with pytest.raises(ValueError):
        satisfies_target(ctx3, pns, (0, 1, 0, 0, 0), 0)


def test_congruence_filter_examples(ctx3):
    deg6 = TwoForm.theta(3)
    deg4 = TwoForm.from_dict(3, {(1, 4): -1, (2, 5): -1})
    assert degree(ctx3, deg4) == 4
    assert congruence_filter(ctx3, deg6, 6)
    assert not congruence_filter(ctx3, deg4, 6)


def test_divisor_representative_family(family, ctx3):
    _, pns = family
    beta = TwoForm(3, divisor_representative(ctx3, pns, (0, 1, 0, 0, 0), 4))
    assert degree(ctx3, beta) == 4
    assert mixed_power(ctx3, beta, 2) == 0 and mixed_power(ctx3, beta, 3) == 0
    assert oracle.intersection(3, [list(beta.coeffs)] * 3) == 0
    assert oracle.degree(3, list(beta.coeffs)) == 4
    assert pns.contains(beta.coeffs)


def test_divisor_representative_product(product, ctx3):
    _, pns = product
    d1 = TwoForm.from_dict(3, {(1, 4): -1})
    q = pns.project(d1 + 3 * ctx3.theta)
    assert divisor_representative(ctx3, pns, q, 2) == d1.coeffs


def test_divisor_representative_inexact_division(family, ctx3):
    _, pns = family
    with pytest.raises(ArithmeticError):
        divisor_representative(ctx3, pns, (0, 1, 0, 0, 0), 5)


def test_enumerate_family_table(family, ctx3):
    _, pns = family
    recs = enumerate_divisors(ctx3, pns, SearchQuery(3, 6))
    got = {(r.quotient_coords, r.divisor_degree, r.complement_degree) for r in recs}
    assert got == set(FAMILY_TABLE)
    assert len(recs) == 13
    assert [r.sort_key() for r in recs] == sorted(r.sort_key() for r in recs)


def test_enumerate_generic_is_empty(generic, ctx3):
    _, pns = generic
    assert enumerate_divisors(ctx3, pns, SearchQuery(3, 6)) == []


def test_enumerate_product_coordinate_divisors(product, ctx3):
    _, pns = product
    recs = enumerate_divisors(ctx3, pns, SearchQuery(1, 2))
    reps = {r.ns_representative for r in recs}
    for i in (1, 2, 3):
        assert TwoForm.from_dict(3, {(i, i + 3): -1}).coeffs in reps
    assert all(r.divisor_degree == 2 and r.complement_degree == 1 for r in recs)


def test_explicit_targets(family, ctx3):
    _, pns = family
    only6 = enumerate_divisors(ctx3, pns, SearchQuery(3, None, (6,)))
    assert {r.divisor_degree for r in only6} == {6} and len(only6) == 4
    both = enumerate_divisors(ctx3, pns, SearchQuery(3, 4, (6,)))
    assert len(both) == 13


def test_search_query_validation():
    with pytest.raises(ValueError):
        SearchQuery(0, 6)
    with pytest.raises(ValueError):
        SearchQuery(2, 0)
    with pytest.raises(ValueError):
        SearchQuery(2, 3, (0,))


def test_records_reverify(family, ctx3):
    _, pns = family
    fact = factorial(ctx3.n - 1)
    for rec in enumerate_divisors(ctx3, pns, SearchQuery(4, 12)):
        d = rec.divisor_degree
        assert is_primitive(rec.quotient_coords)
        assert satisfies_target(ctx3, pns, rec.quotient_coords, d)
        assert congruence_filter(ctx3, pns.lift(rec.quotient_coords), d)
        beta = TwoForm(3, rec.ns_representative)
        assert degree(ctx3, beta) == d
        assert all(mixed_power(ctx3, beta, r) == 0 for r in (2, 3))
        assert list(rec.q_values) == [(-1) ** r * d ** r for r in (2, 3)]
        assert rec.complement_degree == (d // fact if d % fact == 0 else None)


def test_doubling_bound_never_emits_multiples(family, ctx3):
    _, pns = family
    small = enumerate_divisors(ctx3, pns, SearchQuery(2, 12))
    large = enumerate_divisors(ctx3, pns, SearchQuery(4, 12))
    small_set = {r.quotient_coords for r in small}
    assert small_set <= {r.quotient_coords for r in large}
    for r in large:
        for m in range(2, 5):
            assert not any(tuple(m * c for c in s) == r.quotient_coords for s in small_set)


def test_thread_partitioning_is_invisible(family, ctx3, monkeypatch):
    _, pns = family
    query = SearchQuery(3, 30)
    serial = enumerate_divisors(ctx3, pns, query)
    monkeypatch.setenv("NS_DIVISOR_THREADS", "4")
    threaded = enumerate_divisors(ctx3, pns, query)
    assert serial == threaded


def test_dimension_two_sign_pairs():
    ctx = PolarizedContext(2)
    pns = ns_basis(diagonal_period_matrix(2))
    recs = enumerate_divisors(ctx, pns, SearchQuery(2, 4))
    coords = {r.quotient_coords for r in recs}
    assert coords and all(tuple(-c for c in q) in coords for q in coords)
    assert all(r.sign_pair for r in recs)


def test_divisor_multiple(ctx3):
    d1 = TwoForm.from_dict(3, {(1, 4): -1})
    m, z = divisor_multiple(ctx3, 2 * d1 + 5 * ctx3.theta, 4)
    assert (m, z) == (2, d1)
    assert divisor_multiple(ctx3, d1, 2) == (1, d1)
    assert divisor_multiple(ctx3, d1, 3) is None
    assert divisor_multiple(ctx3, TwoForm.from_dict(3, {(1, 4): 1, (2, 5): -2, (3, 6): -2}),
                            6) is None


def test_divisibility_examples():
    assert divisibility_predicate(2, 4)
    assert not divisibility_predicate(2, 3)
    assert not divisibility_predicate(3, 9)
    for m in (-1, 0, 1):
        with pytest.raises(ValueError):
            divisibility_predicate(m, 4)


def test_divisibility_brute_force():
    for n in range(2, 41):
        fact = factorial(n)
        for a in range(2, 41):
            for m in (a, -a):
                assert divisibility_predicate(m, n) == (fact % abs(m ** (n - 1)) == 0)
                # only m = +-2 with n a power of two
                assert divisibility_predicate(m, n) == (a == 2 and n & (n - 1) == 0)


def test_xr_examples():
    for r in range(2, 9):
        assert xr_closed_form(5, 5, r) == 0
    assert xr_closed_form(2, 1, 2) == 3
    assert xr_closed_form(3, 1, 3) == 20 == xr_recursive(3, 1, 3)
    with pytest.raises(ValueError):
        xr_closed_form(1, 1, 1)


def test_xr_closed_form_matches_recursion():
    for r in range(2, 9):
        for d in range(-10, 11):
            for k in range(-10, 11):
                assert xr_closed_form(d, k, r) == xr_recursive(d, k, r)


@lru_cache(maxsize=None)
def _family():
    with open(input_path("family_f3")) as fh:
        return load_document(json.load(fh))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_q_values_of_lift_are_theta_free(coords):
    _, pns = _family()
    ctx = PolarizedContext(3)
    a = pns.lift(coords)
    assert q_values(ctx, a) == q_values(ctx, a - 2 * ctx.theta)
