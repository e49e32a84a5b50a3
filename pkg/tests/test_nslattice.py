import json
import random
import warnings

import pytest

import golden
import oracle
import sympy as sp
from conftest import FAMILY_BASIS_14, input_path
from support import computed_rows_reduced, same_row_space, symbols_of, transcribed_rows
from nsdivisor import (InputFormatError, NotInNS, PeriodMatrix, PeriodMatrixError,
                       PolarizedContext, TwoForm, diagonal_period_matrix, dump_document,
                       family_period_matrix, generic_period_matrix, load_document, ns_basis,
                       q_form, reduced_coordinates)
from nsdivisor.exterior import pair_index
from nsdivisor.intlinalg import lattice_equal, smith_diagonal
from nsdivisor.nslattice import constraint_polynomials, from_reduced_coordinates, ns_constraints


def test_family_lattice(family):
    tau, pns = family
    assert pns.rank == 6 and pns.quotient_rank == 5
    fresh = ns_basis(tau)
    quotient_14 = [reduced_coordinates(3, r) for r in fresh.quotient_basis]
    assert lattice_equal(quotient_14, FAMILY_BASIS_14)


def test_generic_lattice(generic):
    _, pns = generic
    assert pns.rank == 1 and pns.quotient_rank == 0
    assert list(pns.ns_basis[0]) in (list(pns.theta), [-x for x in pns.theta])


def test_product_lattice(product):
    _, pns = product
    blades = [[-1 if p == (i, i + 3) else 0 for p in pair_index(3)] for i in (1, 2, 3)]
    assert pns.rank == 3 and pns.quotient_rank == 2
    assert lattice_equal([list(r) for r in pns.ns_basis], blades)


@pytest.mark.parametrize("name,tau,syms", [
    ("family", family_period_matrix(3), sp.symbols("s")),
    ("product", diagonal_period_matrix(3), sp.symbols("s1 s2 s3")),
    ("generic", generic_period_matrix(3), sp.symbols("t11 t12 t13 t22 t23 t33")),
])
def test_rank_matches_oracle(name, tau, syms):
    syms = syms if isinstance(syms, tuple) else (syms,)
    sym_tau = [[sp.sympify(str(tau[i, j]), locals={str(s): s for s in syms}) for j in range(3)]
               for i in range(3)]
    expected = len(oracle.ns_rational_kernel(3, sym_tau, list(syms)))
    assert ns_basis(tau).rank == expected


def test_dimension_one_has_no_constraints():
    tau = family_period_matrix(1)
    assert ns_constraints(tau) == []
    pns = ns_basis(tau)
    assert pns.rank == 1 and pns.quotient_rank == 0


def test_dimension_two_product():
    pns = ns_basis(diagonal_period_matrix(2))
    assert pns.rank == 2 and pns.quotient_rank == 1


def test_kernel_saturation(family, product):
    for pns in (family[1], product[1], ns_basis(diagonal_period_matrix(4))):
        assert all(e == 1 for e in smith_diagonal([list(r) for r in pns.ns_basis]))


def test_theta_is_primitive_first_basis_vector(family):
    _, pns = family
    assert lattice_equal([list(r) for r in pns.full_basis], [list(r) for r in pns.ns_basis])
    assert pns.project(pns.theta) == [0] * 5


def test_reference_basis_satisfies_every_constraint():
    tau = family_period_matrix(3)
    _, rows = constraint_polynomials(tau)
    for b in FAMILY_BASIS_14:
        a = from_reduced_coordinates(3, b)
        for row in rows:
            total = sum((c.scale(x) for c, x in zip(row, a) if x), start=row[0].scale(0))
            assert total.is_zero()


def test_published_equations_span_constraints_generic():
    tau = generic_period_matrix(3)
    syms = symbols_of(tau)
    ok, ranks = same_row_space(computed_rows_reduced(tau),
                               transcribed_rows(golden.TAU_EQUATIONS, syms), syms)
    assert ok, ranks


def test_family_sigma_equations_match():
    tau = family_period_matrix(3)
    syms = symbols_of(tau)
    ok, ranks = same_row_space(computed_rows_reduced(tau),
                               transcribed_rows(golden.FAMILY_EQUATIONS, syms), syms)
    assert ok, ranks


def test_project_examples(product):
    _, pns = product
    rng = random.Random(5)
    alpha1 = TwoForm.from_dict(3, {(1, 4): 1, (2, 5): -2, (3, 6): -2})
    assert pns.project(alpha1) == pns.project(alpha1 + 4 * TwoForm.theta(3))
    # the a36-shift taking alpha_1 to a'14 = 3, a'25 = 0
    assert reduced_coordinates(3, alpha1.coeffs) == [0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]
    shifted = alpha1 - 2 * TwoForm.theta(3)
    assert shifted[(3, 6)] == 0 and shifted[(1, 4)] == 3 and shifted[(2, 5)] == 0
    assert pns.project(shifted) == pns.project(alpha1)
    with pytest.raises(NotInNS):
        pns.project(TwoForm.from_dict(3, {(1, 2): 1}))
    for _ in range(20):
        q = [rng.randint(-9, 9) for _ in range(pns.quotient_rank)]
        assert pns.project(pns.lift(q)) == q


def test_lift_section(family):
    _, pns = family
    ctx = PolarizedContext(3)
    assert pns.lift([0] * 5).is_zero()
    rng = random.Random(9)
    for _ in range(25):
        q = [rng.randint(-4, 4) for _ in range(5)]
        assert pns.project(pns.lift(q)) == q
        m = rng.randint(-5, 5)
        for r in (2, 3):
            assert q_form(ctx, pns.lift(q) + m * ctx.theta, r) == q_form(ctx, pns.lift(q), r)
    with pytest.raises(ValueError):
        pns.lift([1, 2])


def test_with_quotient_basis_rejects_non_basis(family):
    tau, pns = family
    rows = [list(r) for r in pns.quotient_basis]
    doubled = [[2 * x for x in rows[0]]] + rows[1:]
    with pytest.raises(ValueError):
        pns.with_quotient_basis(doubled)
    with pytest.raises(NotInNS):
        pns.with_quotient_basis([[1] + [0] * 14] + rows[1:])


def test_asymmetric_tau_rejected():
    with pytest.raises(PeriodMatrixError, match=r"tau\[1\]\[2\]"):
        PeriodMatrix.from_strings(2, ["s"], [["s", "1"], ["2", "s"]])


def test_malformed_entry_names_position():
    doc = {"n": 2, "symbols": [{"name": "s", "square": None}], "tau": [["s", "2*"], ["2*", "s"]]}
    with pytest.raises(InputFormatError, match=r"tau\[0\]\[1\].*column"):
        load_document(doc)


@pytest.mark.parametrize("doc,pattern", [
    ({"n": 2, "symbols": [], "tau": [["1", "0"], ["0", "1"]], "extra": 1}, "unknown field"),
    ({"n": 2, "symbols": []}, "missing field"),
    ({"n": 0, "symbols": [], "tau": []}, "'n'"),
    ({"n": 2, "symbols": [], "tau": [["1", "0"]]}, "'tau'"),
    ({"n": 2, "symbols": [{"name": "s", "square": "x"}], "tau": [["s", "0"], ["0", "s"]]},
     r"symbols\[0\].square"),
    ({"n": 2, "symbols": [], "tau": [["1", "0"], ["0", "1"]], "quotient_basis": [[1, 2]]},
     r"quotient_basis\[0\].*length"),
])
def test_document_format_errors(doc, pattern):
    with pytest.raises(InputFormatError, match=pattern):
        load_document(doc)


def test_invalid_json_text():
    with pytest.raises(InputFormatError, match="invalid JSON"):
        load_document("{not json")


def test_quotient_basis_domain_error():
    with open(input_path("family_f3")) as fh:
        doc = json.load(fh)
    doc["quotient_basis"] = doc["quotient_basis"][:4] + [doc["quotient_basis"][0]]
    with pytest.raises(PeriodMatrixError) as err:
        load_document(doc)
    assert not isinstance(err.value, InputFormatError)


def test_document_round_trip(family):
    tau, pns = family
    doc = dump_document(tau, pns)
    tau2, pns2 = load_document(json.loads(json.dumps(doc)))
    assert pns2 == pns and tau2 == tau


def test_numeric_check_only_warns():
    doc = {"n": 1, "symbols": [{"name": "s", "square": None}], "tau": [["s"]],
           "sample": {"s": [0.0, -1.0]}}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        _, pns = load_document(doc)
    assert pns.rank == 1
    assert any("positive definite" in str(w.message) for w in caught)
    doc["sample"] = {"s": [0.0, 1.0]}
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        load_document(doc)


def test_quadratic_symbol_gives_extra_classes():
    # tau = i: E_i has complex multiplication, so NS(E_i x E_i) has rank 4
    tau = PeriodMatrix.from_strings(2, [("s", -1)], [["s", "0"], ["0", "s"]])
    assert ns_basis(tau).rank == 4
