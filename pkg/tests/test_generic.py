import random
from functools import lru_cache

import pytest

from genpos.algebra import QQ, LinearChange, apply_change, determinant
from genpos.generic import (
    AnnihilatorTable,
    NotQuasiStable,
    annihilator_colon_oracle,
    annihilator_numbers,
    beta_vector,
    certify_gin,
    generic_annihilator_numbers,
    gin,
    is_beta_maximal,
    pommaret_span_formula,
    pommaret_span_hilbert,
)
from genpos.groebner import PolynomialIdeal
from genpos.io import corpus_names, parse_ideal
from genpos.monomial import MonomialIdeal
from genpos.pommaret import invariants_from_basis, monomial_pommaret_basis
from genpos.stability import (
    QUASI_STABLE,
    all_monomial_ideals,
    componentwise_check_direct,
    is_borel_fixed,
    is_quasi_stable,
    is_strongly_stable,
    kind,
)

from _util import M, gin_of, ideal, lt

QQ_CORPUS = [c for c in corpus_names() if ideal(c).field.characteristic == 0]


def poly_ideal(text, field="QQ"):
    n = max(int(v[1:]) for v in text.replace("*", " ").replace("^", " ").replace(",", " ").replace("+", " ").split() if v.startswith("x"))
    names = " ".join("x%d" % k for k in range(1, n + 1))
    return parse_ideal("field: %s\nvars: %s\nI: %s" % (field, names, text)).ideal()


@lru_cache(maxsize=None)
def exhaustive():
    return tuple(all_monomial_ideals(3, 3))


def random_change(n, rng):
    while True:
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if determinant(m, QQ) != 0:
            return LinearChange(m, QQ)


# ---------------------------------------------------------------------------
# gin


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_gin_is_borel_fixed(name):
    G = gin_of(name)
    assert is_borel_fixed(G, 0, G.n - 1)
    assert is_strongly_stable(G)


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_gin_has_the_hilbert_function(name):
    G, J = gin_of(name), lt(name)
    assert G.hilbert_numerator() == J.hilbert_numerator()


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_gin_invariant_under_changes(name):
    I = ideal(name)
    rng = random.Random(name)
    for _ in range(5):
        change = random_change(I.n, rng)
        moved = PolynomialIdeal([apply_change(change, g) for g in I.generators])
        assert gin(moved).gin == gin_of(name)


def test_gin_idempotent_on_strongly_stable():
    bad = [J for J in exhaustive() if is_strongly_stable(J) and gin(J).gin != J]
    assert bad == []


@pytest.mark.parametrize("name", ["c01", "c02", "c03", "c06", "c11", "c13", "c18", "moves_two"])
def test_certificate_agrees_with_generic_branch(name):
    a = gin(ideal(name), method="generic-branch")
    b = gin(ideal(name))
    assert a.gin == b.gin
    assert a.method == "generic-branch"


def test_certificate_returns_none_or_gin():
    for name in QQ_CORPUS:
        J = certify_gin(ideal(name))
        assert J is None or J == gin_of(name)


def test_generic_branch_ledger():
    r = gin(ideal("c01"), method="generic-branch")
    assert r.ledger
    assert all(s for s in r.ledger_strings())


def test_gin_trivial_cases():
    assert gin(M(3, "x1")).gin == M(3, "x1")
    assert gin(M(1, "x1^3")).gin == M(1, "x1^3")
    assert gin(MonomialIdeal((), 2)).gin.is_zero()
    with pytest.raises(ValueError):
        gin(ideal("c01"), method="dice")


def test_gin_char_p_frobenius():
    I = parse_ideal("field: GF(5)\nvars: x1 x2\nI: x1^5, x2^5").ideal()
    G = gin(I).gin
    assert G == M(2, "x1^5, x2^5")
    assert not is_strongly_stable(G)
    assert is_borel_fixed(G, 5)


def test_gin_char_p_small_ideal_is_p_borel():
    I = parse_ideal("field: GF(3)\nvars: x1 x2 x3\nI: x1^2, x1*x2, x2*x3, x2^3").ideal()
    G = gin(I).gin
    assert is_borel_fixed(G, 3)
    assert G.hilbert_numerator() == I.leading_ideal().hilbert_numerator()


# ---------------------------------------------------------------------------
# beta-vectors and beta-maximality


def test_beta_vector_zero_component():
    b = beta_vector(M(2, "x1^3"), 2)
    assert b == (0, 0)
    assert b.zero


def test_beta_vector_sums_to_graded_dimension():
    for name in QQ_CORPUS:
        J = lt(name)
        for q in range(J.min_degree, J.max_degree + 2):
            assert sum(beta_vector(J, q)) == J.graded_dimension(q)


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_gin_position_implies_beta_maximal(name):
    if lt(name) == gin_of(name):
        assert is_beta_maximal(ideal(name)).holds


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_beta_maximal_implies_quasi_stable(name):
    if is_beta_maximal(ideal(name)).holds:
        assert is_quasi_stable(lt(name))


def test_not_quasi_stable_short_circuits():
    r = is_beta_maximal(ideal("c01"))
    assert not r.holds
    assert r.failing_q is None
    assert beta_vector(lt("c01"), 2) != beta_vector(gin_of("c01"), 2)


def test_beta_maximal_reports_failing_degree():
    r = is_beta_maximal(ideal("c02"))
    assert (r.holds, r.failing_q) == (False, 2)


def test_strongly_stable_lt_that_is_not_the_gin():
    I1 = poly_ideal("x1^2, x1*x2 + x2^2, x1*x3")
    J = I1.leading_ideal()
    assert is_strongly_stable(J)
    assert gin(I1).gin != J
    assert not is_beta_maximal(I1).holds
    assert is_beta_maximal(J).holds
    assert gin(J).gin == J


def test_gin_position_without_componentwise_quasi_stability():
    assert lt("c23") == gin_of("c23")
    assert not componentwise_check_direct(ideal("c23"), kind(QUASI_STABLE, componentwise=True)).holds


# ---------------------------------------------------------------------------
# Pommaret spans


def test_span_single_variable_cone():
    J = M(2, "x1")
    assert pommaret_span_hilbert(J, 1, 3) == 3
    assert pommaret_span_formula(J, 1, 3) == 3


def test_span_at_q_counts_the_degree_q_terms():
    for name in QQ_CORPUS:
        J = lt(name)
        q = J.max_degree
        assert pommaret_span_hilbert(J, q, q) == len(J.basis_in_degree(q))


def test_span_rejects_small_s():
    with pytest.raises(ValueError):
        pommaret_span_hilbert(M(2, "x1"), 2, 1)


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_span_enumeration_matches_binomials(name):
    J = lt(name)
    for q in range(J.min_degree, J.max_degree + 2):
        for s in range(q, q + 4):
            assert pommaret_span_hilbert(J, q, s) == pommaret_span_formula(J, q, s)


@pytest.mark.parametrize("name", QQ_CORPUS)
def test_span_equals_hilbert_function_past_regularity(name):
    J = lt(name)
    H = monomial_pommaret_basis(J)
    if not H.finite:
        pytest.skip("not quasi-stable")
    for q in range(H.degree, H.degree + 2):
        for s in range(q, q + 4):
            assert pommaret_span_hilbert(J, q, s) == J.graded_dimension(s)


@pytest.mark.parametrize(
    "name,q",
    [("c01", 2), ("c02", 2), ("c03", 2), ("c04", 2), ("c07", 2), ("c11", 2), ("c12", 4), ("c13", 2), ("c14", 3), ("c17", 3)],
)
def test_smaller_beta_gives_eventually_smaller_span(name, q):
    I, G = lt(name), gin_of(name)
    assert tuple(beta_vector(I, q)) < tuple(beta_vector(G, q))
    s = q + 6
    assert pommaret_span_hilbert(I, q, s) < pommaret_span_hilbert(G, q, s)


# ---------------------------------------------------------------------------
# annihilator numbers


def test_annihilators_two_variables():
    A = annihilator_numbers(M(2, "x1^2, x1*x2"))
    assert A.nonzero() == {(0, 1): 1, (1, 1): 1}
    assert A == annihilator_colon_oracle(M(2, "x1^2, x1*x2"))


def test_annihilators_one_variable():
    assert annihilator_numbers(M(1, "x1")).nonzero() == {(0, 0): 1}


def test_annihilators_c02():
    A = annihilator_numbers(ideal("c02"))
    assert A.nonzero() == {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    assert A == annihilator_colon_oracle(lt("c02"))


def test_generic_annihilators_c02():
    G = M(2, "x1^2, x1*x2^2")
    assert generic_annihilator_numbers(ideal("c02")) == annihilator_numbers(G)
    assert annihilator_numbers(G) == annihilator_colon_oracle(G)


def test_generic_annihilators_in_gin_position():
    assert generic_annihilator_numbers(ideal("c23")) == annihilator_numbers(ideal("c23"))


def test_annihilators_need_quasi_stable():
    with pytest.raises(NotQuasiStable):
        annihilator_numbers(ideal("c01"))


def qs_small():
    out = [J for J in exhaustive() if not J.is_zero() and is_quasi_stable(J)]
    out += [J for J in all_monomial_ideals(2, 4) if not J.is_zero() and is_quasi_stable(J)]
    return out


def test_annihilators_match_colon_oracle_exhaustively():
    bad = [J for J in qs_small() if annihilator_numbers(J) != annihilator_colon_oracle(J)]
    assert bad == []


def test_annihilator_rows_detect_depth():
    bad = []
    for J in qs_small():
        A = annihilator_numbers(J)
        depth = invariants_from_basis(monomial_pommaret_basis(J))["depth"]
        zero_rows = [i for i in range(J.n) if A.row_sum(i) == 0]
        if zero_rows != list(range(depth)):
            bad.append(J)
    assert bad == []


def test_table_equality_ignores_zero_entries():
    assert AnnihilatorTable(2, {(0, 1): 1, (1, 0): 0}) == AnnihilatorTable(2, {(0, 1): 1})
    assert AnnihilatorTable(2, {(0, 1): 1})[(1, 3)] == 0
