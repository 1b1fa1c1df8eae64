import itertools
import re
from math import comb
from pathlib import Path

import pytest

import genpos
from genpos.algebra import apply_change, apply_move, cls, terms_of_degree
from genpos.groebner import PolynomialIdeal, leading_tuple
from genpos.io import corpus_names, load_corpus, parse_ideal
from genpos.pommaret import monomial_pommaret_basis
from genpos.stability import (
    DQS,
    NOETHER,
    QUASI_STABLE,
    STABLE,
    STRONGLY_STABLE,
    PositionKind,
    borel,
    check_position,
    componentwise_check_direct,
    kind,
    obstructions,
    position_holds,
)
from genpos.transform import (
    FieldTooSmall,
    TransformConfig,
    TransformError,
    find_obstruction_move,
    transform_componentwise,
    transform_to_position,
)

from _util import M, ideal, term

SS = kind(STRONGLY_STABLE)
CORPUS = corpus_names()


def run(I, target=SS, **kw):
    return transform_to_position(I, TransformConfig(target, **kw))


def moves(r):
    return [(j, i, int(a)) for j, i, a in r.moves]


def strictly_increasing(trace):
    return all(a < b for a, b in zip(trace, trace[1:]))


def nondecreasing(trace):
    return all(a <= b for a, b in zip(trace, trace[1:]))


def lt_of(polys):
    return PolynomialIdeal(list(polys)).leading_ideal()


# ---------------------------------------------------------------------------
# the two-move example


def test_moves_two_first_obstruction():
    G = ideal("moves_two").groebner_basis()
    assert find_obstruction_move(G, SS) == (3, 1)


def test_moves_two_intermediate_lt():
    I = ideal("moves_two")
    assert lt_of(apply_move(3, 1, 1, g) for g in I.generators) == M(3, "x1^3, x1*x2^2, x2^3, x2^2*x3^3")


def test_moves_two_sequence_and_final_lt():
    r = run(ideal("moves_two"))
    assert moves(r) == [(3, 1, 1), (2, 1, 1)]
    assert r.final_lt == M(3, "x1^3, x1^2*x2, x1*x2^2, x2^4, x1^2*x3^3")
    assert r.iterations == 2
    assert strictly_increasing(r.ls_trace)


def test_moves_two_change_reproduces_basis():
    I = ideal("moves_two")
    r = run(I)
    assert PolynomialIdeal([apply_change(r.change, g) for g in I.generators]) == r.ideal()


# ---------------------------------------------------------------------------
# the example with a choice between two moves


def test_moves_choice_both_obstructions_present():
    J = ideal("moves_choice").leading_ideal()
    found = {(o.j, o.i, o.witness) for o in obstructions(J, SS)}
    assert (2, 1, term(3, "x1*x3")) in found
    assert (3, 2, term(3, "x2^2")) in found


def test_moves_choice_selected_move():
    G = ideal("moves_choice").groebner_basis()
    assert find_obstruction_move(G, SS) == (2, 1)


def test_moves_choice_first_branch():
    I = ideal("moves_choice")
    assert lt_of(apply_move(2, 1, 1, g) for g in I.generators) == M(3, "x1^2, x1*x2, x1*x3, x2^3, x2^2*x3")
    r = run(I)
    assert moves(r) == [(2, 1, 1)]
    assert r.final_lt == M(3, "x1^2, x1*x2, x1*x3, x2^3, x2^2*x3")


def test_moves_choice_second_branch():
    # the substitution removing the obstruction x2 * (x2*x3)/x3 is x3 -> x3 + x2
    I = ideal("moves_choice")
    once = [apply_move(3, 2, 1, g) for g in I.generators]
    assert not position_holds(PolynomialIdeal(once), SS).holds
    twice = PolynomialIdeal([apply_move(2, 1, 1, g) for g in once])
    assert twice.leading_ideal() == M(3, "x1^2, x1*x2, x2^2, x1*x3^2")

    r = run(I, initial_moves=((3, 2),))
    assert moves(r) == [(3, 2, 1), (2, 1, 1)]
    assert r.final_lt == M(3, "x1^2, x1*x2, x2^2, x1*x3^2")
    assert r.final_lt != run(I).final_lt
    assert strictly_increasing(r.ls_trace)


def test_moves_choice_stated_second_lt():
    # printed as lt = <x1^2, x1x2, x2^3, x2x3> after x3 -> x3 + x1
    I = ideal("moves_choice")
    assert lt_of(apply_move(3, 1, 1, g) for g in I.generators) == M(3, "x1^2, x1*x2, x2^3, x2*x3")


def test_moves_choice_stated_composite():
    # stated: x3 -> x3 + x1, then x2 -> x2 + x1, gives <x1^2, x1x2, x2^2, x1x3^2>
    r = run(ideal("moves_choice"), initial_moves=((3, 1),))
    assert moves(r) == [(3, 1, 1), (2, 1, 1)]
    assert r.final_lt == M(3, "x1^2, x1*x2, x2^2, x1*x3^2")


def test_forced_move_without_progress_is_noted():
    r = run(ideal("moves_choice"), initial_moves=((3, 1),))
    assert r.notes
    assert r.ls_trace[0] == r.ls_trace[1]
    assert position_holds(r.ideal(), SS).holds


# ---------------------------------------------------------------------------
# lowest-degree strategy remark


def test_lowest_degree_stated_lt():
    assert ideal("lowest_degree").leading_ideal() == M(
        3, "x1^3, x1^2*x2, x1^2*x3, x1*x2^3, x2^3*x3, x2^5"
    )


def test_lowest_degree_move_creates_lower_obstruction():
    I = ideal("lowest_degree")
    J = I.leading_ideal()
    assert all(sum(o.witness) != 3 for o in obstructions(J, SS))
    assert term(3, "x2^4") in {o.witness for o in obstructions(J, SS)}
    moved = lt_of(apply_move(3, 2, 1, g) for g in I.generators)
    assert moved == M(3, "x1^3, x1^2*x2, x2^3, x1^2*x3^3")
    assert term(3, "x1*x2^2") in {o.witness for o in obstructions(moved, SS)}


@pytest.mark.parametrize("forced", [(), ((3, 2),)])
def test_lowest_degree_terminates(forced):
    r = run(ideal("lowest_degree"), initial_moves=forced)
    assert check_position(r.final_lt, SS).holds
    assert strictly_increasing(r.ls_trace)


# ---------------------------------------------------------------------------
# losing strong stability under an accepted move


def test_lose_strong_start_is_strongly_stable():
    I = ideal("lose_strong")
    assert I.leading_ideal() == M(
        4, "x1^3, x1^2*x2, x1^2*x3, x1^2*x4, x1*x2^3, x1*x2^2*x3, x1*x2^2*x4"
    )
    assert check_position(I.leading_ideal(), SS).holds
    assert run(I).moves == ()


def test_lose_strong_move():
    I = ideal("lose_strong")
    moved = PolynomialIdeal([apply_move(3, 2, 1, g) for g in I.generators])
    J = moved.leading_ideal()
    assert J == M(4, "x1^3, x1^2*x2, x1*x2^2, x1^2*x4, x1^2*x3^2")
    assert term(4, "x1^2*x3") in {o.witness for o in obstructions(J, SS)}
    assert leading_tuple(I.groebner_basis()) < leading_tuple(moved.groebner_basis())


def test_lose_strong_engine_recovers():
    r = run(ideal("lose_strong"), initial_moves=((3, 2),))
    assert r.ls_trace[0] < r.ls_trace[1]
    assert r.final_lt != M(4, "x1^3, x1^2*x2, x1*x2^2, x1^2*x4, x1^2*x3^2")
    assert check_position(r.final_lt, SS).holds
    assert strictly_increasing(r.ls_trace)


# ---------------------------------------------------------------------------
# soundness over the corpus


_REG = {}


def reg_of(name):
    # regularity read off the Pommaret basis in quasi-stable position
    if name not in _REG:
        J = run(ideal(name), kind(QUASI_STABLE)).final_lt
        _REG[name] = monomial_pommaret_basis(J).degree
    return _REG[name]


def targets(n):
    out = [kind(QUASI_STABLE), kind(STABLE), kind(STRONGLY_STABLE), NOETHER, DQS, borel()]
    for ell in range(n):
        for base in (QUASI_STABLE, STABLE, STRONGLY_STABLE):
            out.append(kind(base, ell))
            out.append(kind(base, ell, weak=True))
    return out


def corpus_targets():
    for name in CORPUS:
        for t in targets(load_corpus(name).n):
            yield pytest.param(name, t, id="%s-%s" % (name, t.name))


@pytest.mark.parametrize("name,target", list(corpus_targets()))
def test_corpus_reaches_target(name, target):
    I = ideal(name)
    r = run(I, target)
    assert position_holds(r.ideal(), target).holds
    assert strictly_increasing(r.ls_trace[len(r.ls_trace) - len(r.inner_counts) - 1 :])
    top = reg_of(name) + 2
    out = r.ideal()
    assert all(I.graded_dimension(d) == out.graded_dimension(d) for d in range(top + 1))
    deg = max(g.degree for g in I.groebner_basis())
    assert all(c <= 2 * deg * I.n + 1 for c in r.inner_counts)


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_change_matches_basis(name):
    I = ideal(name)
    r = run(I)
    assert PolynomialIdeal([apply_change(r.change, g) for g in I.generators]) == r.ideal()


def test_already_in_position_is_identity():
    r = run(ideal("c24"))
    assert r.change.is_identity()
    assert r.iterations == 0


def test_caps():
    with pytest.raises(TransformError):
        run(ideal("moves_two"), max_outer_iterations=1)
    with pytest.raises(ValueError):
        TransformConfig(SS, max_outer_iterations=0)


def test_random_values_reach_target():
    r = run(ideal("c01"), random_values=True, seed=3)
    assert check_position(r.final_lt, SS).holds
    assert strictly_increasing(r.ls_trace)


# ---------------------------------------------------------------------------
# componentwise


def test_componentwise_c02():
    I = ideal("c02")
    r = transform_componentwise(I, QUASI_STABLE, TransformConfig(kind(QUASI_STABLE, componentwise=True)))
    assert componentwise_check_direct(r.ideal(), kind(QUASI_STABLE, componentwise=True)).holds
    assert nondecreasing(r.ls_trace)


def test_componentwise_regularity_example():
    I = parse_ideal("vars: x1 x2 x3\nI: x1^5, x1*x2^4, x1^3*x2^3").ideal()
    k = kind(QUASI_STABLE, componentwise=True)
    r = transform_componentwise(I, QUASI_STABLE, TransformConfig(k))
    assert componentwise_check_direct(r.ideal(), k).holds


@pytest.mark.parametrize("name", ["c22", "c24"])
def test_componentwise_noop(name):
    I = ideal(name)
    k = kind(QUASI_STABLE, componentwise=True)
    if not componentwise_check_direct(I, k).holds:
        pytest.skip("not componentwise quasi-stable")
    r = transform_componentwise(I, QUASI_STABLE, TransformConfig(k))
    assert r.moves == () or componentwise_check_direct(r.ideal(), k).holds


@pytest.mark.parametrize("base", [QUASI_STABLE, STABLE, STRONGLY_STABLE])
@pytest.mark.parametrize("name", ["c02", "c09", "c11", "c13", "c18", "c23"])
def test_componentwise_corpus(name, base):
    I = ideal(name)
    k = kind(base, componentwise=True)
    r = transform_to_position(I, TransformConfig(k))
    assert componentwise_check_direct(r.ideal(), k).holds
    assert nondecreasing(r.ls_trace)
    out = r.ideal()
    assert all(I.graded_dimension(d) == out.graded_dimension(d) for d in range(reg_of(name) + 3))


def test_componentwise_gin_position_needs_equal_tuple_move():
    # lt already equals gin, so only a move keeping the leading tuple can help
    I = ideal("c23")
    k = kind(QUASI_STABLE, componentwise=True)
    r = transform_to_position(I, TransformConfig(k))
    assert componentwise_check_direct(r.ideal(), k).holds
    assert r.final_lt == I.leading_ideal()
    assert r.notes


# ---------------------------------------------------------------------------
# positive characteristic


def p_closed(J, p):
    """Brute force: every p-admissible move keeps every term of J up to one
    degree past the generators inside J."""
    n = J.n
    top = J.max_degree + 1
    for d in range(1, top + 1):
        for t in terms_of_degree(n, d):
            if not J.contains(t):
                continue
            for j in range(2, n + 1):
                for s in range(1, t[j - 1] + 1):
                    if comb(t[j - 1], s) % p == 0:
                        continue
                    for i in range(1, j):
                        u = list(t)
                        u[j - 1] -= s
                        u[i - 1] += s
                        if not J.contains(tuple(u)):
                            return False
    return True


def in_char(name, p):
    text = (Path(genpos.__file__).parent / "corpus" / (name + ".ideal")).read_text()
    return parse_ideal(re.sub(r"field: .*", "field: GF(%d)" % p, text)).ideal()


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("name", CORPUS)
def test_char_p(name, p):
    I = in_char(name, p)
    target = kind(STRONGLY_STABLE, p=True)
    try:
        r = run(I, target)
    except FieldTooSmall:
        return
    assert check_position(r.final_lt, target, p).holds
    assert p_closed(r.final_lt, p)
    assert strictly_increasing(r.ls_trace)


def test_p_closed_oracle_agrees_with_checker():
    from genpos.stability import all_monomial_ideals

    for p in (2, 3):
        for J in all_monomial_ideals(3, 3):
            assert p_closed(J, p) == check_position(J, kind(STRONGLY_STABLE, p=True), p).holds


def test_field_too_small_is_reported():
    seen = 0
    for name, p in itertools.product(CORPUS, (2, 3)):
        try:
            run(in_char(name, p), kind(STRONGLY_STABLE, p=True))
        except FieldTooSmall as e:
            assert "field too small" in str(e)
            seen += 1
    assert seen > 0


def test_schedule_must_not_repeat():
    with pytest.raises(ValueError):
        TransformConfig(kind(STRONGLY_STABLE, p=True), schedule=(1, 1))
