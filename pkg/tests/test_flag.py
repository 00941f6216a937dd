import itertools

import pytest
from hypothesis import given, strategies as st

from quiverflags.corpus import fiber_cases
from quiverflags.dynkin import IsoClass, classify, iso_classes, rep_of_class
from quiverflags.fixtures import a1, a2, a3, g_filtration, m22, projective
from quiverflags.flag import (
    count_flag_bruteforce,
    count_flag_modq,
    count_subrepresentations,
    decomposition_terms,
    enumerate_flag_points,
    fiber_representation,
    flag_nonempty,
    subrepresentations,
)
from quiverflags.linalg import enumerate_subspaces
from quiverflags.poly import count_fiber_formula
from quiverflags.quiver import Filtration, QuiverError, strict_filtrations
from quiverflags.representation import dualize


def brute_subreps(m, e):
    """Count subrepresentations by testing every tuple of subspaces."""
    q = m.quiver
    choices = [list(enumerate_subspaces(m.p, m.dim_at(v), e[q.index(v)])) for v in q.vertices]
    return sum(1 for bases in itertools.product(*choices) if m.is_subrepresentation(dict(zip(q.vertices, bases))))


def test_count_examples():
    assert count_flag_bruteforce(m22(2), g_filtration()) == 5
    assert count_flag_bruteforce(m22(3), g_filtration()) == 7
    assert count_flag_bruteforce(m22(2), g_filtration(), (2, (0, 0, 1))) == 2
    assert count_flag_bruteforce(m22(2), g_filtration(), (2, (0, 1, 1))) == 3
    assert count_flag_bruteforce(projective(5), a2().word_to_filtration((2, 1))) == 0
    with pytest.raises(QuiverError):
        count_flag_bruteforce(m22(), Filtration(((0, 0), (1, 1))))


def test_modq_examples():
    r = count_flag_modq(m22(2), g_filtration())
    assert (r.residue, r.nonempty) == (1, True)
    assert str(r) == "1 (mod 2)"
    r = count_flag_modq(projective(), a2().word_to_filtration((2, 1)))
    assert (r.residue, r.nonempty) == (0, False)
    for p in (2, 3):
        assert count_flag_modq(m22(p), Filtration.trivial((2, 2))).nonempty


def test_flag_nonempty_examples():
    q = a2()
    P = classify(projective())
    assert flag_nonempty(P, q.word_to_filtration((1, 2)))
    assert not flag_nonempty(P, q.word_to_filtration((2, 1)))
    assert flag_nonempty(IsoClass.simple(q, 1) + IsoClass.simple(q, 2), q.word_to_filtration((1, 2)))


@pytest.mark.parametrize("q,box", [(a2(), (2, 2)), (a3(), (1, 2, 1))])
def test_flag_nonempty_is_field_independent(q, box):
    for d in itertools.product(*(range(x + 1) for x in box)):
        for cls in iso_classes(q, d):
            for f in strict_filtrations(d):
                assert flag_nonempty(cls, f, 2) == flag_nonempty(cls, f, 3)


@pytest.mark.parametrize("q,box", [(a2(), (2, 2)), (a3(), (1, 1, 1))])
@pytest.mark.parametrize("p", [2, 3])
def test_subrepresentations_match_brute_force(q, box, p):
    for d in itertools.product(*(range(x + 1) for x in box)):
        for cls in iso_classes(q, d):
            m = rep_of_class(cls, p)
            for e in itertools.product(*(range(x + 1) for x in d)):
                assert count_subrepresentations(m, e) == brute_subreps(m, e)


def test_flag_points_enumerate_the_count():
    m = m22(3)
    pts = list(enumerate_flag_points(m, g_filtration()))
    assert len(pts) == 7
    assert len({pt.key() for pt in pts}) == 7


@pytest.mark.parametrize("p", [2, 3])
def test_duality(p):
    q = a2()
    for d in [(1, 1), (2, 1), (2, 2), (1, 3)]:
        for cls in iso_classes(q, d):
            m = rep_of_class(cls, p)
            for f in strict_filtrations(d):
                assert count_flag_bruteforce(m, f) == count_flag_bruteforce(dualize(m), f.dual())


def test_fiber_formula_matches_enumeration_small():
    for r, e in fiber_cases(max_entry=1, max_nu=2):
        x = fiber_representation(r, e, 2)
        assert count_fiber_formula(r, e)(2) == count_subrepresentations(x, r)


def test_decomposition_example():
    for p in (2, 3):
        terms = decomposition_terms(m22(p), g_filtration(), 2)
        assert [(t.r, t.stratum_count) for t in terms] == [((0, 0, 1), p), ((0, 1, 1), 1)]
        assert sum(t.fiber(p) * t.stratum_count for t in terms) == 2 * p + 1


@given(st.sampled_from([(1, 2), (2, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1), (2, 2, 1), (1, 2, 2)]), st.sampled_from([2, 3]))
def test_words_on_a2_satisfy_modq(word, p):
    q = a2()
    f = q.word_to_filtration(word)
    for cls in iso_classes(q, f.top):
        m = rep_of_class(cls, p)
        n = count_flag_bruteforce(m, f)
        r = count_flag_modq(m, f)
        assert n % p == r.residue and (n > 0) == r.nonempty


def test_a1_grassmannian():
    m = rep_of_class(IsoClass(a1(), (3,)), 2)
    assert count_flag_bruteforce(m, Filtration(((0,), (1,), (3,)))) == 7
    assert len(list(subrepresentations(m, (2,)))) == 7
