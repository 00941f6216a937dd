import pytest
from hypothesis import given, strategies as st

from quiverflags.fixtures import a1, a2, a3, d4
from quiverflags.quiver import Filtration, FiltrationError, Quiver, QuiverError, star, strict_filtrations

QUIVERS = [a1(), a2(), a3(), d4()]


def vec(n, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(tuple)


@st.composite
def quiver_and_vectors(draw):
    q = draw(st.sampled_from(QUIVERS))
    return q, draw(vec(q.n)), draw(vec(q.n)), draw(st.sampled_from(q.vertices))


def test_euler_form_examples():
    q = a2()
    assert q.euler_form((1, 0), (0, 1)) == -1
    assert q.euler_form((1, 1), (1, 1)) == 1
    for q in QUIVERS:
        assert q.euler_form((1,) * q.n, (0,) * q.n) == 0


def test_reflect_dim_examples():
    q = a2()
    assert q.reflect_dim(2, (1, 1)) == (1, 0)
    assert q.reflect_dim(2, (0, 1)) == (0, -1)


def test_reflect_quiver():
    q = a2()
    r = q.reflect(2)
    assert [(a.name, a.source, a.target) for a in r.arrows] == [("alpha*", 2, 1)]
    assert r.reflect(2) == q
    r3 = a3().reflect(3)
    assert {(a.source, a.target) for a in r3.arrows} == {(1, 2), (3, 2)}
    assert star("alpha") == "alpha*" and star("alpha*") == "alpha"
    with pytest.raises(QuiverError):
        q.reflect(7)


def test_word_to_filtration_examples():
    assert a2().word_to_filtration((1, 2)).levels == ((0, 0), (0, 1), (1, 1))
    assert a2().word_to_filtration((2, 1)).levels == ((0, 0), (1, 0), (1, 1))
    assert a1().word_to_filtration((1, 1)).levels == ((0,), (1,), (2,))
    with pytest.raises(QuiverError):
        a2().word_to_filtration((3,))


def test_admissible_orderings():
    assert a2().admissible_orderings() == [(2, 1)]
    assert a1().admissible_orderings() == [(1,)]
    assert a3().admissible_orderings() == [(3, 2, 1)]
    assert len(d4().admissible_orderings()) == 6
    cyclic = Quiver.from_edges([1, 2], [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(QuiverError):
        cyclic.admissible_orderings()


@given(quiver_and_vectors())
def test_reflection_is_an_involution(data):
    q, d, _, a = data
    assert q.reflect_dim(a, q.reflect_dim(a, d)) == d


@given(quiver_and_vectors())
def test_symmetric_form_is_reflection_invariant(data):
    q, d, e, a = data
    r = q.reflect(a)
    sd, se = q.reflect_dim(a, d), q.reflect_dim(a, e)
    assert q.euler_form(d, e) + q.euler_form(e, d) == r.euler_form(sd, se) + r.euler_form(se, sd)


@given(st.sampled_from(QUIVERS).flatmap(lambda q: st.tuples(st.just(q), st.lists(st.sampled_from(q.vertices), min_size=1, max_size=6))))
def test_word_filtrations_are_valid(data):
    q, w = data
    f = q.word_to_filtration(w)
    assert f.nu == len(w)
    assert sum(f.top) == len(w)


def test_filtration_validation():
    with pytest.raises(FiltrationError):
        Filtration(((0, 0),))
    with pytest.raises(FiltrationError):
        Filtration(((1, 0), (1, 1)))
    with pytest.raises(FiltrationError):
        Filtration(((0, 0), (1, 1), (1, 0)))
    f = Filtration(((0, 0), (1, 0), (1, 0), (2, 1)))
    assert f.strict().levels == ((0, 0), (1, 0), (2, 1))
    assert f.dual().levels == ((0, 0), (1, 1), (1, 1), (2, 1))


def test_strict_filtrations_count():
    # strict chains in a box of a single vertex of dim n are compositions of n
    assert len(strict_filtrations((3,))) == 4
    assert len(strict_filtrations((1, 1))) == 3
