import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quiverflags.dynkin import (
    IsoClass,
    NotDynkinError,
    aut_order,
    classify,
    dynkin_type,
    expected_root_count,
    indecomposable_rep,
    is_dynkin,
    iso_classes,
    positive_roots,
    rep_of_class,
)
from quiverflags.fixtures import a1, a2, a3, d4, m22, pp, projective, s1
from quiverflags.linalg import rank
from quiverflags.quiver import Quiver
from quiverflags.representation import direct_sum, hom_dim

DYNKIN = [a1(), a2(), a3(), d4()]


def test_root_examples():
    assert set(positive_roots(a2())) == {(1, 0), (0, 1), (1, 1)}
    assert len(positive_roots(a3())) == 6
    assert len(positive_roots(d4())) == 12


def test_root_order_is_height_then_lex():
    roots = list(positive_roots(a3()))
    assert roots == sorted(roots, key=lambda r: (sum(r), r))


@pytest.mark.parametrize(
    "quiver,name",
    [
        (Quiver.from_edges(range(6), [(f"e{i}", i, i + 1) for i in range(5)]), "A6"),
        (Quiver.from_edges(range(6), [("a", 0, 1), ("b", 1, 2), ("c", 2, 3), ("d", 3, 4), ("e", 2, 5)]), "E6"),
        (Quiver.from_edges(range(5), [("a", 0, 1), ("b", 1, 2), ("c", 2, 3), ("d", 1, 4)]), "D5"),
    ],
)
def test_root_counts_by_type(quiver, name):
    assert dynkin_type(quiver) == name
    assert len(positive_roots(quiver)) == expected_root_count(name)


def test_non_dynkin_rejected():
    kronecker = Quiver.from_edges([1, 2], [("a", 1, 2), ("b", 1, 2)])
    d4_tilde = Quiver.from_edges(range(5), [(f"e{i}", i, 4) for i in range(4)])
    for q in (kronecker, d4_tilde):
        assert not is_dynkin(q)
        with pytest.raises(NotDynkinError):
            positive_roots(q)


def test_indecomposable_examples():
    x = indecomposable_rep(a2(), (1, 1), 2)
    assert classify(x) == classify(projective()) and hom_dim(x, x) == 1
    assert indecomposable_rep(a2(), (1, 0), 3) == s1(3)
    y = indecomposable_rep(a3(), (1, 1, 1), 2)
    assert hom_dim(y, y) == 1


def test_classify_examples():
    q = a2()
    assert classify(m22()) == IsoClass.from_roots(q, {(1, 1): 1, (1, 0): 1, (0, 1): 1})
    assert classify(pp()) == IsoClass.from_roots(q, {(1, 1): 2})
    assert classify(s1()) == IsoClass.simple(q, 1)
    assert classify(m22()).label() == "01 + 10 + 11"


@pytest.mark.parametrize("q", DYNKIN, ids=lambda q: dynkin_type(q))
@pytest.mark.parametrize("p", [2, 3])
def test_indecomposables_classify_to_themselves(q, p):
    for root in positive_roots(q):
        assert classify(indecomposable_rep(q, root, p)) == IsoClass.from_roots(q, {root: 1})


@pytest.mark.parametrize("q,box", [(a2(), (2, 2)), (a3(), (2, 2, 2))])
def test_classify_inverts_rep_of_class(q, box):
    for d in itertools.product(*(range(x + 1) for x in box)):
        for cls in iso_classes(q, d):
            assert cls.dim == d
            assert classify(rep_of_class(cls, 2)) == cls


def _random_invertible(rng, k, p):
    while True:
        g = rng.integers(0, p, size=(k, k))
        if rank(g, p) == k:
            return g


@st.composite
def classes(draw):
    q = draw(st.sampled_from([a2(), a3(), d4()]))
    n = len(positive_roots(q))
    mults = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    return IsoClass(q, tuple(mults))


@given(classes(), st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_classify_is_constant_on_orbits(cls, p, seed):
    m = rep_of_class(cls, p)
    rng = np.random.default_rng(seed)
    g = {v: _random_invertible(rng, m.dim_at(v), p) for v in m.quiver.vertices}
    assert classify(m.base_change(g)) == cls


@given(classes(), classes())
def test_classify_is_additive(x, y):
    if x.quiver != y.quiver:
        return
    assert classify(direct_sum([rep_of_class(x, 2), rep_of_class(y, 2)])) == x + y


def test_iso_class_counts():
    # Kostant partition function values
    assert len(iso_classes(a2(), (1, 1))) == 2
    assert len(iso_classes(a2(), (2, 2))) == 3
    assert len(iso_classes(a3(), (1, 1, 1))) == 4


def _brute_aut(m):
    """Count invertible endomorphisms by enumeration."""
    q, p = m.quiver, m.p
    spaces = []
    for v in q.vertices:
        k = m.dim_at(v)
        spaces.append([np.array(x).reshape(k, k) for x in itertools.product(range(p), repeat=k * k) if rank(np.array(x).reshape(k, k), p) == k])
    count = 0
    for maps in itertools.product(*spaces):
        f = dict(zip(q.vertices, maps))
        if all(not ((f[a.target] @ m.mats[a.name] - m.mats[a.name] @ f[a.source]) % p).any() for a in q.arrows):
            count += 1
    return count


@pytest.mark.parametrize("p", [2, 3])
def test_aut_order_matches_enumeration(p):
    q = a2()
    for d in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        for cls in iso_classes(q, d):
            assert aut_order(cls, p) == _brute_aut(rep_of_class(cls, p))


def test_class_serialisation():
    cls = classify(m22())
    assert cls.to_list() == [[[0, 1], 1], [[1, 0], 1], [[1, 1], 1]]
