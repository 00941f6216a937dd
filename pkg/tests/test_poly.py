import itertools

import pytest
from hypothesis import given, strategies as st

from quiverflags.linalg import enumerate_subspaces
from quiverflags.poly import (
    InterpolationError,
    QPolynomial,
    count_fiber_formula,
    interpolate,
    interpolate_on_primes,
    q_integer,
    qbinom,
)

polys = st.lists(st.integers(-5, 5), max_size=5).map(lambda c: QPolynomial(tuple(c)))


def test_qbinom_examples():
    assert qbinom(2, 1).coeffs == (1, 1)
    assert all(qbinom(n, 0) == QPolynomial.constant(1) for n in range(5))
    assert qbinom(4, 2).coeffs == (1, 1, 2, 1, 1)
    assert qbinom(4, 2)(2) == 35
    with pytest.raises(ValueError):
        qbinom(2, 3)
    with pytest.raises(ValueError):
        qbinom(2, -1)


@pytest.mark.parametrize("n", range(6))
def test_qbinom_constant_term_and_symmetry(n):
    for r in range(n + 1):
        assert qbinom(n, r)(0) == 1
        assert qbinom(n, r) == qbinom(n, n - r)
        assert qbinom(n, r)(1) == len(list(itertools.combinations(range(n), r)))


def test_qbinom_counts_subspaces():
    for p in (2, 3):
        for n in range(4):
            for r in range(n + 1):
                assert qbinom(n, r)(p) == sum(1 for _ in enumerate_subspaces(p, n, r))


def test_fiber_formula_examples():
    assert count_fiber_formula((1, 0), (1, 1)) == QPolynomial.constant(1)
    f = count_fiber_formula((1, 1), (1, 2))
    assert f == q_integer(2) * q_integer(2) and f(2) == 9
    assert count_fiber_formula((0, 0, 0), (0, 1, 3)) == QPolynomial.constant(1)


def test_fiber_formula_zero_and_errors():
    # e not weakly increasing: empty
    assert count_fiber_formula((1, 0), (1, 0)).is_zero()
    with pytest.raises(ValueError):
        count_fiber_formula((0, 2), (0, 0))
    with pytest.raises(ValueError):
        count_fiber_formula((0,), (0, 0))


def test_str():
    assert str(QPolynomial((1, 1))) == "q + 1"
    assert str(QPolynomial((1, 2))) == "2q + 1"
    assert str(QPolynomial((-1, 0, 1))) == "q^2 - 1"
    assert str(QPolynomial()) == "0"


@given(polys, polys, st.integers(-4, 4))
def test_ring_operations_evaluate(f, g, x):
    assert (f + g)(x) == f(x) + g(x)
    assert (f * g)(x) == f(x) * g(x)
    assert (f - g)(x) == f(x) - g(x)


@given(polys)
def test_interpolation_recovers_polynomial(f):
    pts = [(x, f(x)) for x in range(max(f.degree, 0) + 1)]
    assert QPolynomial(tuple(int(c) for c in interpolate(pts))) == f


def test_interpolate_on_primes():
    f = QPolynomial((1, 0, 3))
    assert interpolate_on_primes(f, 2) == f
    with pytest.raises(InterpolationError):
        # degree bound too small: the held-out prime catches it
        interpolate_on_primes(lambda p: p**3, 1)
    with pytest.raises(InterpolationError):
        interpolate_on_primes(lambda p: 1 if p == 2 else 0, 1)
