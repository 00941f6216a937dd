import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quiverflags import linalg
from quiverflags.poly import qbinom


def mat(rows, p):
    return linalg.as_matrix(rows, p)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    p = draw(st.sampled_from([2, 3, 5]))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(entries, dtype=np.int64).reshape(r, c), p


def test_primes():
    assert linalg.first_primes(6) == [2, 3, 5, 7, 11, 13]
    assert not linalg.is_prime(1) and not linalg.is_prime(9)
    with pytest.raises(linalg.NotPrimeError):
        linalg.check_prime(4)


def test_rank_kernel_examples():
    rank, ker = linalg.rank_kernel(mat([[1, 0], [0, 0]], 2), 2)
    assert rank == 1 and [v.tolist() for v in ker] == [[0, 1]]
    rank, ker = linalg.rank_kernel(linalg.identity(2), 3)
    assert rank == 2 and ker == []
    rank, ker = linalg.rank_kernel(linalg.zeros(2, 3), 2)
    assert rank == 0 and len(ker) == 3


def test_solve_affine_examples():
    x, _ = linalg.solve_affine(linalg.identity(3), [1, 2, 0], 3)
    assert x.tolist() == [1, 2, 0]
    a = mat([[1, 0], [0, 0]], 2)
    assert linalg.solve_affine(a, [0, 1], 2)[0] is None
    x, ker = linalg.solve_affine(a, [1, 0], 2)
    assert x.tolist() == [1, 0] and [v.tolist() for v in ker] == [[0, 1]]
    with pytest.raises(ValueError):
        linalg.solve_affine(a, [1, 0, 0], 2)


def test_inverse_and_singular():
    a = mat([[1, 2], [3, 4]], 5)
    inv = linalg.inverse(a, 5)
    assert ((a @ inv) % 5 == linalg.identity(2)).all()
    with pytest.raises(ValueError):
        linalg.inverse(mat([[1, 2], [2, 4]], 5), 5)


@given(matrices())
def test_rank_nullity_and_kernel(data):
    a, p = data
    rank, ker = linalg.rank_kernel(a, p)
    assert rank + len(ker) == a.shape[1]
    for v in ker:
        assert not ((a @ v) % p).any()


@given(matrices())
def test_rank_of_transpose(data):
    a, p = data
    assert linalg.rank(a, p) == linalg.rank(a.T.copy(), p)


@given(matrices())
def test_kernel_basis_is_canonical(data):
    a, p = data
    k = linalg.kernel_matrix(a, p)
    if k.shape[0]:
        again, _ = linalg.rref(k, p)
        assert (again == k).all()


@given(matrices(max_rows=3, max_cols=3))
def test_rank_by_brute_force(data):
    # the image has p^rank elements
    a, p = data
    image = {tuple((a @ np.array(x)) % p) for x in itertools.product(range(p), repeat=a.shape[1])}
    assert len(image) == p ** linalg.rank(a, p)


@given(matrices(), st.data())
def test_solve_affine_consistent(data, draw):
    a, p = data
    x0 = np.array(draw.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])), dtype=np.int64)
    b = (a @ x0) % p
    x, _ = linalg.solve_affine(a, b, p)
    assert x is not None and ((a @ x - b) % p == 0).all()


@pytest.mark.parametrize("p,n,r,count", [(2, 2, 1, 3), (3, 2, 1, 4), (2, 3, 1, 7)])
def test_subspace_examples(p, n, r, count):
    assert sum(1 for _ in linalg.enumerate_subspaces(p, n, r)) == count


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", range(5))
def test_subspace_counts_match_gaussian_binomials(p, n):
    for r in range(n + 1):
        bases = list(linalg.enumerate_subspaces(p, n, r))
        assert len(bases) == qbinom(n, r)(p)
        spans = set()
        for b in bases:
            assert linalg.rank(b, p) == r
            span = frozenset(tuple((np.array(c) @ b) % p) for c in itertools.product(range(p), repeat=r))
            spans.add(span)
        assert len(spans) == len(bases)


def test_row_space_residual():
    basis, piv = linalg.rref(mat([[1, 1, 0]], 2), 2)
    v = mat([[1, 0], [1, 1], [0, 0]], 2)
    assert linalg.row_space_residual(basis, piv, v, 2).tolist() == [[0, 0], [0, 1], [0, 0]]
