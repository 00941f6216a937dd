"""Dense linear algebra over prime fields GF(p).

Matrices are numpy int64 arrays with entries reduced into [0, p). Vectors are
columns; a subspace is stored as the reduced row echelon form of a basis
matrix, whose rows span it. RREF bases double as coordinate systems: the
coordinates of a vector lying in the row space are its entries at the pivot
columns.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np


class NotPrimeError(ValueError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrimeError(f"modulus must be a prime, got {p!r}")
    return int(p)


def primes(start: int = 2) -> Iterator[int]:
    """Yield the primes >= start in increasing order."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def first_primes(count: int) -> list[int]:
    return list(itertools.islice(primes(), count))


def as_matrix(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce nested sequences (or an array) into a reduced int64 matrix."""
    m = np.array(a, dtype=np.int64)
    if shape is not None:
        if m.size == 0:
            m = m.reshape(shape)
        if m.shape != tuple(shape):
            raise ValueError(f"expected shape {tuple(shape)}, got {m.shape}")
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    return m % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over GF(p).

    Returns the reduced matrix (zero rows dropped) and its pivot columns.
    """
    r = np.array(a, dtype=np.int64) % p
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r[[row, k]] = r[[k, row]]
        inv = pow(int(r[row, col]), -1, p)
        if inv != 1:
            r[row] = (r[row] * inv) % p
        factors = r[:, col].copy()
        factors[row] = 0
        if factors.any():
            r = (r - np.outer(factors, r[row])) % p
        pivots.append(col)
        row += 1
    return r[:row], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def rank_kernel(a: np.ndarray, p: int) -> tuple[int, list[np.ndarray]]:
    """Rank of ``a`` and a canonical basis of its right kernel.

    The kernel vectors are returned as 1-d arrays; stacked as rows they form a
    matrix in reduced row echelon form, i.e. stacked as columns they are in
    reduced column echelon form.
    """
    kernel = kernel_matrix(a, p)
    return a.shape[1] - kernel.shape[0], [v for v in kernel]


def kernel_matrix(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form the canonical (RREF) basis of the right kernel of ``a``."""
    cols = a.shape[1]
    if a.shape[0] == 0:
        return identity(cols)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    if not free:
        return basis
    return rref(basis, p)[0]


def solve_affine(
    a: np.ndarray, b, p: int
) -> tuple[np.ndarray | None, list[np.ndarray]]:
    """Solve ``a @ x = b`` over GF(p).

    Returns ``(x, kernel)`` with ``x`` one particular solution, or ``None`` if
    ``b`` is not in the column space of ``a``. ``kernel`` is the canonical
    homogeneous basis in either case.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if b.shape[0] != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix has {a.shape[0]} rows, rhs has {b.shape[0]}"
        )
    _, kernel = rank_kernel(a, p)
    cols = a.shape[1]
    aug = np.concatenate([a % p, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug, p)
    if cols in pivots:
        return None, kernel
    x = zeros(cols, 1).reshape(-1)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return x, kernel


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("only square matrices are invertible")
    r, pivots = rref(np.concatenate([a % p, identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return r[:, n:]


def row_space_residual(basis: np.ndarray, pivots: list[int], v: np.ndarray, p: int) -> np.ndarray:
    """Reduce columns of ``v`` modulo the row space of an RREF ``basis``.

    The residual vanishes exactly on the columns lying in the span.
    """
    if basis.shape[0] == 0:
        return v % p
    return (v - basis.T @ v[pivots]) % p


def complement_columns(pivots: list[int], n: int) -> list[int]:
    ps = set(pivots)
    return [c for c in range(n) if c not in ps]


@lru_cache(maxsize=4096)
def _subspace_list(p: int, n: int, r: int) -> tuple[tuple[np.ndarray, tuple[int, ...]], ...]:
    out = []
    for pivots in itertools.combinations(range(n), r):
        pset = set(pivots)
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]
        for values in itertools.product(range(p), repeat=len(free)):
            m = zeros(r, n)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, c), v in zip(free, values):
                m[i, c] = v
            m.setflags(write=False)
            out.append((m, pivots))
    return tuple(out)


def enumerate_subspaces_with_pivots(
    p: int, n: int, r: int
) -> tuple[tuple[np.ndarray, tuple[int, ...]], ...]:
    """All ``r``-dimensional subspaces of GF(p)^n as (RREF basis, pivots).

    The result is cached and the arrays are read-only.
    """
    check_prime(p)
    if r < 0 or r > n:
        raise ValueError(f"subspace dimension {r} outside [0, {n}]")
    return _subspace_list(p, n, r)


def enumerate_subspaces(p: int, n: int, r: int) -> Iterator[np.ndarray]:
    """Yield each r-dimensional subspace of GF(p)^n once, as its RREF basis."""
    for m, _ in enumerate_subspaces_with_pivots(p, n, r):
        yield m
