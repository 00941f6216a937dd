"""Counting quiver flags: brute-force enumeration and the reflection recursion mod p."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import linalg
from .dynkin import IsoClass, NotDynkinError, is_dynkin, positive_roots, rep_of_class
from .quiver import Filtration, FiltrationError, Quiver, QuiverError
from .poly import QPolynomial, count_fiber_formula
from .reflection import pi_a, reflect_filtration_plus, reflect_rep_plus
from .representation import Representation, hom_dim, hom_to_simple_at_sink


def _vertex_order(q: Quiver) -> list:
    """Vertex order for the subspace search: each vertex as early as its neighbours allow."""
    order = [q.vertices[0]] if q.vertices else []
    rest = list(q.vertices[1:])
    while rest:
        linked = [
            v for v in rest
            if any((a.source in order and a.target == v) or (a.target in order and a.source == v) for a in q.arrows)
        ]
        v = linked[0] if linked else rest[0]
        order.append(v)
        rest.remove(v)
    return order


def subrepresentations(m: Representation, e: Sequence[int]) -> Iterator[dict]:
    """Yield every subrepresentation of M of dimension vector e as RREF bases per vertex.

    Vertices are filled one at a time; an arrow is checked as soon as both of
    its endpoints carry a subspace.
    """
    q, p = m.quiver, m.p
    e = q.check_dim(e)
    if any(x < 0 or x > y for x, y in zip(e, m.dim)):
        return
    order = _vertex_order(q)
    checks: dict = {v: [] for v in order}
    placed: set = set()
    for v in order:
        placed.add(v)
        for a in q.arrows:
            if v in (a.source, a.target) and a.source in placed and a.target in placed:
                checks[v].append(a)
    candidates = {v: linalg.enumerate_subspaces_with_pivots(p, m.dim_at(v), e[q.index(v)]) for v in order}
    chosen: dict = {}
    pivots: dict = {}

    def closed(a) -> bool:
        src, tgt = chosen[a.source], chosen[a.target]
        if src.shape[0] == 0:
            return True
        img = (m.mats[a.name] @ src.T) % p
        if tgt.shape[0] == 0:
            return not img.any()
        return not ((img - tgt.T @ img[list(pivots[a.target])]) % p).any()

    def rec(k: int):
        if k == len(order):
            yield dict(chosen)
            return
        v = order[k]
        for basis, piv in candidates[v]:
            chosen[v] = basis
            pivots[v] = piv
            if all(closed(a) for a in checks[v]):
                yield from rec(k + 1)
        chosen.pop(v, None)
        pivots.pop(v, None)

    yield from rec(0)


def _check_filtration_of(m: Representation, f) -> Filtration:
    if not isinstance(f, Filtration):
        try:
            f = Filtration(tuple(f))
        except FiltrationError as exc:
            raise QuiverError(str(exc)) from exc
    if f.top != m.dim:
        raise QuiverError(f"filtration ends at {f.top}, representation has dimension {m.dim}")
    return f


def _level_defect(u: Representation, a) -> int:
    """dim Hom(U, S_a)."""
    if u.quiver.is_sink(a):
        return hom_to_simple_at_sink(u, a)
    return hom_dim(u, Representation.simple(u.quiver, a, u.p))


def count_flag_bruteforce(
    m: Representation, f, strata: tuple | None = None
) -> int:
    """Exact number of flags of type f in M over GF(p).

    With ``strata=(a, r)`` only flags with dim Hom(U^i, S_a) = r^i are counted.
    """
    f = _check_filtration_of(m, f)
    a, r = (None, None) if strata is None else (strata[0], tuple(strata[1]))
    if r is not None and len(r) != len(f):
        raise QuiverError("stratum sequence must have one entry per level")
    levels = f.levels
    memo: dict = {}

    def rec(u: Representation, i: int) -> int:
        # u realises level i; count the chains below it
        if r is not None and _level_defect(u, a) != r[i]:
            return 0
        if i == 0:
            return 1
        if (u, i) in memo:
            return memo[u, i]
        total = 0
        for bases in subrepresentations(u, levels[i - 1]):
            total += rec(u.restrict(bases), i - 1)
        memo[u, i] = total
        return total

    return rec(m, f.nu)


@dataclass(frozen=True, eq=False)
class FlagPoint:
    """A flag U^0 <= ... <= U^nu of subrepresentations, as ambient RREF bases per level."""

    levels: tuple[dict, ...]

    def key(self) -> tuple:
        return tuple(tuple((v, lvl[v].shape, lvl[v].tobytes()) for v in lvl) for lvl in self.levels)


def enumerate_flag_points(m: Representation, f) -> Iterator[FlagPoint]:
    """Yield every flag of type f in M, with canonical ambient bases."""
    f = _check_filtration_of(m, f)
    q, p = m.quiver, m.p
    levels = f.levels
    full = {v: linalg.identity(m.dim_at(v)) for v in q.vertices}

    def rec(u: Representation, ambient: dict, i: int, acc: list):
        if i == 0:
            yield FlagPoint(tuple(reversed(acc)))
            return
        for bases in subrepresentations(u, levels[i - 1]):
            amb = {}
            for v in q.vertices:
                prod = (bases[v] @ ambient[v]) % p
                amb[v] = linalg.rref(prod, p)[0] if prod.shape[0] else prod
            acc.append(amb)
            yield from rec(u.restrict(bases), amb, i - 1, acc)
            acc.pop()

    yield from rec(m, full, f.nu, [full])


def level_representation(m: Representation, bases: Mapping) -> Representation:
    return m.restrict(bases)


def fiber_representation(r: Sequence[int], e: Sequence[int], p: int) -> Representation:
    """X^{r,e} on the equioriented A_(nu+1) quiver with canonical surjections [I | 0]."""
    r, e = tuple(r), tuple(e)
    nu = len(r) - 1
    q = equioriented_a(nu + 1)
    dims = tuple(e[nu - i] + r[i] for i in range(nu + 1))
    mats = {}
    for i in range(nu):
        src, tgt = dims[i], dims[i + 1]
        if tgt > src:
            raise ValueError("e + reverse(r) must be weakly increasing")
        mats[f"a{i}"] = np.eye(tgt, src, dtype=np.int64)
    return Representation(q, p, dims, mats)


def equioriented_a(n: int) -> Quiver:
    """0 -> 1 -> ... -> n-1."""
    return Quiver.from_edges(range(n), [(f"a{i}", i, i + 1) for i in range(n - 1)])


def count_subrepresentations(m: Representation, e: Sequence[int]) -> int:
    return sum(1 for _ in subrepresentations(m, e))


@dataclass(frozen=True)
class DecompositionTerm:
    r: tuple[int, ...]
    fiber: QPolynomial
    reduced: Filtration
    stratum_count: int


def decomposition_terms(m: Representation, f, a) -> list[DecompositionTerm]:
    """Split #Fl(f, M) along the S_a-defects r of the flag levels at a sink a.

    Each term pairs the fiber polynomial for (r, e) with the number of flags
    of type f - r e_a in pi_a(M) whose levels have no S_a quotient.
    """
    f = _check_filtration_of(m, f)
    q = m.quiver
    if not q.is_sink(a):
        raise QuiverError(f"vertex {a!r} is not a sink")
    ia, nu = q.index(a), f.nu
    small, s = pi_a(m, a)
    da = [lvl[ia] for lvl in f.levels]
    e = tuple(da[nu] - da[nu - j] for j in range(nu + 1))
    terms = []
    for inner in itertools.product(*(range(x + 1) for x in da[1:nu])):
        r = (0, *inner, s)
        reduced = Filtration.try_make(
            tuple(tuple(x - (r[i] if k == ia else 0) for k, x in enumerate(lvl)) for i, lvl in enumerate(f.levels))
        )
        if reduced is None:
            continue
        fiber = count_fiber_formula(r, e)
        count = count_flag_bruteforce(small, reduced, (a, (0,) * (nu + 1)))
        terms.append(DecompositionTerm(r, fiber, reduced, count))
    return terms


@dataclass(frozen=True)
class ModQResult:
    residue: int
    nonempty: bool
    p: int
    steps: int

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.p})"


def count_flag_modq(m: Representation, f, max_rounds: int | None = None) -> ModQResult:
    """#Fl(f, M) mod p through sink reflections along admissible orderings.

    Each reflection keeps the count modulo p; when M reaches 0 only the zero
    filtration survives, with exactly one flag.
    """
    f = _check_filtration_of(m, f)
    q = m.quiver
    if not q.is_acyclic():
        raise QuiverError("the reflection recursion needs an acyclic quiver")
    order = q.admissible_ordering()
    if max_rounds is None:
        max_rounds = (len(positive_roots(q)) + 1) if is_dynkin(q) else 4 * (m.total_dim + 1)
    steps = 0
    cur, filt = m, f
    while not cur.is_zero():
        if steps >= max_rounds * q.n:
            raise QuiverError("representation is not annihilated by a power of C+ (not preprojective?)")
        a = order[steps % q.n]
        s = hom_to_simple_at_sink(cur, a)
        nxt = reflect_filtration_plus(cur.quiver, a, filt, cur.dim, s)
        steps += 1
        if nxt is None:
            return ModQResult(0, False, m.p, steps)
        cur, filt = reflect_rep_plus(cur, a), nxt
    if filt.is_zero():
        return ModQResult(1 % m.p, True, m.p, steps)
    return ModQResult(0, False, m.p, steps)


def flag_nonempty(cls: IsoClass, f, p: int = 2) -> bool:
    """Field-independent emptiness decision for flags of type f in the class."""
    if not is_dynkin(cls.quiver):
        raise NotDynkinError("flag_nonempty needs a Dynkin quiver")
    return count_flag_modq(rep_of_class(cls, p), f).nonempty
