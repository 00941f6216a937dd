"""Positive roots, indecomposables and Krull-Schmidt classification for Dynkin quivers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from .quiver import DimVector, Quiver, QuiverError, dim_add
from .representation import Representation, direct_sum, hom_dim


class NotDynkinError(QuiverError):
    pass


class ClassificationError(RuntimeError):
    """Raised when the hom-vector system has no nonnegative integer solution."""


def _components(q: Quiver) -> list[list]:
    adj = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen, comps = set(), []
    for v in q.vertices:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp, key=q.index))
    return comps


def _positive_definite(gram: list[list[int]]) -> bool:
    """Sylvester's criterion via exact fraction-valued elimination."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


@lru_cache(maxsize=None)
def is_dynkin(q: Quiver) -> bool:
    """True iff every connected component has a simply-laced Dynkin graph."""
    basis = [q.simple_dim(v) for v in q.vertices]
    gram = [[q.symmetric_form(x, y) for y in basis] for x in basis]
    return q.n > 0 and _positive_definite(gram)


def dynkin_type(q: Quiver) -> str:
    """Name of the underlying Dynkin diagram, e.g. ``"A3"`` or ``"A1+A2"``."""
    if not is_dynkin(q):
        raise NotDynkinError("quiver is not of Dynkin type")
    names = []
    for comp in _components(q):
        n = len(comp)
        degree = {v: 0 for v in comp}
        for a in q.arrows:
            if a.source in degree:
                degree[a.source] += 1
                degree[a.target] += 1
        branch = [v for v in comp if degree[v] == 3]
        if not branch:
            names.append(f"A{n}")
            continue
        # arm lengths from the branch vertex
        centre = branch[0]
        arms = []
        for a in q.arrows:
            if centre in (a.source, a.target):
                prev, cur, length = centre, a.target if a.source == centre else a.source, 1
                while True:
                    nbrs = [x.target if x.source == cur else x.source for x in q.arrows if cur in (x.source, x.target)]
                    nxt = [y for y in nbrs if y != prev]
                    if not nxt:
                        break
                    prev, cur, length = cur, nxt[0], length + 1
                arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            names.append(f"D{n}")
        else:
            names.append(f"E{n}")
    return "+".join(names)


@dataclass(frozen=True)
class RootSystem:
    """Positive roots sorted by height, then lexicographically."""

    quiver: Quiver
    roots: tuple[DimVector, ...]

    @cached_property
    def _index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    def index(self, root: Sequence[int]) -> int:
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise NotDynkinError(f"{tuple(root)} is not a positive root") from None

    def __contains__(self, root) -> bool:
        return tuple(root) in self._index

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


@lru_cache(maxsize=None)
def positive_roots(q: Quiver) -> RootSystem:
    """Closure of the simple roots under all reflections, positive part."""
    if not is_dynkin(q):
        raise NotDynkinError("positive roots are only enumerated for Dynkin quivers")
    simples = [q.simple_dim(v) for v in q.vertices]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for d in frontier:
            for v in q.vertices:
                e = q.reflect_dim(v, d)
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    positive = [d for d in seen if all(x >= 0 for x in d)]
    positive.sort(key=lambda d: (sum(d), d))
    return RootSystem(q, tuple(positive))


def expected_root_count(type_name: str) -> int:
    total = 0
    for part in type_name.split("+"):
        kind, n = part[0], int(part[1:])
        if kind == "A":
            total += n * (n + 1) // 2
        elif kind == "D":
            total += n * (n - 1)
        else:
            total += {6: 36, 7: 63, 8: 120}[n]
    return total


def _sink_walk(q: Quiver, root: DimVector) -> tuple[list, list[Quiver], object]:
    """Reflect ``root`` at sinks along repeated admissible orderings until simple.

    Returns the reflected vertices, the quivers they were applied to, and the
    vertex j with root reaching e_j on the last quiver.
    """
    order = q.admissible_ordering()
    steps: list = []
    quivers: list[Quiver] = []
    cur_q, x = q, root
    bound = (len(positive_roots(q)) + 1) * q.n
    for t in itertools.count():
        if t > bound:
            raise NotDynkinError(f"root {root} did not reach a simple root")
        a = order[t % q.n]
        if x == cur_q.simple_dim(a):
            return steps, quivers, a
        steps.append(a)
        quivers.append(cur_q)
        x = cur_q.reflect_dim(a, x)
        if any(c < 0 for c in x):
            raise NotDynkinError(f"{root} is not a positive root")
        cur_q = cur_q.reflect(a)
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def indecomposable_rep(q: Quiver, root: DimVector, p: int) -> Representation:
    """The indecomposable of dimension vector ``root``, built from a simple by S^- reflections."""
    from .reflection import reflect_rep_minus

    root = tuple(root)
    rs = positive_roots(q)
    if root not in rs:
        raise NotDynkinError(f"{root} is not a positive root")
    steps, quivers, j = _sink_walk(q, root)
    last_q = quivers[-1].reflect(steps[-1]) if steps else q
    x = Representation.simple(last_q, j, p)
    for a, qa in zip(reversed(steps), reversed(quivers)):
        x = reflect_rep_minus(x, a)
        assert x.quiver == qa
    if x.dim != root or hom_dim(x, x) != 1:
        raise ClassificationError(f"construction of the indecomposable {root} failed")
    return x


@dataclass(frozen=True)
class IsoClass:
    """An isomorphism class: multiplicities of indecomposables in root order."""

    quiver: Quiver
    mults: tuple[int, ...]

    def __post_init__(self):
        mults = tuple(int(m) for m in self.mults)
        object.__setattr__(self, "mults", mults)
        if len(mults) != len(positive_roots(self.quiver)):
            raise ValueError("multiplicity vector does not match the root system")
        if any(m < 0 for m in mults):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def from_roots(cls, q: Quiver, counts: Mapping) -> "IsoClass":
        rs = positive_roots(q)
        mults = [0] * len(rs)
        for root, m in counts.items():
            mults[rs.index(root)] += m
        return cls(q, tuple(mults))

    @classmethod
    def zero(cls, q: Quiver) -> "IsoClass":
        return cls(q, tuple(0 for _ in positive_roots(q)))

    @classmethod
    def simple(cls, q: Quiver, v) -> "IsoClass":
        return cls.from_roots(q, {q.simple_dim(v): 1})

    @property
    def roots(self) -> RootSystem:
        return positive_roots(self.quiver)

    @property
    def dim(self) -> DimVector:
        d = tuple(0 for _ in self.quiver.vertices)
        for root, m in zip(self.roots, self.mults):
            d = dim_add(d, tuple(m * x for x in root))
        return d

    def items(self) -> list[tuple[DimVector, int]]:
        return [(r, m) for r, m in zip(self.roots, self.mults) if m]

    def __add__(self, other: "IsoClass") -> "IsoClass":
        if other.quiver != self.quiver:
            raise ValueError("classes live on different quivers")
        return IsoClass(self.quiver, tuple(a + b for a, b in zip(self.mults, other.mults)))

    def label(self) -> str:
        if not any(self.mults):
            return "0"
        terms = []
        for root, m in self.items():
            name = "".join(str(x) for x in root) if max(root) < 10 else ",".join(str(x) for x in root)
            terms.append(name if m == 1 else f"{name}^{m}")
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.label()

    def to_list(self) -> list:
        return [[list(r), m] for r, m in self.items()]


@lru_cache(maxsize=None)
def _hom_table(q: Quiver, p: int) -> tuple[list[Representation], np.ndarray, list[int]]:
    """Indecomposables, H[a, b] = [X_a, X_b], and an order making H unitriangular."""
    rs = positive_roots(q)
    xs = [indecomposable_rep(q, r, p) for r in rs]
    n = len(xs)
    h = np.array([[hom_dim(x, y) for y in xs] for x in xs], dtype=np.int64)
    if any(h[i, i] != 1 for i in range(n)):
        raise ClassificationError("an indecomposable has a nontrivial endomorphism ring")
    # topological order of the relation Hom(X_a, X_b) != 0
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        ready = sorted(i for i in remaining if not any(h[j, i] for j in remaining if j != i))
        if not ready:
            raise ClassificationError("hom relation between indecomposables has a cycle")
        order.extend(ready)
        remaining.difference_update(ready)
    return xs, h, order


def hom_vector(m: Representation) -> list[int]:
    xs, _, _ = _hom_table(m.quiver, m.p)
    return [hom_dim(x, m) for x in xs]


def classify(m: Representation) -> IsoClass:
    """Krull-Schmidt multiplicities of M, solved from its hom-vector."""
    q = m.quiver
    if not is_dynkin(q):
        raise NotDynkinError("classification needs a Dynkin quiver")
    xs, h, order = _hom_table(q, m.p)
    vec = hom_vector(m)
    n = len(xs)
    mult = [0] * n
    # h[a, b] = 0 whenever b precedes a, so solve from the last element backwards
    for pos in range(n - 1, -1, -1):
        a = order[pos]
        rest = sum(int(h[a, b]) * mult[b] for b in order[pos + 1:])
        mult[a] = vec[a] - rest
        if mult[a] < 0:
            raise ClassificationError(f"negative multiplicity while classifying {m!r}")
    cls = IsoClass(q, tuple(mult))
    if cls.dim != m.dim:
        raise ClassificationError(f"dimension check failed while classifying {m!r}")
    return cls


@lru_cache(maxsize=None)
def rep_of_class(cls: IsoClass, p: int) -> Representation:
    """Direct sum of indecomposables realising the class."""
    q = cls.quiver
    summands = []
    for root, m in cls.items():
        summands.extend([indecomposable_rep(q, root, p)] * m)
    if not summands:
        return Representation.zero(q, p)
    return direct_sum(summands)


def iso_classes(q: Quiver, d: Sequence[int]) -> list[IsoClass]:
    """All isomorphism classes of dimension vector d, in a deterministic order."""
    d = q.check_dim(d)
    roots = positive_roots(q).roots
    out: list[IsoClass] = []

    def rec(i: int, rem: tuple, mults: list):
        if i == len(roots):
            if not any(rem):
                out.append(IsoClass(q, tuple(mults)))
            return
        root = roots[i]
        m = 0
        cur = rem
        while all(x >= 0 for x in cur):
            mults.append(m)
            rec(i + 1, cur, mults)
            mults.pop()
            m += 1
            cur = tuple(x - y for x, y in zip(cur, root))

    rec(0, d, [])
    out.sort(key=lambda c: tuple(-m for m in c.mults))
    return out


def dim_vectors(q: Quiver, max_total: int) -> Iterator[DimVector]:
    """Nonnegative dimension vectors with total dimension <= max_total."""
    for total in range(max_total + 1):
        for d in itertools.product(range(total + 1), repeat=q.n):
            if sum(d) == total:
                yield d


def aut_order(cls: IsoClass, p: int) -> int:
    """|Aut X| = p^(dim rad End X) * prod_a |GL_{m_a}(p)| for Dynkin X."""
    _, h, _ = _hom_table(cls.quiver, p)
    m = cls.mults
    end_dim = sum(m[a] * m[b] * int(h[a, b]) for a in range(len(m)) for b in range(len(m)))
    rad = end_dim - sum(x * x for x in m)
    order = p**rad
    for x in m:
        for j in range(x):
            order *= p**x - p**j
    return order
