"""Quivers, dimension vectors, Euler forms, reflections, words and filtrations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

DimVector = tuple[int, ...]


class QuiverError(ValueError):
    pass


def star(name: str) -> str:
    """Name of the reversed arrow; starring twice gives back the original."""
    return name[:-1] if name.endswith("*") else name + "*"


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Hashable
    target: Hashable


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with ordered vertices and named arrows.

    All per-vertex data (dimension vectors, representation blocks) is stored
    in the order of ``vertices``.
    """

    vertices: tuple
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(str(a[0]), a[1], a[2]) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex ids must be unique")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow ids must be unique")
        vs = set(self.vertices)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[Sequence]) -> "Quiver":
        """Build from ``[(id, source, target), ...]``."""
        return cls(tuple(vertices), tuple(Arrow(str(n), s, t) for n, s, t in edges))

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"unknown arrow {name!r}")

    def arrows_into(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_out_of(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def has_loop(self, v) -> bool:
        return any(a.source == v and a.target == v for a in self.arrows)

    def is_sink(self, v) -> bool:
        self.index(v)
        return not self.arrows_out_of(v)

    def is_source(self, v) -> bool:
        self.index(v)
        return not self.arrows_into(v)

    def sinks(self) -> list:
        return [v for v in self.vertices if self.is_sink(v)]

    def sources(self) -> list:
        return [v for v in self.vertices if self.is_source(v)]

    def is_acyclic(self) -> bool:
        remaining = set(self.vertices)
        arrows = list(self.arrows)
        while remaining:
            sinks = [v for v in remaining if not any(a.source == v and a.target in remaining for a in arrows)]
            if not sinks:
                return False
            remaining.difference_update(sinks)
        return True

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(star(a.name), a.target, a.source) for a in self.arrows))

    def reflect(self, a) -> "Quiver":
        """Reverse every arrow starting or ending at ``a``."""
        self.index(a)
        new = []
        for x in self.arrows:
            if x.source == a or x.target == a:
                new.append(Arrow(star(x.name), x.target, x.source))
            else:
                new.append(x)
        return Quiver(self.vertices, tuple(new))

    # dimension vectors

    def check_dim(self, d: Sequence[int]) -> DimVector:
        d = tuple(int(x) for x in d)
        if len(d) != self.n:
            raise QuiverError(f"dimension vector {d} does not match {self.n} vertices")
        return d

    def simple_dim(self, v) -> DimVector:
        e = [0] * self.n
        e[self.index(v)] = 1
        return tuple(e)

    @cached_property
    def _arrow_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.index(a.source), self.index(a.target)) for a in self.arrows)

    def euler_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        d, e = self.check_dim(d), self.check_dim(e)
        value = sum(x * y for x, y in zip(d, e))
        for i, j in self._arrow_pairs:
            value -= d[i] * e[j]
        return value

    def symmetric_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        return self.euler_form(d, e) + self.euler_form(e, d)

    def reflect_dim(self, a, d: Sequence[int]) -> DimVector:
        """sigma_a d = d - (d, e_a) e_a, using the symmetrised form."""
        if self.has_loop(a):
            raise QuiverError(f"cannot reflect at vertex {a!r}: it carries a loop")
        d = self.check_dim(d)
        ia = self.index(a)
        # (d, e_a) = 2 d_a - sum of d over the neighbours of a, counted per arrow
        c = 2 * d[ia]
        for i, j in self._arrow_pairs:
            if i == ia:
                c -= d[j]
            if j == ia:
                c -= d[i]
        out = list(d)
        out[ia] -= c
        return tuple(out)

    def dim_rep(self, d: Sequence[int]) -> int:
        """Dimension of the affine space of representations of dimension d."""
        d = self.check_dim(d)
        return sum(d[self.index(a.source)] * d[self.index(a.target)] for a in self.arrows)

    # orderings

    def is_admissible(self, sequence: Sequence) -> bool:
        q = self
        for v in sequence:
            if v not in self._index or not q.is_sink(v):
                return False
            q = q.reflect(v)
        return True

    def admissible_orderings(self) -> list[tuple]:
        """All orderings of the vertices that are admissible sink sequences."""
        if not self.is_acyclic():
            raise QuiverError("admissible orderings exist only for acyclic quivers")
        out = []

        def extend(q: Quiver, prefix: tuple):
            if len(prefix) == self.n:
                out.append(prefix)
                return
            for v in self.vertices:
                if v not in prefix and q.is_sink(v) and not q.has_loop(v):
                    extend(q.reflect(v), prefix + (v,))

        extend(self, ())
        return out

    def admissible_ordering(self) -> tuple:
        """The lexicographically first admissible ordering (in vertex order)."""
        orderings = self.admissible_orderings()
        return orderings[0]

    def word_to_filtration(self, word: Sequence) -> "Filtration":
        """Filtration whose flags are counted by the coefficient of u_w.

        The last letter of the word labels the bottom step U^1, the first
        letter the top quotient.
        """
        word = tuple(word)
        if not word:
            raise QuiverError("word must be nonempty")
        for v in word:
            self.index(v)
        levels = [tuple([0] * self.n)]
        for v in reversed(word):
            nxt = list(levels[-1])
            nxt[self.index(v)] += 1
            levels.append(tuple(nxt))
        return Filtration(tuple(levels))


def dim_add(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(x + y for x, y in zip(d, e))


def dim_sub(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(d, e))


def dim_le(d: Sequence[int], e: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(d, e))


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class Filtration:
    """Weakly increasing sequence of dimension vectors starting at 0."""

    levels: tuple[DimVector, ...]

    def __post_init__(self):
        levels = tuple(tuple(int(x) for x in d) for d in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) < 2:
            raise FiltrationError("a filtration needs at least two levels")
        n = len(levels[0])
        if any(len(d) != n for d in levels):
            raise FiltrationError("levels have different lengths")
        if any(x != 0 for x in levels[0]):
            raise FiltrationError("first level must be zero")
        if any(x < 0 for d in levels for x in d):
            raise FiltrationError("levels must be nonnegative")
        for lo, hi in zip(levels, levels[1:]):
            if not dim_le(lo, hi):
                raise FiltrationError(f"levels are not increasing: {lo} > {hi}")

    @classmethod
    def trivial(cls, d: Sequence[int]) -> "Filtration":
        return cls((tuple(0 for _ in d), tuple(d)))

    @classmethod
    def try_make(cls, levels) -> "Filtration | None":
        try:
            return cls(tuple(levels))
        except FiltrationError:
            return None

    @property
    def nu(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> DimVector:
        return self.levels[-1]

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    def __iter__(self):
        return iter(self.levels)

    def dual(self) -> "Filtration":
        """e^i = d^nu - d^(nu-i): the type of the dual flag of the dual representation."""
        top = self.top
        return Filtration(tuple(dim_sub(top, self.levels[self.nu - i]) for i in range(self.nu + 1)))

    def is_zero(self) -> bool:
        return not any(x for d in self.levels for x in d)

    def strict(self) -> "Filtration":
        """Drop repeated consecutive levels (keeps at least two levels)."""
        out = [self.levels[0]]
        for d in self.levels[1:]:
            if d != out[-1]:
                out.append(d)
        if len(out) == 1:
            out.append(out[0])
        return Filtration(tuple(out))


def strict_filtrations(top: Sequence[int]) -> list[Filtration]:
    """All strictly increasing filtrations from 0 to ``top`` (any length)."""
    top = tuple(top)
    zero = tuple(0 for _ in top)
    boxes = [d for d in itertools.product(*(range(x + 1) for x in top))]
    out: list[Filtration] = []

    def extend(chain: list):
        last = chain[-1]
        if last == top:
            out.append(Filtration(tuple(chain)))
            return
        for d in boxes:
            if d != last and dim_le(last, d):
                chain.append(d)
                extend(chain)
                chain.pop()

    if top == zero:
        return [Filtration((zero, zero))]
    extend([zero])
    return out
