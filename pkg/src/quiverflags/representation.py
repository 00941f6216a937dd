"""Finite-dimensional representations of quivers over GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .quiver import DimVector, Quiver, star


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    """A representation: one GF(p) matrix of shape (d_target, d_source) per arrow."""

    quiver: Quiver
    p: int
    dim: DimVector
    mats: Mapping[str, np.ndarray]

    def __post_init__(self):
        linalg.check_prime(self.p)
        dim = self.quiver.check_dim(self.dim)
        if any(x < 0 for x in dim):
            raise RepresentationError(f"dimension vector {dim} has negative entries")
        object.__setattr__(self, "dim", dim)
        mats = {}
        for a in self.quiver.arrows:
            shape = (dim[self.quiver.index(a.target)], dim[self.quiver.index(a.source)])
            if a.name in self.mats:
                m = linalg.as_matrix(self.mats[a.name], self.p, shape)
            else:
                m = linalg.zeros(*shape)
            m.setflags(write=False)
            mats[a.name] = m
        extra = set(self.mats) - set(mats)
        if extra:
            raise RepresentationError(f"matrices given for unknown arrows {sorted(extra)}")
        object.__setattr__(self, "mats", mats)

    # identity is by value so representations can key caches
    @cached_property
    def key(self) -> tuple:
        return (
            self.quiver,
            self.p,
            self.dim,
            tuple((name, m.tobytes()) for name, m in self.mats.items()),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        maps = ", ".join(f"{k}={m.tolist()}" for k, m in self.mats.items())
        return f"Representation(dim={self.dim}, p={self.p}, {maps})"

    def __getitem__(self, arrow: str) -> np.ndarray:
        return self.mats[arrow]

    def dim_at(self, v) -> int:
        return self.dim[self.quiver.index(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    # constructors

    @classmethod
    def zero(cls, quiver: Quiver, p: int) -> "Representation":
        return cls(quiver, p, tuple(0 for _ in quiver.vertices), {})

    @classmethod
    def simple(cls, quiver: Quiver, v, p: int) -> "Representation":
        return cls(quiver, p, quiver.simple_dim(v), {})

    @classmethod
    def random(cls, quiver: Quiver, dim: Sequence[int], p: int, rng: np.random.Generator) -> "Representation":
        dim = quiver.check_dim(dim)
        mats = {}
        for a in quiver.arrows:
            shape = (dim[quiver.index(a.target)], dim[quiver.index(a.source)])
            mats[a.name] = rng.integers(0, p, size=shape, dtype=np.int64)
        return cls(quiver, p, dim, mats)

    def base_change(self, g: Mapping) -> "Representation":
        """The isomorphic representation g.M with (g.M)_a = g_t M_a g_s^{-1}."""
        inv = {v: linalg.inverse(np.asarray(g[v], dtype=np.int64) % self.p, self.p) for v in self.quiver.vertices}
        mats = {}
        for a in self.quiver.arrows:
            gt = np.asarray(g[a.target], dtype=np.int64)
            mats[a.name] = (gt @ self.mats[a.name] @ inv[a.source]) % self.p
        return Representation(self.quiver, self.p, self.dim, mats)

    def restrict(self, bases: Mapping) -> "Representation":
        """Subrepresentation spanned by RREF row bases at each vertex.

        Coordinates are taken with respect to those bases; the caller is
        responsible for arrow closure.
        """
        q, p = self.quiver, self.p
        piv = {v: rref_pivots(bases[v]) for v in q.vertices}
        mats = {}
        for a in q.arrows:
            img = (self.mats[a.name] @ bases[a.source].T) % p
            mats[a.name] = img[piv[a.target]]
        return Representation(q, p, tuple(bases[v].shape[0] for v in q.vertices), mats)

    def quotient(self, bases: Mapping) -> "Representation":
        """Quotient by the subrepresentation with the given RREF row bases.

        The quotient at each vertex uses the non-pivot unit vectors as basis.
        """
        q, p = self.quiver, self.p
        piv = {v: rref_pivots(bases[v]) for v in q.vertices}
        comp = {v: linalg.complement_columns(piv[v], self.dim_at(v)) for v in q.vertices}
        mats = {}
        for a in q.arrows:
            w = self.mats[a.name][:, comp[a.source]]
            res = linalg.row_space_residual(bases[a.target], piv[a.target], w, p)
            mats[a.name] = res[comp[a.target]]
        return Representation(q, p, tuple(len(comp[v]) for v in q.vertices), mats)

    def is_subrepresentation(self, bases: Mapping) -> bool:
        p = self.p
        for a in self.quiver.arrows:
            img = (self.mats[a.name] @ bases[a.source].T) % p
            tb = bases[a.target]
            if linalg.row_space_residual(tb, rref_pivots(tb), img, p).any():
                return False
        return True

    def phi_into(self, a) -> np.ndarray:
        """The stacked map (M_alpha) from the sum over arrows alpha: j -> a to M_a."""
        blocks = [self.mats[x.name] for x in self.quiver.arrows_into(a)]
        if not blocks:
            return linalg.zeros(self.dim_at(a), 0)
        return np.concatenate(blocks, axis=1)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "dim": list(self.dim),
            "matrices": {k: m.tolist() for k, m in self.mats.items()},
        }

    @classmethod
    def from_dict(cls, quiver: Quiver, doc: Mapping) -> "Representation":
        try:
            p = int(doc["p"])
            dim = tuple(int(x) for x in doc["dim"])
            raw = dict(doc.get("matrices", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise RepresentationError(f"malformed representation document: {exc}") from exc
        dim = quiver.check_dim(dim)
        mats = {}
        for a in quiver.arrows:
            shape = (dim[quiver.index(a.target)], dim[quiver.index(a.source)])
            if a.name in raw:
                mats[a.name] = np.array(raw.pop(a.name), dtype=np.int64).reshape(shape)
        if raw:
            raise RepresentationError(f"matrices given for unknown arrows {sorted(raw)}")
        return cls(quiver, p, dim, mats)


def rref_pivots(basis: np.ndarray) -> list[int]:
    """Pivot columns of a matrix already in RREF (first nonzero of each row)."""
    return [int(np.flatnonzero(row)[0]) for row in basis]


def direct_sum(reps: Sequence[Representation]) -> Representation:
    if not reps:
        raise RepresentationError("direct_sum needs at least one summand")
    q, p = reps[0].quiver, reps[0].p
    if any(r.quiver != q or r.p != p for r in reps):
        raise RepresentationError("summands must share quiver and modulus")
    dim = tuple(sum(r.dim[i] for r in reps) for i in range(q.n))
    mats = {}
    for a in q.arrows:
        blocks = [r.mats[a.name] for r in reps]
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        m = linalg.zeros(rows, cols)
        r0 = c0 = 0
        for b in blocks:
            m[r0:r0 + b.shape[0], c0:c0 + b.shape[1]] = b
            r0 += b.shape[0]
            c0 += b.shape[1]
        mats[a.name] = m
    return Representation(q, p, dim, mats)


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    maps: Mapping

    def is_valid(self) -> bool:
        p = self.source.p
        for a in self.source.quiver.arrows:
            lhs = self.maps[a.target] @ self.source.mats[a.name]
            rhs = self.target.mats[a.name] @ self.maps[a.source]
            if ((lhs - rhs) % p).any():
                return False
        return True


def _check_compatible(m: Representation, n: Representation) -> None:
    if m.quiver != n.quiver:
        raise RepresentationError("representations live on different quivers")
    if m.p != n.p:
        raise RepresentationError("representations have different moduli")


def _hom_system(m: Representation, n: Representation) -> tuple[np.ndarray, dict]:
    """Linear system whose kernel is Hom(M, N).

    Unknowns are the entries of each f_i (row-major, vertex order); one block
    of equations f_j M_a - N_a f_i = 0 per arrow a: i -> j.
    """
    q, p = m.quiver, m.p
    offsets, total = {}, 0
    for v in q.vertices:
        offsets[v] = total
        total += n.dim_at(v) * m.dim_at(v)
    rows = []
    for a in q.arrows:
        i, j = a.source, a.target
        mi, mj, ni, nj = m.dim_at(i), m.dim_at(j), n.dim_at(i), n.dim_at(j)
        if nj * mi == 0:
            continue
        block = linalg.zeros(nj * mi, total)
        if mj:
            block[:, offsets[j]:offsets[j] + nj * mj] += np.kron(linalg.identity(nj), m.mats[a.name].T)
        if ni:
            block[:, offsets[i]:offsets[i] + ni * mi] -= np.kron(n.mats[a.name], linalg.identity(mi))
        rows.append(block % p)
    a = np.concatenate(rows, axis=0) if rows else linalg.zeros(0, total)
    return a, offsets


_HOM_CACHE: dict = {}


def hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(M, N) over GF(p)."""
    _check_compatible(m, n)
    key = (m, n)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    a, _ = _hom_system(m, n)
    value = a.shape[1] - linalg.rank(a, m.p)
    if len(_HOM_CACHE) > 200_000:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = value
    return value


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    """A basis of Hom(M, N) as the kernel of the commuting-square system."""
    _check_compatible(m, n)
    a, offsets = _hom_system(m, n)
    _, kernel = linalg.rank_kernel(a, m.p)
    out = []
    for vec in kernel:
        maps = {}
        for v in m.quiver.vertices:
            r, c = n.dim_at(v), m.dim_at(v)
            maps[v] = vec[offsets[v]:offsets[v] + r * c].reshape(r, c).copy()
        out.append(Morphism(m, n, maps))
    return out


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(M, N) = [M, N] - <dim M, dim N> (path algebras are hereditary)."""
    return hom_dim(m, n) - m.quiver.euler_form(m.dim, n.dim)


def ext1_cocycles(m: Representation, n: Representation) -> tuple[list, int, list[int]]:
    """Coordinates for Ext^1(M, N) as cocycles modulo coboundaries.

    Cocycles are tuples (Z_a: M_i -> N_j) over arrows a: i -> j, flattened
    row-major arrow by arrow; ``layout`` lists (arrow, rows, cols) of the
    nonempty blocks. Coboundaries are the image of
    (h_i) -> (h_j M_a - N_a h_i), and ``free`` indexes coordinates that span
    a complement of that image.
    """
    _check_compatible(m, n)
    q, p = m.quiver, m.p
    system, _ = _hom_system(m, n)
    layout = []
    for a in q.arrows:
        rows, cols = n.dim_at(a.target), m.dim_at(a.source)
        if rows * cols:
            layout.append((a.name, rows, cols))
    total = sum(r * c for _, r, c in layout)
    pivots = linalg.rref(system.T, p)[1] if total and system.shape[1] else []
    return layout, total, linalg.complement_columns(pivots, total)


def ext1_dim_cocycles(m: Representation, n: Representation) -> int:
    """dim Ext^1(M, N) from the cokernel of the coboundary map, without the Euler form."""
    return len(ext1_cocycles(m, n)[2])


def dualize(m: Representation) -> Representation:
    """Vector-space dual over the opposite quiver: (DM)_{a*} = (M_a)^T."""
    qop = m.quiver.opposite()
    mats = {star(a.name): m.mats[a.name].T for a in m.quiver.arrows}
    return Representation(qop, m.p, m.dim, mats)


def hom_to_simple_at_sink(m: Representation, a) -> int:
    """dim Hom(M, S_a) = d_a - rank(phi_a) for a sink a."""
    if not m.quiver.is_sink(a):
        raise RepresentationError(f"vertex {a!r} is not a sink")
    return m.dim_at(a) - linalg.rank(m.phi_into(a), m.p)


def hom_from_simple_at_source(m: Representation, b) -> int:
    """dim Hom(S_b, M) = d_b - rank(phi_b) for a source b."""
    if not m.quiver.is_source(b):
        raise RepresentationError(f"vertex {b!r} is not a source")
    return hom_to_simple_at_sink(dualize(m), b)
