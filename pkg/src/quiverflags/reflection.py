"""BGP reflection functors on representations and their action on filtrations."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg
from .quiver import DimVector, Filtration, Quiver, QuiverError, dim_le, dim_sub, star
from .representation import (
    Representation,
    RepresentationError,
    dualize,
    hom_to_simple_at_sink,
)


def reflect_rep_plus(m: Representation, a) -> Representation:
    """S_a^+ M over sigma_a Q for a sink a.

    The new space at a is the kernel of phi_a (canonical RREF basis); each
    reversed arrow alpha*: a -> i is the matching block of the inclusion.
    """
    q, p = m.quiver, m.p
    if not q.is_sink(a):
        raise RepresentationError(f"vertex {a!r} is not a sink")
    incoming = q.arrows_into(a)
    kernel = linalg.kernel_matrix(m.phi_into(a), p)  # rows span ker(phi_a)
    ka = kernel.shape[0]
    rq = q.reflect(a)
    dim = list(m.dim)
    dim[q.index(a)] = ka
    mats = {}
    offset = 0
    for x in q.arrows:
        if x in incoming:
            width = m.dim_at(x.source)
            mats[star(x.name)] = kernel[:, offset:offset + width].T
            offset += width
        else:
            mats[x.name] = m.mats[x.name]
    return Representation(rq, p, tuple(dim), mats)


def reflect_rep_minus(n: Representation, b) -> Representation:
    """S_b^- N for a source b, computed as D S_b^+ D."""
    if not n.quiver.is_source(b):
        raise RepresentationError(f"vertex {b!r} is not a source")
    return dualize(reflect_rep_plus(dualize(n), b))


def coxeter_plus(m: Representation, ordering: Sequence) -> Representation:
    """Apply S^+ along an admissible ordering; returns a representation of the same quiver."""
    q = m.quiver
    ordering = tuple(ordering)
    if sorted(map(q.index, ordering)) != list(range(q.n)) or not q.is_admissible(ordering):
        raise QuiverError(f"{ordering} is not an admissible ordering")
    for a in ordering:
        m = reflect_rep_plus(m, a)
    return m


def pi_a(m: Representation, a) -> tuple[Representation, int]:
    """Split off the maximal S_a summand at a sink a.

    The basis at a is changed to (RREF basis of im phi_a) + (unit vectors off
    its pivots); the complement carries S_a^s and is truncated. In that basis
    the coordinates of the image are the pivot entries.
    """
    q, p = m.quiver, m.p
    if not q.is_sink(a):
        raise RepresentationError(f"vertex {a!r} is not a sink")
    phi = m.phi_into(a)
    if phi.shape[1]:
        _, pivots = linalg.rref(phi.T, p)
    else:
        pivots = []
    s = m.dim_at(a) - len(pivots)
    dim = list(m.dim)
    dim[q.index(a)] = len(pivots)
    mats = {}
    for x in q.arrows:
        mats[x.name] = m.mats[x.name][pivots] if x.target == a else m.mats[x.name]
    return Representation(q, p, tuple(dim), mats), s


def split_form_of_pi_a(m: Representation, a) -> dict:
    """Base change g with g.M = pi_a(M) + S_a^s in block form (identity off a)."""
    q, p = m.quiver, m.p
    phi = m.phi_into(a)
    basis, pivots = linalg.rref(phi.T, p) if phi.shape[1] else (linalg.zeros(0, m.dim_at(a)), [])
    comp = linalg.complement_columns(pivots, m.dim_at(a))
    cols = [basis[i] for i in range(basis.shape[0])] + [np.eye(m.dim_at(a), dtype=np.int64)[c] for c in comp]
    change = np.array(cols, dtype=np.int64).T.reshape(m.dim_at(a), m.dim_at(a))
    g = {v: linalg.identity(m.dim_at(v)) for v in q.vertices}
    g[a] = linalg.inverse(change, p)
    return g


def r_plus(q: Quiver, a, f: Sequence[Sequence[int]], s: int) -> tuple[int, ...]:
    """Minimal per-level S_a-defect forced on a flag of type f at the sink a."""
    levels = [q.check_dim(d) for d in f]
    nu = len(levels) - 1
    ia = q.index(a)
    r = [0]
    for i in range(1, nu):
        step = q.reflect_dim(a, dim_sub(levels[i - 1], levels[i]))[ia]
        r.append(max(0, step + r[-1]))
    if nu >= 1:
        r.append(s)
    return tuple(r)


def reflect_filtration_plus(
    q: Quiver, a, f: Filtration, dim_m: Sequence[int], s: int
) -> Filtration | None:
    """S_a^+ of a filtration of M, or None when it no longer fits S_a^+ M."""
    dim_m = q.check_dim(dim_m)
    if f.top != dim_m:
        raise QuiverError(f"filtration ends at {f.top}, not at dim M = {dim_m}")
    ia = q.index(a)
    r = r_plus(q, a, f.levels, s)
    top = list(q.reflect_dim(a, dim_m))
    top[ia] += s
    top = tuple(top)
    interior = []
    for i in range(1, f.nu):
        d = list(q.reflect_dim(a, f.levels[i]))
        d[ia] += r[i]
        interior.append(tuple(d))
    if interior and not dim_le(interior[-1], top):
        return None
    zero = tuple(0 for _ in dim_m)
    return Filtration.try_make((zero, *interior, top))


def coxeter_filtration_plus(
    m: Representation, f: Filtration, ordering: Sequence
) -> tuple[Representation, Filtration | None]:
    """Reflect M and a filtration of M together along an admissible ordering.

    The filtration becomes None as soon as one step leaves no room for it.
    """
    q = m.quiver
    ordering = tuple(ordering)
    if sorted(map(q.index, ordering)) != list(range(q.n)) or not q.is_admissible(ordering):
        raise QuiverError(f"{ordering} is not an admissible ordering")
    filt: Filtration | None = f
    for a in ordering:
        if filt is not None:
            filt = reflect_filtration_plus(m.quiver, a, filt, m.dim, hom_to_simple_at_sink(m, a))
        m = reflect_rep_plus(m, a)
    return m, filt


def compare_orderings(m: Representation, f: Filtration) -> dict[tuple, Filtration | None]:
    """C+ of (M, f) under every admissible ordering, keyed by ordering.

    Purely exploratory: whether the reflected filtration is independent of
    the ordering is not known in general, so nothing here asserts it.
    """
    return {o: coxeter_filtration_plus(m, f, o)[1] for o in m.quiver.admissible_orderings()}


def reflect_dim_plus(q: Quiver, a, d: Sequence[int], s: int) -> DimVector:
    """dim S_a^+ M = sigma_a(dim M) + s e_a with s = [M, S_a]."""
    out = list(q.reflect_dim(a, d))
    out[q.index(a)] += s
    return tuple(out)

