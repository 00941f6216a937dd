"""Tangent spaces of quiver flags, dimension counts and counting polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .dynkin import IsoClass, NotDynkinError, iso_classes, is_dynkin, rep_of_class
from .flag import FlagPoint, count_flag_bruteforce, enumerate_flag_points, flag_nonempty, _level_defect
from .poly import QPolynomial, interpolate_on_primes
from .quiver import Filtration, Quiver, QuiverError, dim_sub
from .representation import Representation, hom_dim, ext1_dim, rref_pivots


class GeometryError(ValueError):
    pass


def ladder_quiver(q: Quiver, length: int) -> Quiver:
    """Q x A_length: copies (v, k) of Q joined by arrows (v, k) -> (v, k + 1)."""
    vertices = [(v, k) for k in range(length) for v in q.vertices]
    edges = [(f"{a.name}@{k}", (a.source, k), (a.target, k)) for k in range(length) for a in q.arrows]
    edges += [(f"{v}>{k}", (v, k), (v, k + 1)) for k in range(length - 1) for v in q.vertices]
    return Quiver.from_edges(vertices, edges)


@dataclass(frozen=True, eq=False)
class ChainRep:
    """U^0 -> U^1 -> ... -> U^nu with per-vertex connecting matrices."""

    levels: tuple[Representation, ...]
    maps: tuple[dict, ...]

    def __post_init__(self):
        if not self.levels:
            raise GeometryError("a chain needs at least one level")
        if len(self.maps) != len(self.levels) - 1:
            raise GeometryError("need one connecting map between consecutive levels")
        q, p = self.levels[0].quiver, self.levels[0].p
        for k, f in enumerate(self.maps):
            lo, hi = self.levels[k], self.levels[k + 1]
            if lo.quiver != q or hi.quiver != q or lo.p != p or hi.p != p:
                raise GeometryError("levels must share quiver and modulus")
            for v in q.vertices:
                if np.shape(f[v]) != (hi.dim_at(v), lo.dim_at(v)):
                    raise GeometryError(f"connecting map at {v!r}, level {k} has the wrong shape")
            for a in q.arrows:
                left = hi.mats[a.name] @ f[a.source]
                right = f[a.target] @ lo.mats[a.name]
                if ((left - right) % p).any():
                    raise GeometryError(f"square for arrow {a.name!r} at level {k} does not commute")

    @property
    def quiver(self) -> Quiver:
        return self.levels[0].quiver

    @property
    def p(self) -> int:
        return self.levels[0].p

    @property
    def dims(self) -> tuple:
        return tuple(u.dim for u in self.levels)

    def as_representation(self) -> Representation:
        """The same data as a representation of the ladder quiver."""
        q, n = self.quiver, len(self.levels)
        lq = ladder_quiver(q, n)
        dim = tuple(self.levels[k].dim_at(v) for k in range(n) for v in q.vertices)
        mats = {}
        for k, u in enumerate(self.levels):
            for a in q.arrows:
                mats[f"{a.name}@{k}"] = u.mats[a.name]
        for k, f in enumerate(self.maps):
            for v in q.vertices:
                mats[f"{v}>{k}"] = f[v]
        return Representation(lq, self.p, dim, mats)


def euler_form_lambda(q: Quiver, du: Sequence, dv: Sequence) -> int:
    """<U, V> over the ladder algebra: sum_k <u^k, v^k> - sum_k <u^k, v^(k+1)>."""
    du, dv = list(du), list(dv)
    if len(du) != len(dv):
        raise GeometryError("chains must have the same length")
    total = sum(q.euler_form(a, b) for a, b in zip(du, dv))
    total -= sum(q.euler_form(du[k], dv[k + 1]) for k in range(len(du) - 1))
    return total


def hom_dim_lambda(u: ChainRep, v: ChainRep) -> int:
    if u.quiver != v.quiver or u.p != v.p or len(u.levels) != len(v.levels):
        raise GeometryError("chains differ in quiver, modulus or length")
    return hom_dim(u.as_representation(), v.as_representation())


def _coords(basis: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Coordinates (as columns) of the rows of ``rows`` in the RREF basis."""
    return rows[:, rref_pivots(basis)].T.copy()


def flag_chain(m: Representation, pt: FlagPoint) -> ChainRep:
    """The chain of subrepresentations U^0 <= ... <= U^nu with inclusion maps."""
    q = m.quiver
    levels = tuple(m.restrict(b) for b in pt.levels)
    maps = tuple(
        {v: _coords(pt.levels[k + 1][v], pt.levels[k][v]) for v in q.vertices}
        for k in range(len(pt.levels) - 1)
    )
    return ChainRep(levels, maps)


def quotient_chain(m: Representation, pt: FlagPoint) -> ChainRep:
    """M/U^0 ->> ... ->> M/U^nu, each with the complement unit vectors as basis."""
    q, p = m.quiver, m.p
    levels = tuple(m.quotient(b) for b in pt.levels)
    maps = []
    for k in range(len(pt.levels) - 1):
        f = {}
        for v in q.vertices:
            lo, hi = pt.levels[k][v], pt.levels[k + 1][v]
            n = m.dim_at(v)
            comp_lo = linalg.complement_columns(rref_pivots(lo), n)
            piv_hi = rref_pivots(hi)
            comp_hi = linalg.complement_columns(piv_hi, n)
            units = linalg.identity(n)[:, comp_lo]
            f[v] = linalg.row_space_residual(hi, piv_hi, units, p)[comp_hi]
        maps.append(f)
    return ChainRep(levels, tuple(maps))


def _check_point(m: Representation, pt: FlagPoint) -> None:
    q = m.quiver
    prev = None
    for b in pt.levels:
        if set(b) != set(q.vertices) or not m.is_subrepresentation(b):
            raise GeometryError("flag level is not a subrepresentation of M")
        if prev is not None:
            for v in q.vertices:
                if linalg.row_space_residual(b[v], rref_pivots(b[v]), prev[v].T, m.p).any():
                    raise GeometryError("flag levels are not nested")
        prev = b
    if any(pt.levels[0][v].shape[0] for v in q.vertices) or any(
        pt.levels[-1][v].shape[0] != m.dim_at(v) for v in q.vertices
    ):
        raise GeometryError("a flag must run from 0 to M")


def tangent_dim(m: Representation, pt: FlagPoint) -> int:
    """dim of the tangent space Hom(U, M/U) over the ladder algebra."""
    _check_point(m, pt)
    return hom_dim_lambda(flag_chain(m, pt), quotient_chain(m, pt))


def ext1_lambda(m: Representation, pt: FlagPoint) -> int:
    """dim Ext^1(U, M/U) over the ladder algebra (U has projective dimension < 2)."""
    u, v = flag_chain(m, pt), quotient_chain(m, pt)
    return hom_dim_lambda(u, v) - euler_form_lambda(m.quiver, u.dims, v.dims)


def interior_euler_sum(q: Quiver, f: Filtration) -> int:
    """sum_{k=1}^{nu-1} <d^k, d^(k+1) - d^k>."""
    lv = f.levels
    return sum(q.euler_form(lv[k], dim_sub(lv[k + 1], lv[k])) for k in range(1, f.nu))


def flag_variety_dim(f: Filtration) -> int:
    """dim of the product of vector-space flag varieties at each vertex."""
    lv = f.levels
    return sum(lv[k][i] * (lv[k + 1][i] - lv[k][i]) for k in range(1, f.nu) for i in range(len(f.top)))


@dataclass(frozen=True)
class CodimReport:
    filtration: Filtration
    dim_rep_fl: int
    dim_rep: int
    codim: int | None
    ext_bound: int | None
    minimizer: IsoClass | None
    min_ext_lambda: int | None
    checks: tuple[tuple[str, bool], ...]

    @property
    def bound_holds(self) -> bool:
        return all(ok for _, ok in self.checks)

    def rows(self) -> list[tuple[str, str]]:
        return [
            ("dimRepFl", str(self.dim_rep_fl)),
            ("dimRep", str(self.dim_rep)),
            ("codim", "-" if self.codim is None else str(self.codim)),
            ("ext-bound", "-" if self.ext_bound is None else str(self.ext_bound)),
            ("minimizer", "-" if self.minimizer is None else self.minimizer.label()),
            ("min-ext1-lambda", "-" if self.min_ext_lambda is None else str(self.min_ext_lambda)),
            ("bound-holds", "yes" if self.bound_holds else "no"),
        ]


def codim_report(q: Quiver, f, p: int = 2, sample_points: bool = True) -> CodimReport:
    """Dimension bookkeeping for the closure of representations admitting a flag of type f.

    The codimension is the least self-extension dimension over the classes
    with such a flag. With ``sample_points`` the first flag point of each of
    those classes (over GF(p)) is used to check
    codim <= ext^1(U, M/U) <= [M, M]^1.
    """
    if not is_dynkin(q):
        raise NotDynkinError("codim_report needs a Dynkin quiver")
    f = f if isinstance(f, Filtration) else Filtration(tuple(map(tuple, f)))
    q.check_dim(f.top)
    dim_rep = q.dim_rep(f.top)
    dim_rep_fl = interior_euler_sum(q, f) + dim_rep
    members = [x for x in iso_classes(q, f.top) if flag_nonempty(x, f)]
    checks = []
    if not members:
        return CodimReport(f, dim_rep_fl, dim_rep, None, None, None, None, (("nonempty", False),))
    exts = {x: ext1_dim(rep_of_class(x, p), rep_of_class(x, p)) for x in members}
    minimizer = min(members, key=lambda x: (exts[x], x.mults))
    codim = exts[minimizer]
    checks.append(("codim <= [M,M]^1", all(codim <= e for e in exts.values())))
    # the image of RepFl cannot be bigger than RepFl itself
    checks.append(("dim A <= dimRepFl", dim_rep - codim <= dim_rep_fl))
    min_ext = None
    if sample_points:
        for x in members:
            m = rep_of_class(x, p)
            pt = next(enumerate_flag_points(m, f))
            e = ext1_lambda(m, pt)
            min_ext = e if min_ext is None else min(min_ext, e)
            checks.append((f"codim <= ext1_lambda <= [M,M]^1 at {x.label()}", codim <= e <= exts[x]))
    return CodimReport(f, dim_rep_fl, dim_rep, codim, codim, minimizer, min_ext, tuple(checks))


@dataclass(frozen=True)
class CountingPolynomial:
    poly: QPolynomial
    p0: int
    p1: int


def counting_polynomial_flag(cls: IsoClass, f) -> CountingPolynomial:
    """Interpolate #Fl(f, M) over primes with the flag-variety dimension as degree bound."""
    if not is_dynkin(cls.quiver):
        raise NotDynkinError("counting polynomials are computed for Dynkin quivers")
    f = f if isinstance(f, Filtration) else Filtration(tuple(map(tuple, f)))
    if f.top != cls.dim:
        raise QuiverError(f"filtration ends at {f.top}, class has dimension {cls.dim}")
    poly = interpolate_on_primes(lambda p: count_flag_bruteforce(rep_of_class(cls, p), f), flag_variety_dim(f))
    return CountingPolynomial(poly, poly(0), poly(1))


@dataclass(frozen=True)
class PointRow:
    point_id: int
    stratum: tuple[int, ...]
    tangent: int


def geometry_report(m: Representation, f, a=None) -> list[PointRow]:
    """Per flag point: its index, the S_a-defects of its levels and its tangent dimension."""
    f = f if isinstance(f, Filtration) else Filtration(tuple(map(tuple, f)))
    q = m.quiver
    if a is None:
        sinks = q.sinks()
        if not sinks:
            raise GeometryError("no sink to measure strata against")
        a = sinks[0]
    rows = []
    for k, pt in enumerate(enumerate_flag_points(m, f)):
        levels = [m.restrict(b) for b in pt.levels]
        stratum = tuple(_level_defect(u, a) for u in levels)
        rows.append(PointRow(k, stratum, tangent_dim(m, pt)))
    return rows
