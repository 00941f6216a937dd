"""Hall numbers, word products, Hall polynomials and the q = 0 comparison with the composition monoid."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .dynkin import IsoClass, aut_order, classify, is_dynkin, iso_classes, NotDynkinError, rep_of_class
from .flag import subrepresentations, flag_nonempty
from .poly import QPolynomial, interpolate_on_primes
from .quiver import DimVector, Quiver, QuiverError, dim_add
from .representation import Representation, ext1_cocycles, hom_dim


class HallError(ValueError):
    pass


@dataclass(frozen=True)
class HallElement:
    """A finite formal sum of isomorphism classes with rational coefficients."""

    quiver: Quiver
    coeffs: Mapping[IsoClass, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for cls, c in self.coeffs.items():
            if cls.quiver != self.quiver:
                raise HallError("all classes must share the element's quiver")
            c = Fraction(c)
            if c:
                clean[cls] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, x: IsoClass) -> "HallElement":
        return cls(x.quiver, {x: Fraction(1)})

    @classmethod
    def indicator(cls, q: Quiver, classes: Iterable[IsoClass]) -> "HallElement":
        return cls(q, {c: Fraction(1) for c in classes})

    def __getitem__(self, cls: IsoClass) -> Fraction:
        return self.coeffs.get(cls, Fraction(0))

    def __add__(self, other: "HallElement") -> "HallElement":
        out = dict(self.coeffs)
        for cls, c in other.coeffs.items():
            out[cls] = out.get(cls, Fraction(0)) + c
        return HallElement(self.quiver, out)

    def scale(self, c) -> "HallElement":
        return HallElement(self.quiver, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, HallElement) and self.quiver == other.quiver and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.quiver, frozenset(self.coeffs.items())))

    def support(self) -> list[IsoClass]:
        return sorted(self.coeffs, key=_class_order)

    def degrees(self) -> set[DimVector]:
        return {c.dim for c in self.coeffs}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for cls in self.support():
            c = self.coeffs[cls]
            label = f"u[{cls.label()}]"
            terms.append(label if c == 1 else f"{c}*{label}")
        return " + ".join(terms)


def _class_order(cls: IsoClass) -> tuple:
    return (cls.dim, tuple(-m for m in cls.mults))


# --- Hall numbers by enumeration -------------------------------------------

@lru_cache(maxsize=None)
def _subquotient_tally(x: Representation, n_dim: DimVector) -> Counter:
    """Counter of (class of X/U, class of U) over subrepresentations U of dimension n."""
    tally: Counter = Counter()
    for bases in subrepresentations(x, n_dim):
        sub = classify(x.restrict(bases))
        quo = classify(x.quotient(bases))
        tally[(quo, sub)] += 1
    return tally


def hall_number(x: Representation, m: IsoClass, n: IsoClass) -> int:
    """F^X_{MN}: subrepresentations U of X with U ~ N and X/U ~ M."""
    if dim_add(m.dim, n.dim) != x.dim:
        raise HallError(f"dim M + dim N = {dim_add(m.dim, n.dim)} differs from dim X = {x.dim}")
    return _subquotient_tally(x, n.dim)[(m, n)]


def hall_product(a: HallElement, b: HallElement, p: int) -> HallElement:
    """u_M <> u_N = sum_X F^X_{MN} u_X, extended bilinearly."""
    q = a.quiver
    if b.quiver != q:
        raise HallError("factors live on different quivers")
    out: dict = {}
    for m, cm in a.coeffs.items():
        for n, cn in b.coeffs.items():
            for x in iso_classes(q, dim_add(m.dim, n.dim)):
                f = _subquotient_tally(rep_of_class(x, p), n.dim)[(m, n)]
                if f:
                    out[x] = out.get(x, Fraction(0)) + cm * cn * f
    return HallElement(q, out)


def u_simple(q: Quiver, v) -> HallElement:
    return HallElement.basis(IsoClass.simple(q, v))


def u_word(q: Quiver, word: Sequence, p: int) -> HallElement:
    """u_{w_1} <> ... <> u_{w_nu} in the Hall algebra over GF(p)."""
    if not is_dynkin(q):
        raise NotDynkinError("u_word needs a Dynkin quiver")
    word = tuple(word)
    if not word:
        return HallElement.basis(IsoClass.zero(q))
    out = u_simple(q, word[0])
    for v in word[1:]:
        out = hall_product(out, u_simple(q, v), p)
    return out


# --- Hall numbers through extensions (Riedtmann's formula) -----------------

def _extension_rep(m: Representation, n: Representation, z: Mapping) -> Representation:
    """Middle term of the extension 0 -> N -> E -> M -> 0 with cocycle z."""
    q, p = m.quiver, m.p
    mats = {}
    for a in q.arrows:
        nj, ni = n.dim_at(a.target), n.dim_at(a.source)
        mj, mi = m.dim_at(a.target), m.dim_at(a.source)
        e = linalg.zeros(nj + mj, ni + mi)
        e[:nj, :ni] = n.mats[a.name]
        e[:nj, ni:] = z[a.name]
        e[nj:, ni:] = m.mats[a.name]
        mats[a.name] = e
    return Representation(q, p, dim_add(n.dim, m.dim), mats)


@lru_cache(maxsize=None)
def extension_tally(mu: IsoClass, nu: IsoClass, p: int) -> Counter:
    """Counter over classes X of the number of elements of Ext^1(M, N) with middle term X."""
    m, n = rep_of_class(mu, p), rep_of_class(nu, p)
    q = mu.quiver
    layout, total, free = ext1_cocycles(m, n)
    zero = {a.name: linalg.zeros(n.dim_at(a.target), m.dim_at(a.source)) for a in q.arrows}
    tally: Counter = Counter({classify(_extension_rep(m, n, zero)): 1})
    # z and c*z (c != 0) give isomorphic middle terms, so walk projective points only
    for values in _projective_points(len(free), p):
        vec = np.zeros(total, dtype=np.int64)
        vec[free] = values
        z, off = dict(zero), 0
        for name, rows, cols in layout:
            z[name] = vec[off:off + rows * cols].reshape(rows, cols)
            off += rows * cols
        tally[classify(_extension_rep(m, n, z))] += p - 1
    return tally


def _projective_points(k: int, p: int):
    """Vectors in GF(p)^k whose first nonzero entry is 1."""
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            yield (0,) * lead + (1,) + tail


def hall_number_extensions(xi: IsoClass, mu: IsoClass, nu: IsoClass, p: int) -> int:
    """F^xi_{mu nu} = |Ext^1(M,N)_X| |Aut X| / (|Aut M| |Aut N| |Hom(M,N)|)."""
    if dim_add(mu.dim, nu.dim) != xi.dim:
        raise HallError("dim mu + dim nu must equal dim xi")
    count = extension_tally(mu, nu, p)[xi]
    if not count:
        return 0
    hom = hom_dim(rep_of_class(mu, p), rep_of_class(nu, p))
    num = count * aut_order(xi, p)
    den = aut_order(mu, p) * aut_order(nu, p) * p**hom
    if num % den:
        raise HallError(f"non-integral Hall number {num}/{den} for {xi}, {mu}, {nu} at p={p}")
    return num // den


def hall_degree_bound(mu: IsoClass, nu: IsoClass) -> int:
    """sum_i n_i m_i: dimension of the ambient product of Grassmannians."""
    return sum(x * y for x, y in zip(nu.dim, mu.dim))


def hall_polynomial(xi: IsoClass, mu: IsoClass, nu: IsoClass, method: str = "extensions") -> QPolynomial:
    """Interpolate f^xi_{mu nu}(q) from exact counts, verified on a held-out prime."""
    q = xi.quiver
    if not is_dynkin(q):
        raise NotDynkinError("Hall polynomials are computed for Dynkin quivers")
    if dim_add(mu.dim, nu.dim) != xi.dim:
        raise HallError("dim mu + dim nu must equal dim xi")
    if method == "extensions":
        def count(p: int) -> int:
            return hall_number_extensions(xi, mu, nu, p)
    elif method == "brute":
        def count(p: int) -> int:
            return hall_number(rep_of_class(xi, p), mu, nu)
    else:
        raise ValueError(f"unknown method {method!r}")
    return interpolate_on_primes(count, hall_degree_bound(mu, nu))


def hall_polynomials(mu: IsoClass, nu: IsoClass) -> dict[IsoClass, QPolynomial]:
    """All nonzero f^xi_{mu nu} for xi of dimension mu + nu."""
    out = {}
    for xi in iso_classes(mu.quiver, dim_add(mu.dim, nu.dim)):
        f = _hall_polynomial_cached(xi, mu, nu)
        if not f.is_zero():
            out[xi] = f
    return out


@lru_cache(maxsize=None)
def _hall_polynomial_cached(xi: IsoClass, mu: IsoClass, nu: IsoClass) -> QPolynomial:
    return hall_polynomial(xi, mu, nu)


# --- generic Hall algebra ---------------------------------------------------

def generic_product(a: Mapping[IsoClass, QPolynomial], b: Mapping[IsoClass, QPolynomial]) -> dict[IsoClass, QPolynomial]:
    """Product in the generic Hall algebra with Hall-polynomial structure constants."""
    out: dict = {}
    for mu, fa in a.items():
        for nu, fb in b.items():
            for xi, f in hall_polynomials(mu, nu).items():
                out[xi] = out.get(xi, QPolynomial()) + fa * fb * f
    return {k: v for k, v in out.items() if not v.is_zero()}


def word_polynomials(q: Quiver, word: Sequence) -> dict[IsoClass, QPolynomial]:
    """u_w in the generic Hall algebra: class -> f_w^X(q)."""
    if not is_dynkin(q):
        raise NotDynkinError("generic Hall algebra needs a Dynkin quiver")
    word = tuple(word)
    out = {IsoClass.simple(q, word[0]): QPolynomial.constant(1)}
    for v in word[1:]:
        out = generic_product(out, {IsoClass.simple(q, v): QPolynomial.constant(1)})
    return out


def at_zero(element: Mapping[IsoClass, QPolynomial], q: Quiver) -> HallElement:
    """Specialise a generic element at q = 0 (constant terms)."""
    return HallElement(q, {k: Fraction(f.coefficient(0)) for k, f in element.items()})


def product_at_zero(a: HallElement, b: HallElement) -> HallElement:
    """Product in H_0 using constant terms of Hall polynomials."""
    q = a.quiver
    out: dict = {}
    for mu, ca in a.coeffs.items():
        for nu, cb in b.coeffs.items():
            for xi, f in hall_polynomials(mu, nu).items():
                c0 = f.coefficient(0)
                if c0:
                    out[xi] = out.get(xi, Fraction(0)) + ca * cb * c0
    return HallElement(q, out)


def word_at_zero(q: Quiver, word: Sequence) -> HallElement:
    """u_w in H_0 as an iterated product of generators."""
    word = tuple(word)
    out = u_simple(q, word[0])
    for v in word[1:]:
        out = product_at_zero(out, u_simple(q, v))
    return out


# --- composition monoid ------------------------------------------------------

@dataclass(frozen=True)
class MonoidElement:
    """The iso classes lying in the composition variety of a word."""

    word: tuple
    classes: frozenset

    @property
    def dim(self) -> DimVector | None:
        for c in self.classes:
            return c.dim
        return None

    def sorted_classes(self) -> list[IsoClass]:
        return sorted(self.classes, key=_class_order)


@lru_cache(maxsize=None)
def composition_classes(q: Quiver, word: tuple) -> MonoidElement:
    """[A_w]: classes of dimension d(w)^nu admitting a flag of type d(w)."""
    if not is_dynkin(q):
        raise NotDynkinError("composition classes are computed for Dynkin quivers")
    word = tuple(word)
    f = q.word_to_filtration(word)
    members = frozenset(x for x in iso_classes(q, f.top) if flag_nonempty(x, f))
    return MonoidElement(word, members)


def monoid_product(a: MonoidElement, b: MonoidElement, q: Quiver) -> MonoidElement:
    """A_w * A_v realised as A_{wv}."""
    return composition_classes(q, a.word + b.word)


def psi(q: Quiver, a: MonoidElement) -> HallElement:
    return HallElement.indicator(q, a.classes)


@dataclass
class PsiReport:
    ok: bool
    word: tuple
    other: tuple
    offending: list = field(default_factory=list)
    details: list = field(default_factory=list)

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return f"psi {self.word}*{self.other}: {status}" + ("" if self.ok else f" {self.details}")


def verify_psi(q: Quiver, w: Sequence, v: Sequence) -> PsiReport:
    """Check Psi(A_w * A_v) = Psi(A_w) <> Psi(A_v) in H_0 and u_w = sum over [A_w]."""
    w, v = tuple(w), tuple(v)
    report = PsiReport(True, w, v)

    def compare(label: str, lhs: HallElement, rhs: HallElement):
        if lhs != rhs:
            report.ok = False
            diff = set(lhs.coeffs) ^ set(rhs.coeffs) | {k for k in lhs.coeffs if lhs[k] != rhs[k]}
            report.offending.extend(sorted(diff, key=_class_order))
            report.details.append(f"{label}: {lhs} != {rhs}")

    a_w, a_v = composition_classes(q, w), composition_classes(q, v)
    a_wv = monoid_product(a_w, a_v, q)
    compare("Psi(A_w * A_v) vs Psi(A_w) <> Psi(A_v)", psi(q, a_wv), product_at_zero(psi(q, a_w), psi(q, a_v)))
    compare("u_wv at q=0 vs Psi(A_wv)", word_at_zero(q, w + v), psi(q, a_wv))
    compare("u_w at q=0 vs Psi(A_w)", word_at_zero(q, w), psi(q, a_w))
    compare("u_v at q=0 vs Psi(A_v)", word_at_zero(q, v), psi(q, a_v))
    return report


# --- table export --------------------------------------------------------------

def hall_table(q: Quiver, max_total: int) -> list[tuple[IsoClass, IsoClass, IsoClass, QPolynomial]]:
    """Nonzero Hall polynomials for all triples with total dimension <= max_total."""
    from .dynkin import dim_vectors

    classes = [c for d in dim_vectors(q, max_total) for c in iso_classes(q, d)]
    rows = []
    for mu in classes:
        for nu in classes:
            if sum(mu.dim) + sum(nu.dim) > max_total or not any(mu.mults) or not any(nu.mults):
                continue
            for xi, f in sorted(hall_polynomials(mu, nu).items(), key=lambda kv: _class_order(kv[0])):
                rows.append((xi, mu, nu, f))
    return rows


def format_hall_table(rows) -> str:
    lines = ["xi\tmu\tnu\tcoefficients"]
    for xi, mu, nu, f in rows:
        lines.append("\t".join([_mults(xi), _mults(mu), _mults(nu), ",".join(str(c) for c in f.coeffs)]))
    return "\n".join(lines) + "\n"


def parse_hall_table(q: Quiver, text: str) -> list[tuple[IsoClass, IsoClass, IsoClass, QPolynomial]]:
    lines = text.splitlines()
    if not lines or lines[0] != "xi\tmu\tnu\tcoefficients":
        raise HallError("not a Hall polynomial table")
    rows = []
    for line in lines[1:]:
        xi, mu, nu, coeffs = line.split("\t")
        rows.append((
            IsoClass(q, _unmults(xi)),
            IsoClass(q, _unmults(mu)),
            IsoClass(q, _unmults(nu)),
            QPolynomial(tuple(int(c) for c in coeffs.split(",") if c)),
        ))
    return rows


def _mults(c: IsoClass) -> str:
    return ",".join(str(m) for m in c.mults)


def _unmults(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(","))
