"""Batch verification suites shared by the CLI and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import corpus
from .dynkin import rep_of_class
from .flag import count_flag_bruteforce, count_flag_modq, count_subrepresentations, fiber_representation
from .hall import hall_product, u_simple, verify_psi
from .poly import count_fiber_formula
from .quiver import Quiver
from .representation import ext1_dim_cocycles, hom_dim


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failed"
        return f"{self.name}: {self.checked} checked, {status}"


def modq_equivalence(q: Quiver, max_word_len: int, primes: Sequence[int]) -> SuiteResult:
    """Brute-force counts against the reflection recursion, plus count = 1 mod p when nonempty."""
    res = SuiteResult("modq-equivalence")
    for cls, w, f in corpus.class_word_cases(q, max_word_len):
        for p in primes:
            m = rep_of_class(cls, p)
            brute = count_flag_bruteforce(m, f)
            modq = count_flag_modq(m, f)
            res.checked += 1
            where = f"class {cls.label()}, word {w}, p={p}"
            if brute % p != modq.residue or (brute > 0) != modq.nonempty:
                res.fail(f"{where}: brute {brute}, reflect {modq} nonempty={modq.nonempty}")
            elif brute and brute % p != 1:
                res.fail(f"{where}: nonempty count {brute} is not 1 mod {p}")
    return res


def hall_associativity(q: Quiver, primes: Sequence[int], length: int = 3) -> SuiteResult:
    res = SuiteResult("hall-associativity")
    for w in corpus.words(q, length, min_len=length):
        a, b, c = (u_simple(q, v) for v in w)
        for p in primes:
            res.checked += 1
            left = hall_product(hall_product(a, b, p), c, p)
            right = hall_product(a, hall_product(b, c, p), p)
            if left != right:
                res.fail(f"word {w}, p={p}: {left} != {right}")
    return res


def psi_iso(q: Quiver, max_total: int) -> SuiteResult:
    res = SuiteResult("psi-iso")
    for w, v in corpus.word_pairs(q, max_total):
        res.checked += 1
        report = verify_psi(q, w, v)
        if not report.ok:
            res.fail(str(report))
    return res


def fiber_formula(primes: Sequence[int], max_entry: int = 2, max_nu: int = 3) -> SuiteResult:
    res = SuiteResult("fiber-formula")
    for r, e in corpus.fiber_cases(max_entry, max_nu):
        poly = count_fiber_formula(r, e)
        if not poly.is_zero() and poly(0) != 1:
            res.fail(f"r={r}, e={e}: value at 0 is {poly(0)}")
        for p in primes:
            res.checked += 1
            brute = count_subrepresentations(fiber_representation(r, e, p), r)
            if poly(p) != brute:
                res.fail(f"r={r}, e={e}, p={p}: formula {poly(p)}, enumeration {brute}")
    return res


def euler_identity(quivers: Sequence[Quiver], pairs: int, p: int, seed: int) -> SuiteResult:
    """<dim M, dim N> = [M, N] - [M, N]^1 with Ext from cocycles modulo coboundaries."""
    res = SuiteResult("euler-identity")
    for k, q in enumerate(quivers):
        for m, n in corpus.random_pairs(q, pairs, p, seed + k):
            res.checked += 1
            lhs = q.euler_form(m.dim, n.dim)
            hom, ext = hom_dim(m, n), ext1_dim_cocycles(m, n)
            if lhs != hom - ext:
                res.fail(f"dims {m.dim}, {n.dim}: <,> = {lhs}, hom {hom}, ext {ext}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "modq-equivalence": modq_equivalence,
    "hall-associativity": hall_associativity,
    "psi-iso": psi_iso,
    "fiber-formula": fiber_formula,
    "euler-identity": euler_identity,
}
