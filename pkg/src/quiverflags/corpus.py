"""Finite test corpora: words, class/word pairs, fiber parameters, random pairs."""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from .dynkin import IsoClass, dim_vectors, iso_classes
from .quiver import Filtration, Quiver, strict_filtrations
from .representation import Representation


def words(q: Quiver, max_len: int, min_len: int = 1) -> Iterator[tuple]:
    for n in range(min_len, max_len + 1):
        yield from itertools.product(q.vertices, repeat=n)


def word_pairs(q: Quiver, max_total: int) -> Iterator[tuple[tuple, tuple]]:
    """(w, v) with both nonempty and |w| + |v| <= max_total."""
    for w in words(q, max_total - 1):
        for v in words(q, max_total - len(w)):
            yield w, v


def class_word_cases(q: Quiver, max_len: int) -> Iterator[tuple[IsoClass, tuple, Filtration]]:
    """Every class paired with every word of length <= max_len whose content is its dimension."""
    for w in words(q, max_len):
        f = q.word_to_filtration(w)
        for cls in iso_classes(q, f.top):
            yield cls, w, f


def all_filtrations(q: Quiver, max_total: int) -> Iterator[Filtration]:
    """Strict filtrations of every dimension vector with total <= max_total."""
    for d in dim_vectors(q, max_total):
        yield from strict_filtrations(d)


def fiber_cases(max_entry: int = 2, max_nu: int = 3) -> Iterator[tuple[tuple, tuple]]:
    """(r, e) with |entries| <= max_entry, r >= 0, and e + reverse(r) nonnegative and weakly increasing."""
    for nu in range(max_nu + 1):
        for r in itertools.product(range(max_entry + 1), repeat=nu + 1):
            for e in itertools.product(range(-max_entry, max_entry + 1), repeat=nu + 1):
                total = [e[i] + r[nu - i] for i in range(nu + 1)]
                if total[0] >= 0 and all(a <= b for a, b in zip(total, total[1:])):
                    yield r, e


def random_pairs(
    q: Quiver, count: int, p: int, seed: int, max_entry: int = 3
) -> Iterator[tuple[Representation, Representation]]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        d = tuple(int(x) for x in rng.integers(0, max_entry + 1, size=q.n))
        e = tuple(int(x) for x in rng.integers(0, max_entry + 1, size=q.n))
        yield Representation.random(q, d, p, rng), Representation.random(q, e, p, rng)
