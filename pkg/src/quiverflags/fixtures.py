"""Named quivers, representations and filtrations used by the CLI and the tests."""

from __future__ import annotations

import numpy as np

from .quiver import Filtration, Quiver
from .representation import Representation


def a1() -> Quiver:
    return Quiver.from_edges([1], [])


def a2() -> Quiver:
    return Quiver.from_edges([1, 2], [("alpha", 1, 2)])


def a3() -> Quiver:
    return Quiver.from_edges([1, 2, 3], [("alpha", 1, 2), ("beta", 2, 3)])


def d4() -> Quiver:
    """Three arms pointing into the central vertex 4."""
    return Quiver.from_edges([1, 2, 3, 4], [("alpha", 1, 4), ("beta", 2, 4), ("gamma", 3, 4)])


QUIVERS = {"a1": a1, "a2": a2, "a3": a3, "d4": d4}


def s1(p: int = 2) -> Representation:
    return Representation.simple(a2(), 1, p)


def s2(p: int = 2) -> Representation:
    return Representation.simple(a2(), 2, p)


def projective(p: int = 2) -> Representation:
    """k --id--> k on A2."""
    return Representation(a2(), p, (1, 1), {"alpha": np.array([[1]])})


def m22(p: int = 2) -> Representation:
    return Representation(a2(), p, (2, 2), {"alpha": np.array([[1, 0], [0, 0]])})


def pp(p: int = 2) -> Representation:
    """P + P, the rigid representation of dimension (2, 2)."""
    return Representation(a2(), p, (2, 2), {"alpha": np.eye(2, dtype=np.int64)})


REPRESENTATIONS = {"s1": s1, "s2": s2, "p": projective, "m22": m22, "pp": pp}


def g_filtration() -> Filtration:
    return Filtration(((0, 0), (1, 1), (2, 2)))


FILTRATIONS = {"G": g_filtration}
