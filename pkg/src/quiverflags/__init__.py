"""Exact computations with quiver flags, reflection functors and Hall algebras over GF(p)."""
