"""Integer polynomials in q, Gaussian binomials and exact interpolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .linalg import primes


class InterpolationError(ArithmeticError):
    """Interpolated values disagree with a held-out point, or are not integral."""


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c: int) -> "QPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, q):
        value = 0
        for c in reversed(self.coeffs):
            value = value * q + c
        return value

    def __add__(self, other) -> "QPolynomial":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "QPolynomial":
        return self + (-_lift(other))

    def __mul__(self, other) -> "QPolynomial":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(tuple(out))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _lift(x) -> QPolynomial:
    return x if isinstance(x, QPolynomial) else QPolynomial.constant(int(x))


def q_integer(n: int) -> QPolynomial:
    return QPolynomial((1,) * n)


def qbinom(n: int, r: int) -> QPolynomial:
    """Gaussian binomial [n choose r]_q via the q-Pascal rule."""
    if r < 0 or r > n:
        raise ValueError(f"qbinom needs 0 <= r <= n, got n={n}, r={r}")
    row = [QPolynomial.constant(1)]  # row m holds [m choose k] for k = 0..m
    for m in range(1, n + 1):
        nxt = [QPolynomial.constant(1)]
        for k in range(1, m):
            nxt.append(row[k - 1] + QPolynomial.monomial(k) * row[k])
        nxt.append(QPolynomial.constant(1))
        row = nxt
    return row[r]


def count_fiber_formula(r: Sequence[int], e: Sequence[int]) -> QPolynomial:
    """Number of subrepresentations of dimension r in X^{r,e} as a polynomial in q.

    X^{r,e} is the chain of surjections k^(e^nu + r^0) ->> ... ->> k^(e^0 + r^nu)
    of the equioriented A_(nu+1) quiver.
    """
    r, e = tuple(r), tuple(e)
    if len(r) != len(e):
        raise ValueError("r and e must have the same length")
    nu = len(r) - 1
    total = [e[i] + r[nu - i] for i in range(nu + 1)]
    if any(x < 0 for x in r) or total[0] < 0 or any(a > b for a, b in zip(total, total[1:])):
        raise ValueError(f"e + reverse(r) must be nonnegative and weakly increasing: r={r}, e={e}")
    if e[0] < 0 or any(a > b for a, b in zip(e, e[1:])):
        return QPolynomial()
    out = QPolynomial.constant(1)
    for i in range(nu + 1):
        lower = e[nu - i - 1] if nu - i - 1 >= 0 else 0
        out = out * qbinom(e[nu - i] - lower + r[i], r[i])
    return out


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (lowest first) of the unique polynomial through the points."""
    xs = [Fraction(x) for x, _ in points]
    n = len(xs)
    # Newton divided differences, then expand the Newton form
    table = [Fraction(y) for _, y in points]
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # prod_{i<k} (q - x_i)
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += newton[k] * b
        if k < n - 1:
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, b in enumerate(basis):
                nxt[i + 1] += b
                nxt[i] -= xs[k] * b
            basis = nxt
    return coeffs


def interpolate_on_primes(
    count: Callable[[int], int], degree_bound: int, *, start: int = 2
) -> QPolynomial:
    """Interpolate ``count`` through degree_bound + 1 primes and verify on the next one.

    Raises InterpolationError if the held-out prime disagrees or a
    coefficient is not an integer.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    gen = primes(start)
    sample = [next(gen) for _ in range(degree_bound + 1)]
    held_out = next(gen)
    values = [(x, count(x)) for x in sample]
    coeffs = interpolate(values)
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integral coefficients {coeffs} from samples {values}")
    poly = QPolynomial(tuple(int(c) for c in coeffs))
    expected = count(held_out)
    if poly(held_out) != expected:
        raise InterpolationError(
            f"held-out prime {held_out}: polynomial {poly} gives {poly(held_out)}, count is {expected}"
        )
    return poly


def sum_polys(polys: Iterable[QPolynomial]) -> QPolynomial:
    out = QPolynomial()
    for f in polys:
        out = out + f
    return out
