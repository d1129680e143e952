"""Truncated formal power series with exact integer coefficients.

Realizes the counting identities: G = x*C(x*C(x)) counts indecomposable
{4321,3241}-avoiders, F = 1/(1-G) counts all of them, and the summation
formula for the coefficients of G cross-checks both.  All arithmetic is
arbitrary-precision integer; no floating point enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .paths import ballot, catalan_number


@dataclass(frozen=True)
class IntSeries:
    """Integer power series truncated at an explicit order.

    ``coefficients`` lists c_0..c_N; operations never read beyond the
    truncation order, and mixed-order operations truncate to the minimum
    of the operand orders.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise InvalidInputError("a series carries at least its constant term")
        if any(not isinstance(c, int) for c in coeffs):
            raise InvalidInputError("coefficients must be integers")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def constant(cls, value: int, order: int) -> "IntSeries":
        return cls((value,) + (0,) * order)

    def coefficient(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise InvalidInputError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coefficients[n]

    def truncate(self, order: int) -> "IntSeries":
        if order > self.order:
            raise InvalidInputError(f"cannot extend order {self.order} to {order}")
        return IntSeries(self.coefficients[: order + 1])

    def shift_up(self) -> "IntSeries":
        """Multiply by x, keeping the truncation order (top coefficient drops)."""
        return IntSeries((0,) + self.coefficients[:-1])

    def __add__(self, other: "IntSeries") -> "IntSeries":
        n = min(self.order, other.order)
        return IntSeries(tuple(a + b for a, b in zip(self.coefficients, other.coefficients[: n + 1])))

    def __sub__(self, other: "IntSeries") -> "IntSeries":
        n = min(self.order, other.order)
        return IntSeries(tuple(a - b for a, b in zip(self.coefficients, other.coefficients[: n + 1])))

    def __mul__(self, other: "IntSeries | int") -> "IntSeries":
        if isinstance(other, int):
            return IntSeries(tuple(c * other for c in self.coefficients))
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return IntSeries(tuple(sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(n + 1)))

    __rmul__ = __mul__

    def compose(self, inner: "IntSeries") -> "IntSeries":
        """Substitute ``inner`` (zero constant term required) into self."""
        if inner.coefficients[0] != 0:
            raise InvalidInputError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        result = IntSeries.constant(self.coefficients[n], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + IntSeries.constant(self.coefficients[k], n)
        return result

    def reciprocal(self) -> "IntSeries":
        """The series g with self * g = 1, requiring constant term +-1."""
        c0 = self.coefficients[0]
        if c0 not in (1, -1):
            raise InvalidInputError(f"constant term {c0} is not invertible over the integers")
        n = self.order
        f = self.coefficients
        g = [c0] + [0] * n
        for m in range(1, n + 1):
            g[m] = -c0 * sum(f[i] * g[m - i] for i in range(1, m + 1))
        return IntSeries(tuple(g))


def catalan_series(order: int) -> IntSeries:
    """Catalan numbers C_0..C_order via the convolution recurrence."""
    if order < 0:
        raise InvalidInputError("order must be >= 0")
    c = [1]
    for n in range(order):
        c.append(sum(c[i] * c[n - i] for i in range(n + 1)))
    return IntSeries(tuple(c))


def g_series(order: int) -> IntSeries:
    """x * C(x*C(x)): counts indecomposable {4321,3241}-avoiders by length."""
    cat = catalan_series(order)
    return cat.compose(cat.shift_up()).shift_up()


def f_series(order: int) -> IntSeries:
    """1 / (1 - x*C(x*C(x))): counts all {4321,3241}-avoiding permutations."""
    one = IntSeries.constant(1, order)
    return (one - g_series(order)).reciprocal()


def u_by_formula(n: int) -> int:
    """Count of indecomposable {4321,3241}-avoiders of length n by the
    ballot-number summation: sum_k C_{n-1-k} * ballot(k, n-2-k), with
    u_0 = 0 and u_1 = 1.  Equals the n-th coefficient of g_series."""
    if n < 0:
        raise InvalidInputError("length must be >= 0")
    if n <= 1:
        return n
    return sum(catalan_number(n - 1 - k) * ballot(k, n - 2 - k) for k in range(n - 1))


def catalan_transform(seq: Sequence[int]) -> list[int]:
    """Compose the generating function of ``seq`` with x*C(x)."""
    source = IntSeries(tuple(seq))
    inner = catalan_series(source.order).shift_up()
    return list(source.compose(inner).coefficients)


def invert_transform(seq: Sequence[int]) -> list[int]:
    """Coefficients of 1/(1-G) where G is the generating function of ``seq``.

    The leading term of ``seq`` must be 0 (G has no constant term).
    """
    g = IntSeries(tuple(seq))
    if g.coefficients[0] != 0:
        raise InvalidInputError("invert transform needs a sequence with leading term 0")
    return list((IntSeries.constant(1, g.order) - g).reciprocal().coefficients)


def transforms(seq: Sequence[int], which: str) -> list[int]:
    """Dispatch: which in {"invert", "catalan"}."""
    if which == "invert":
        return invert_transform(seq)
    if which == "catalan":
        return catalan_transform(seq)
    raise InvalidInputError(f"unknown transform {which!r}")


def bfile_lines(values: Iterable[int], offset: int = 0) -> list[str]:
    """OEIS b-file lines "n a(n)", one per value, starting at ``offset``."""
    return [f"{offset + i} {v}" for i, v in enumerate(values)]
