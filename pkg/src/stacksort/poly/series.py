"""Truncated power series in two variables w and z.

A series keeps every coefficient w^n z^l with n <= order_w and l <= order_z.
Coefficients may be ints, Fractions, or BiPoly values; anything with + and *.
A univariate series is a series with order_z = 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable


class TruncatedSeries:
    __slots__ = ("order_w", "order_z", "grid")

    def __init__(self, order_w: int, order_z: int = 0, grid=None, zero=0):
        self.order_w = order_w
        self.order_z = order_z
        if grid is None:
            grid = [[zero] * (order_z + 1) for _ in range(order_w + 1)]
        else:
            if len(grid) != order_w + 1 or any(len(row) != order_z + 1 for row in grid):
                raise ValueError("coefficient grid does not match truncation orders")
        self.grid = grid

    @classmethod
    def from_function(cls, order_w: int, order_z: int, f: Callable[[int, int], object]) -> "TruncatedSeries":
        return cls(order_w, order_z, [[f(n, l) for l in range(order_z + 1)] for n in range(order_w + 1)])

    @classmethod
    def univariate(cls, coeffs: Iterable, order: int | None = None, zero=0) -> "TruncatedSeries":
        c = list(coeffs)
        order = len(c) - 1 if order is None else order
        c = (c + [zero] * (order + 1))[: order + 1]
        return cls(order, 0, [[v] for v in c])

    @classmethod
    def constant(cls, c, order_w: int, order_z: int = 0, zero=0) -> "TruncatedSeries":
        s = cls(order_w, order_z, zero=zero)
        s.grid[0][0] = c
        return s

    def coeff(self, n: int, l: int = 0):
        return self.grid[n][l]

    def coeffs_w(self) -> list:
        """Coefficients of a univariate series, by power of w."""
        return [row[0] for row in self.grid]

    def _check(self, other: "TruncatedSeries") -> None:
        if (self.order_w, self.order_z) != (other.order_w, other.order_z):
            raise ValueError("truncation orders differ")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        zero = self.grid[0][0] * 0
        return TruncatedSeries.constant(other, self.order_w, self.order_z, zero=zero)

    def __add__(self, other) -> "TruncatedSeries":
        other = self._lift(other)
        return TruncatedSeries(self.order_w, self.order_z,
                               [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.grid, other.grid)])

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order_w, self.order_z, [[-a for a in row] for row in self.grid])

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.order_w, self.order_z, [[a * other for a in row] for row in self.grid])
        self._check(other)
        N, M = self.order_w, self.order_z
        zero = self.grid[0][0] * 0
        out = [[zero] * (M + 1) for _ in range(N + 1)]
        nz = [(n, l, a) for n, row in enumerate(self.grid) for l, a in enumerate(row) if a]
        for n2, row in enumerate(other.grid):
            for l2, b in enumerate(row):
                if not b:
                    continue
                for n1, l1, a in nz:
                    if n1 + n2 <= N and l1 + l2 <= M:
                        out[n1 + n2][l1 + l2] = out[n1 + n2][l1 + l2] + a * b
        return TruncatedSeries(N, M, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        out = self._lift(self.grid[0][0] * 0 + 1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, dn: int = 0, dl: int = 0) -> "TruncatedSeries":
        """Multiply by w^dn z^dl; negative shifts divide and require the dropped
        coefficients to vanish. Coefficients shifted past the orders are lost."""
        N, M = self.order_w, self.order_z
        zero = self.grid[0][0] * 0
        out = [[zero] * (M + 1) for _ in range(N + 1)]
        for n, row in enumerate(self.grid):
            for l, a in enumerate(row):
                nn, ll = n + dn, l + dl
                if nn < 0 or ll < 0:
                    if a:
                        raise ArithmeticError("division by a variable with a nonzero remainder")
                    continue
                if nn <= N and ll <= M:
                    out[nn][ll] = a
        return TruncatedSeries(N, M, out)

    def truncate(self, order_w: int, order_z: int | None = None) -> "TruncatedSeries":
        order_z = self.order_z if order_z is None else order_z
        if order_w > self.order_w or order_z > self.order_z:
            raise ValueError("cannot raise truncation orders")
        return TruncatedSeries(order_w, order_z, [row[: order_z + 1] for row in self.grid[: order_w + 1]])

    def reciprocal(self) -> "TruncatedSeries":
        """1/S by Newton iteration; the constant term must be invertible."""
        c0 = Fraction(self.grid[0][0])
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        y = TruncatedSeries.constant(1 / c0, self.order_w, self.order_z, zero=Fraction(0))
        for _ in range(_newton_steps(self.order_w + self.order_z)):
            y = y * (2 - self * y)
        return y

    def sqrt(self) -> "TruncatedSeries":
        """Square root of a series with constant term 1, by Newton iteration."""
        if self.grid[0][0] != 1:
            raise ValueError("square root needs constant term 1")
        y = TruncatedSeries.constant(Fraction(1), self.order_w, self.order_z, zero=Fraction(0))
        half = Fraction(1, 2)
        for _ in range(_newton_steps(self.order_w + self.order_z)):
            y = (y + self * y.reciprocal()) * half
        return y

    def is_zero(self) -> bool:
        return not any(a for row in self.grid for a in row)

    def nonzero_orders(self) -> list[tuple[int, int]]:
        return [(n, l) for n, row in enumerate(self.grid) for l, a in enumerate(row) if a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.order_w, self.order_z) == (other.order_w, other.order_z) and self.grid == other.grid

    def __repr__(self) -> str:
        return f"TruncatedSeries(order_w={self.order_w}, order_z={self.order_z}, grid={self.grid})"


def _newton_steps(total_order: int) -> int:
    # precision doubles per step in the (w, z)-adic sense
    steps, prec = 0, 1
    while prec <= total_order:
        prec *= 2
        steps += 1
    return steps + 1


def catalan_series(order: int) -> TruncatedSeries:
    """C(z) = (1 - sqrt(1 - 4z)) / (2z) through z^order, as a univariate series in w."""
    s = TruncatedSeries.univariate([1, -4], order + 1, zero=Fraction(0))
    num = 1 - s.sqrt()
    c = num.shift(-1) * Fraction(1, 2)
    return c.truncate(order)
