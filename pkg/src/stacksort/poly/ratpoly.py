"""Univariate polynomials over Q, Sturm sequences, and coefficient-shape tests."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union


class RationalPoly:
    """Dense univariate polynomial, coefficients low degree first, no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPoly):
            other = RationalPoly(other)
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"RationalPoly({[str(v) for v in self.c]})"

    def lead(self) -> Fraction:
        return self.c[-1]

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return RationalPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-v for v in self.c)

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            return RationalPoly(v * other for v in self.c)
        if not self.c or not other.c:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(other.c)
        if dq < 0:
            return RationalPoly(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.c[-1]
        for k in range(dq, -1, -1):
            f = rem[k + len(other.c) - 1] / lead
            q[k] = f
            if f:
                for i, b in enumerate(other.c):
                    rem[k + i] -= f * b
        return RationalPoly(q), RationalPoly(rem[: len(other.c) - 1])

    def __floordiv__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * v for i, v in enumerate(self.c) if i)

    def monic(self) -> "RationalPoly":
        return self * (1 / self.lead()) if self.c else self

    def __call__(self, x):
        acc = Fraction(0)
        for v in reversed(self.c):
            acc = acc * x + v
        return acc


Polyish = Union[RationalPoly, Sequence]


def _as_poly(p: Polyish) -> RationalPoly:
    return p if isinstance(p, RationalPoly) else RationalPoly(p)


def _coeffs(p: Polyish) -> list:
    if isinstance(p, RationalPoly):
        return list(p.c)
    c = list(p)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    while b:
        a, b = b, a % b
    return a.monic()


def square_free_part(p: RationalPoly) -> RationalPoly:
    g = poly_gcd(p, p.derivative())
    return p // g


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_changes(values: Iterable) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _signs_at_infinity(seq: list[RationalPoly], positive: bool) -> list[int]:
    out = []
    for q in seq:
        s = 1 if q.lead() > 0 else -1
        if not positive and q.degree % 2:
            s = -s
        out.append(s)
    return out


def count_real_roots(p: Polyish) -> int:
    """Number of distinct real roots, by Sturm's theorem over the whole line."""
    p = _as_poly(p)
    if not p:
        raise ValueError("the zero polynomial has no finite root count")
    seq = sturm_sequence(p)
    return _sign_changes(_signs_at_infinity(seq, False)) - _sign_changes(_signs_at_infinity(seq, True))


def is_real_rooted(p: Polyish) -> bool:
    p = _as_poly(p)
    if not p:
        raise ValueError("real-rootedness of the zero polynomial is undefined")
    sqf = square_free_part(p)
    return count_real_roots(sqf) == sqf.degree


def is_symmetric(p: Polyish, n: int | None = None) -> bool:
    """a_i == a_{n-i}; without n, the center is the midpoint of the support."""
    c = _coeffs(p)
    if n is None:
        if not c:
            return True
        lo = next(i for i, v in enumerate(c) if v)
        n = lo + len(c) - 1
    if len(c) > n + 1:
        return False
    c = c + [0] * (n + 1 - len(c))
    return all(c[i] == c[n - i] for i in range(n + 1))


def is_unimodal(p: Polyish) -> bool:
    c = _coeffs(p)
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i + 1 >= len(c)


def is_log_concave(p: Polyish) -> bool:
    c = _coeffs(p)
    return all(c[i - 1] * c[i + 1] <= c[i] * c[i] for i in range(1, len(c) - 1))


def gamma_expansion(p: Polyish, n: int) -> list[Fraction]:
    """Coefficients gamma_m with p = sum_m gamma_m x^m (1+x)^(n-2m)."""
    c = [Fraction(v) for v in _coeffs(p)]
    if not is_symmetric(c, n):
        raise ValueError(f"polynomial is not symmetric with center {n}/2")
    c += [Fraction(0)] * (n + 1 - len(c))
    gamma = []
    for m in range(n // 2 + 1):
        g = c[m]
        gamma.append(g)
        if g:
            for k in range(n - 2 * m + 1):
                c[m + k] -= g * comb(n - 2 * m, k)
    if any(c):
        raise ArithmeticError("gamma expansion left a nonzero remainder")
    return gamma


def gamma_reconstruct(gamma: Sequence, n: int) -> list[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for m, g in enumerate(gamma):
        for k in range(n - 2 * m + 1):
            out[m + k] += g * comb(n - 2 * m, k)
    return out


def is_gamma_nonneg(gamma: Sequence) -> bool:
    return all(g >= 0 for g in gamma)
