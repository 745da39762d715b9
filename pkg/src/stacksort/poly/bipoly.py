from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterator, Mapping, Union

Coeff = Union[int, Fraction]


class BiPoly:
    """Sparse polynomial in x and y, stored as {(i, j): coeff} with no zeros.

    Coefficients are Python ints (or Fractions where a caller needs them).
    Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Coeff] | None = None):
        self._terms = {k: v for k, v in (terms or {}).items() if v}
        self._hash = None

    @classmethod
    def const(cls, c: Coeff) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Coeff = 1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @property
    def terms(self) -> Mapping[tuple[int, int], Coeff]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[tuple[int, int], Coeff]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, i: int, j: int) -> Coeff:
        return self._terms.get((i, j), 0)

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    @staticmethod
    def _lift(other) -> "BiPoly | None":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other)
        return None

    def __add__(self, other) -> "BiPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        other = self._lift(other)
        return NotImplemented if other is None else self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        other = self._lift(other)
        return NotImplemented if other is None else other - self

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return BiPoly({k: v * other for k, v in self._terms.items()})
        out: dict[tuple[int, int], Coeff] = defaultdict(int)
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in other._terms.items():
                out[i1 + i2, j1 + j2] += a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        out = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == BiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def evaluate(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self._terms.items())

    def at_y1(self) -> "BiPoly":
        """Specialize y = 1, keeping the result as a polynomial in x."""
        out: dict[tuple[int, int], Coeff] = defaultdict(int)
        for (i, _), c in self._terms.items():
            out[i, 0] += c
        return BiPoly(out)

    def at_x1(self) -> "BiPoly":
        out: dict[tuple[int, int], Coeff] = defaultdict(int)
        for (_, j), c in self._terms.items():
            out[0, j] += c
        return BiPoly(out)

    def total(self) -> Coeff:
        return sum(self._terms.values())

    def x_coeffs(self) -> list[Coeff]:
        """Dense coefficient list of the y = 1 specialization, indexed by x-degree."""
        out = [0] * (self.degree_x() + 1)
        for (i, _), c in self._terms.items():
            out[i] += c
        return out

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by x^di y^dj; negative shifts must not leave the monomial lattice."""
        out = {}
        for (i, j), c in self._terms.items():
            if i + di < 0 or j + dj < 0:
                raise ValueError("shift would produce a negative exponent")
            out[i + di, j + dj] = c
        return BiPoly(out)

    def to_json(self) -> list[list]:
        return [[i, j, str(c)] for (i, j), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, rows) -> "BiPoly":
        return cls({(int(i), int(j)): int(c) for i, j, c in rows})

    def __repr__(self) -> str:
        if not self._terms:
            return "BiPoly(0)"
        parts = []
        for (i, j), c in sorted(self._terms.items()):
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                )
            )
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return "BiPoly(" + " + ".join(parts) + ")"
