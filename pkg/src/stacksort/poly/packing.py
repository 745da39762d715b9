"""Kronecker packing of nonnegative bivariate polynomials into single integers.

A polynomial with coefficients c[i, j] (0 <= i <= max_x, 0 <= j <= max_y) is
stored as sum c[i, j] * 2^(width * (i + j * (max_x + 1))). Sums and products
of packed values stay exact as long as every coefficient of every value
produced is nonnegative, below 2^width, and inside the degree box. The
recurrence tables satisfy this: all their values count permutations of
length <= max_x, and the statistics des+1 and peak+1 are bounded by the
length. Subtraction is exact when it is coefficientwise nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .bipoly import BiPoly


@dataclass(frozen=True)
class Packer:
    max_x: int
    max_y: int
    width: int  # bits per slot, a multiple of 8

    @classmethod
    def for_length(cls, n_max: int, track_peaks: bool = True) -> "Packer":
        """A packer wide enough for fertility polynomials of permutations of length <= n_max."""
        bound = factorial(max(n_max, 1)) * 4
        width = -(-bound.bit_length() // 8) * 8
        return cls(n_max, (n_max + 1) // 2 + 1 if track_peaks else 0, width)

    @property
    def slots(self) -> int:
        return (self.max_x + 1) * (self.max_y + 1)

    def pack(self, p: BiPoly) -> int:
        out = 0
        limit = 1 << self.width
        for (i, j), c in p.terms.items():
            if j > self.max_y:
                if self.max_y == 0:
                    # peaks are not tracked: fold y into the constant
                    j = 0
                else:
                    raise ValueError(f"y-degree {j} exceeds packing box")
            if i > self.max_x:
                raise ValueError(f"x-degree {i} exceeds packing box")
            if not 0 <= c < limit:
                raise ValueError("coefficient does not fit in a packing slot")
            out += c << (self.width * (i + j * (self.max_x + 1)))
        return out

    def unpack(self, v: int) -> BiPoly:
        if v < 0:
            raise ValueError("packed value went negative")
        nbytes = self.width // 8
        raw = v.to_bytes(nbytes * self.slots + 1, "little")
        if raw[-1]:
            raise OverflowError("packed value exceeds the packing box")
        terms = {}
        for s in range(self.slots):
            c = int.from_bytes(raw[s * nbytes:(s + 1) * nbytes], "little")
            if c:
                terms[s % (self.max_x + 1), s // (self.max_x + 1)] = c
        return BiPoly(terms)

    def total(self, v: int) -> int:
        """Value of the packed polynomial at x = y = 1."""
        return self.unpack(v).total()
