"""Tail-class recurrence for 2-stack-sortable permutations, and checks of its
generating-function identities.

B_{>=l}(n) counts preimages under s of the 231-avoiders of length n + l whose
tail has length >= l. One recurrence fills these counts; fed with Kronecker
packed polynomials (see poly.packing) instead of integers, the same recurrence
tracks x^(des+1) y^(peak+1).

Entries are computed by anti-diagonals d = n + l. Entry (l, n) only reads
anti-diagonals < d and the entry (l + 1, n - 1) on its own anti-diagonal, so a
table of depth d holds exactly the cells with n + l <= d and can be deepened
later without recomputation.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable

from .poly import BiPoly, Packer, TruncatedSeries, catalan, l_poly

FORMAT = "stacksort.w2/1"


class InsufficientDepthError(LookupError):
    pass


class FixtureError(ValueError):
    pass


def _fill_diagonal(vals: dict, d: int, base: Callable[[int], int]) -> None:
    vals[d, 0] = base(d)
    for n in range(1, d + 1):
        ell, m = d - n, n - 1
        acc = 0
        for i in range(1, m + 1):
            for j in range(1, ell + 1):
                acc += vals[ell - j + 1, m - i] * vals[j - 1, i]
        vals[ell, n] = acc + vals[ell + 1, m]


class _RecurrenceTable:
    """Shared storage: vals[(ell, n)] for ell + n <= depth."""

    def __init__(self, depth: int):
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        self.depth = -1
        self._vals: dict[tuple[int, int], int] = {}
        self.extend(depth)

    def _base(self, ell: int) -> int:
        raise NotImplementedError

    def extend(self, depth: int) -> None:
        for d in range(self.depth + 1, depth + 1):
            _fill_diagonal(self._vals, d, self._base)
            self.depth = d

    def _raw(self, ell: int, n: int) -> int:
        if ell < 0 or n < 0:
            raise IndexError(f"negative index ({ell}, {n})")
        if ell + n > self.depth:
            raise InsufficientDepthError(f"(l={ell}, n={n}) needs depth {ell + n}, table has {self.depth}")
        return self._vals[ell, n]

    def _raw_exact(self, ell: int, n: int) -> int:
        if n == 0:
            return self._raw(ell, 0)
        return self._raw(ell, n) - self._raw(ell + 1, n - 1)

    def cells(self):
        return sorted(self._vals)


class W2Table(_RecurrenceTable):
    """Counts B_{>=l}(n) for l + n <= depth."""

    def _base(self, ell: int) -> int:
        return catalan(ell)

    def at_least(self, ell: int, n: int) -> int:
        return self._raw(ell, n)

    def exact(self, ell: int, n: int) -> int:
        """B_l(n): tail length exactly l."""
        v = self._raw_exact(ell, n)
        assert v >= 0, f"negative count at (l={ell}, n={n})"
        return v

    def w2(self, n: int) -> int:
        return self.at_least(0, n)

    def counts(self, n_max: int) -> list[int]:
        """[W_2(1), ..., W_2(n_max)]."""
        return [self.w2(n) for n in range(1, n_max + 1)]

    def to_json(self) -> dict:
        return {"format": FORMAT, "kind": "counts", "depth": self.depth,
                "cells": [{"ell": l, "n": n, "value": str(v)} for (l, n), v in sorted(self._vals.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> "W2Table":
        _check_format(obj, "counts")
        t = cls.__new__(cls)
        t.depth = obj["depth"]
        t._vals = {(c["ell"], c["n"]): int(c["value"]) for c in obj["cells"]}
        _check_complete(t)
        return t


class W2PolyTable(_RecurrenceTable):
    """Polynomials sum x^(des+1) y^(peak+1) over the preimages counted by B_{>=l}(n).

    With track_peaks=False every entry is stored at y = 1.
    """

    def __init__(self, depth: int, track_peaks: bool = True, packer: Packer | None = None):
        self.track_peaks = track_peaks
        self.packer = packer or Packer.for_length(depth, track_peaks)
        super().__init__(depth)

    def _base(self, ell: int) -> int:
        return self.packer.pack(l_poly(ell) if ell else BiPoly.x())

    def extend(self, depth: int) -> None:
        if depth > self.packer.max_x:
            # the packing box is sized for the depth; re-pack into a larger one
            old = self.packer
            self.packer = Packer.for_length(depth, self.track_peaks)
            self._vals = {k: self.packer.pack(old.unpack(v)) for k, v in self._vals.items()}
        super().extend(depth)

    def at_least(self, ell: int, n: int) -> BiPoly:
        return self.packer.unpack(self._raw(ell, n))

    def exact(self, ell: int, n: int) -> BiPoly:
        return self.packer.unpack(self._raw_exact(ell, n))

    def w2_poly(self, n: int) -> BiPoly:
        return self.at_least(0, n)

    def triangle(self, n: int) -> dict[tuple[int, int], int]:
        """{(k, p): W_2(n, k, p)}; p is 0 throughout when peaks are not tracked."""
        out = {}
        for (i, j), c in self.w2_poly(n):
            out[i - 1, j - 1 if self.track_peaks else 0] = c
        return out

    def specialize(self) -> W2Table:
        """The count table obtained at x = y = 1."""
        t = W2Table.__new__(W2Table)
        t.depth = self.depth
        t._vals = {k: self.packer.total(v) for k, v in self._vals.items()}
        return t

    def to_json(self) -> dict:
        return {"format": FORMAT, "kind": "poly", "depth": self.depth, "track_peaks": self.track_peaks,
                "cells": [{"ell": l, "n": n, "value": self.packer.unpack(v).to_json()}
                          for (l, n), v in sorted(self._vals.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> "W2PolyTable":
        _check_format(obj, "poly")
        t = cls.__new__(cls)
        t.depth = obj["depth"]
        t.track_peaks = obj["track_peaks"]
        t.packer = Packer.for_length(t.depth, t.track_peaks)
        t._vals = {(c["ell"], c["n"]): t.packer.pack(BiPoly.from_json(c["value"])) for c in obj["cells"]}
        _check_complete(t)
        return t


def _check_format(obj: dict, kind: str) -> None:
    if obj.get("format") != FORMAT:
        raise ValueError(f"unsupported table format {obj.get('format')!r}")
    if obj.get("kind") != kind:
        raise ValueError(f"expected a {kind} table, got {obj.get('kind')!r}")


def _check_complete(t: _RecurrenceTable) -> None:
    want = {(l, n) for n in range(t.depth + 1) for l in range(t.depth + 1 - n)}
    if set(t._vals) != want:
        raise ValueError("table cells do not cover the stated depth")


def build_w2_table(n_max: int, ell_max: int = 0) -> W2Table:
    """Fill every B_{>=l}(n) with l + n <= n_max + ell_max."""
    if n_max < 0 or ell_max < 0:
        raise ValueError("n_max and ell_max must be nonnegative")
    return W2Table(n_max + ell_max)


def build_w2_poly_table(n_max: int, ell_max: int = 0, track_peaks: bool = True) -> W2PolyTable:
    if n_max < 0 or ell_max < 0:
        raise ValueError("n_max and ell_max must be nonnegative")
    return W2PolyTable(n_max + ell_max, track_peaks)


# ---------------------------------------------------------------- fixtures

def parse_fixture(raw: str) -> dict:
    obj = json.loads(raw)
    digest = obj.pop("sha256", None)
    canon = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    if hashlib.sha256(canon.encode()).hexdigest() != digest:
        raise FixtureError("polynomial fixture checksum mismatch")
    return obj


@lru_cache(maxsize=None)
def load_fixtures() -> dict:
    """The hard-coded polynomials Q(u, v, w, z) and R(v, w, x, y), checksum-verified."""
    return parse_fixture(resources.files("stacksort").joinpath("data/gf_polynomials.json").read_text())


def _terms(name: str) -> list[tuple[tuple[int, ...], int]]:
    return [(tuple(e), c) for e, c in load_fixtures()[name]["terms"]]


def _evaluate(terms, values, one):
    """sum c * prod values[k]^e[k], with powers cached."""
    cache: dict[tuple[int, int], object] = {}

    def power(k, e):
        if (k, e) not in cache:
            cache[k, e] = one if e == 0 else power(k, e - 1) * values[k]
        return cache[k, e]

    acc = one * 0
    for exps, c in terms:
        term = one * c
        for k, e in enumerate(exps):
            if e:
                term = term * power(k, e)
        acc = acc + term
    return acc


# ---------------------------------------------------------------- residuals

@dataclass
class ResidualReport:
    identity: str
    order_w: int
    order_z: int
    # (n, l) -> whether the residual coefficient of w^n z^l vanishes
    vanishing: dict[tuple[int, int], bool] = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(self.vanishing.values())

    @property
    def failures(self) -> list[tuple[int, int]]:
        return sorted(k for k, ok in self.vanishing.items() if not ok)

    def to_json(self) -> dict:
        return {"identity": self.identity, "order_w": self.order_w, "order_z": self.order_z,
                "passed": self.passed,
                "orders": [{"n": n, "l": l, "zero": ok} for (n, l), ok in sorted(self.vanishing.items())]}


def _report(name: str, residual: TruncatedSeries, order_w: int, order_z: int) -> ResidualReport:
    return ResidualReport(name, order_w, order_z,
                          {(n, l): not residual.coeff(n, l)
                           for n in range(order_w + 1) for l in range(order_z + 1)})


def _series_i(table: W2Table, order_w: int, order_z: int) -> TruncatedSeries:
    """I(w, z) = sum B_{>=l}(n) w^n z^l, truncated; only cells with n + l <= depth exist."""
    if order_w + order_z > table.depth:
        raise InsufficientDepthError(f"orders ({order_w}, {order_z}) need depth {order_w + order_z}")
    return TruncatedSeries.from_function(order_w, order_z, lambda n, l: table.at_least(l, n))


def _w2_table_for(order: int, table: W2Table | None) -> W2Table:
    if table is None:
        return W2Table(order)
    if table.depth < order:
        raise InsufficientDepthError(f"need depth {order}, table has {table.depth}")
    return table


def check_eq6(N: int, M: int, table: W2Table | None = None) -> ResidualReport:
    """(I - I(w,0))(I - C(z)) = (I - C(z))/w - (I - I(w,0))/z through w^N z^M."""
    # one extra order in each variable survives the divisions by w and z
    table = _w2_table_for(N + M + 2, table)
    I = _series_i(table, N + 1, M + 1)
    I0 = TruncatedSeries.from_function(N + 1, M + 1, lambda n, l: table.at_least(0, n) if l == 0 else 0)
    C = TruncatedSeries.from_function(N + 1, M + 1, lambda n, l: catalan(l) if n == 0 else 0)
    lhs = (I - I0) * (I - C)
    rhs = (I - C).shift(-1, 0) - (I - I0).shift(0, -1)
    return _report("kernel", (lhs - rhs).truncate(N, M), N, M)


def check_eq37(N: int, M: int, table: W2Table | None = None) -> ResidualReport:
    """Q(I(w,z), I(w,0), w, z) = 0 through w^N z^M."""
    table = _w2_table_for(N + M, table)
    I = _series_i(table, N, M)
    I0 = TruncatedSeries.from_function(N, M, lambda n, l: table.at_least(0, n) if l == 0 else 0)
    w = TruncatedSeries.from_function(N, M, lambda n, l: int((n, l) == (1, 0)))
    z = TruncatedSeries.from_function(N, M, lambda n, l: int((n, l) == (0, 1)))
    one = TruncatedSeries.constant(1, N, M)
    return _report("algebraic", _evaluate(_terms("Q"), [I, I0, w, z], one), N, M)


def check_theorem7(N: int, table: W2PolyTable | None = None) -> ResidualReport:
    """R(V, w, x, y) = 0 through w^N, V = sum_n (sum over W_2(n) of x^(des+1) y^(peak+1)) w^n."""
    if table is None:
        table = W2PolyTable(N)
    elif table.depth < N or not table.track_peaks:
        raise InsufficientDepthError(f"need a peak-tracking table of depth {N}")
    zero = BiPoly()
    V = TruncatedSeries.univariate([table.w2_poly(n) for n in range(N + 1)], N, zero=zero)
    w = TruncatedSeries.univariate([zero, BiPoly.const(1)], N, zero=zero)
    x = TruncatedSeries.constant(BiPoly.x(), N, zero=zero)
    y = TruncatedSeries.constant(BiPoly.y(), N, zero=zero)
    one = TruncatedSeries.constant(BiPoly.const(1), N, zero=zero)
    return _report("refined", _evaluate(_terms("R"), [V, w, x, y], one), N, 0)
