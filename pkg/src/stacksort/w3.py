"""Counting 3-stack-sortable permutations through legal-space refined tail classes.

B^(g)_{>=l}(n) counts preimages under s of the 2-stack-sortable permutations
of length n + l with tail length >= l and exactly l + g legal spaces. Then

    W_3(n) = sum_{g=1}^{n+1} B^(g)_{>=0}(n).

The same recurrence, run on Kronecker-packed polynomials (poly.packing) with
C_k replaced by L_k(x, y), yields the x^(des+1) y^(peak+1) refinement.

Cells are keyed (n, l) and hold a list indexed by g = 0..n+1. They are filled by
anti-diagonals d = n + l: cell (n+1, l) reads anti-diagonals < d + 1 plus
(n, l+1) from its own anti-diagonal, so a table of depth d knows every cell
with n + l <= d and can be deepened (or resumed from a checkpoint) in place.

Two fills exist. `naive` evaluates the quadruple sum literally through an
audited accessor. `fast` keeps, per cell, prefix sums over g, which turns the
inner sum over b into one subtraction. Tests require both to agree.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from typing import Callable

from .poly import BiPoly, Packer, catalan, l_poly
from .w2 import InsufficientDepthError

FORMAT = "stacksort.w3/1"


class CheckpointError(ValueError):
    pass


class _Engine:
    """Recurrence storage over int-like values (counts, or packed polynomials)."""

    kind = ""

    def __init__(self, depth: int, method: str = "fast", on_diagonal: Callable | None = None):
        if method not in ("fast", "naive"):
            raise ValueError(f"unknown method {method!r}")
        self.method = method
        self.depth = 0
        self.audit = 0  # out-of-range reads seen by the naive accessor
        self._B: list[list[list[int]]] = [[]]  # _B[n][l][g]
        self._P: list[list[list[int]]] = [[]]  # _P[n][l][k] = sum_{b=2}^{k} _B[n][l][b]
        self.extend(depth, on_diagonal)

    # values supplied by the concrete table
    def _seed(self, ell: int) -> int:
        """B^(2)_{>=l}(1)."""
        raise NotImplementedError

    def _weight(self, k: int) -> int:
        """The factor multiplying B^(g-1)_{>=j-1}(n) (C_k or L_k)."""
        raise NotImplementedError

    def extend(self, depth: int, on_diagonal: Callable | None = None) -> None:
        self._weights = [self._weight(k) for k in range(depth + 1)]
        for d in range(self.depth + 1, depth + 1):
            self._B.append([])
            self._P.append([])
            for n in range(1, d + 1):
                ell = d - n
                cell = [0, 0, self._seed(ell)] if n == 1 else self._cell(n - 1, ell)
                self._publish(n, ell, cell)
            self.depth = d
            if on_diagonal is not None:
                on_diagonal(self)

    def _publish(self, n: int, ell: int, cell: list[int]) -> None:
        assert len(self._B[n]) == ell and len(cell) == n + 2
        pre = [0, 0]
        acc = 0
        for b in range(2, n + 2):
            acc += cell[b]
            pre.append(acc)
        self._B[n].append(cell)
        self._P[n].append(pre)

    def _get(self, n: int, ell: int, g: int) -> int:
        if n < 1 or ell < 0 or n + ell > self.depth + 1 or g < 0 or g > n + 1 or ell >= len(self._B[n]):
            self.audit += 1
            return 0
        return self._B[n][ell][g]

    def _cell(self, n: int, ell: int) -> list[int]:
        """The g-list of cell (n + 1, l)."""
        return self._cell_fast(n, ell) if self.method == "fast" else self._cell_naive(n, ell)

    def _cell_naive(self, n: int, ell: int) -> list[int]:
        get, C = self._get, self._weights
        out = [0] * (n + 3)
        for g in range(1, n + 3):
            total = get(n, ell + 1, g - 1)
            for j in range(1, ell + 1):
                for a in range(2, n + 1):
                    for b in range(max(2, g - a), g):
                        for i in range(a - 1, n - b + 2):
                            total += get(i, j - 1, a) * get(n - i, ell - j + 1, b)
                total += get(n, j - 1, g - 1) * C[ell - j + 1]
            out[g] = total
        return out

    def _cell_fast(self, n: int, ell: int) -> list[int]:
        B, P, C = self._B, self._P, self._weights
        out = [0] * (n + 3)
        row_n = B[n]
        for g in range(1, n + 3):
            total = row_n[ell + 1][g - 1]
            for j in range(1, ell + 1):
                total += row_n[j - 1][g - 1] * C[ell - j + 1]
                r = ell - j + 1
                for i in range(1, n):
                    hi = min(g - 1, n - i + 1)
                    if hi < 2:
                        continue
                    pre = P[n - i][r]
                    top = pre[hi]
                    left = B[i][j - 1]
                    # a >= g - hi makes the b-range [max(2, g-a), hi] nonempty
                    for a in range(max(2, g - hi), min(n, i + 1) + 1):
                        lo = g - a
                        if lo <= 2:
                            total += left[a] * top
                        else:
                            total += left[a] * (top - pre[lo - 1])
            out[g] = total
        return out

    def _raw_cell(self, n: int, ell: int) -> list[int]:
        if n < 1 or ell < 0:
            raise IndexError(f"invalid cell (n={n}, l={ell})")
        if n + ell > self.depth:
            raise InsufficientDepthError(f"(n={n}, l={ell}) needs depth {n + ell}, table has {self.depth}")
        return self._B[n][ell]

    def _raw(self, n: int, ell: int, g: int) -> int:
        cell = self._raw_cell(n, ell)
        return cell[g] if 0 <= g < len(cell) else 0

    def _raw_total(self, n: int) -> int:
        return sum(self._raw_cell(n, 0)[1:])

    # ------------------------------------------------------------ persistence

    def _encode(self, v: int) -> str:
        return format(v, "x")

    def _header(self) -> dict:
        return {"format": FORMAT, "kind": self.kind, "depth": self.depth}

    def to_json(self) -> dict:
        body = self._header()
        body["cells"] = [[n, ell, [self._encode(v) for v in cell]]
                         for n in range(1, self.depth + 1) for ell, cell in enumerate(self._B[n])]
        return body

    def _restore(self, obj: dict) -> None:
        self.depth = obj["depth"]
        self.audit = 0
        self.method = "fast"
        self._B = [[] for _ in range(self.depth + 1)]
        self._P = [[] for _ in range(self.depth + 1)]
        for n, ell, cell in obj["cells"]:
            self._publish(n, ell, [int(v, 16) for v in cell])
        if any(len(self._B[n]) != self.depth - n + 1 for n in range(1, self.depth + 1)):
            raise CheckpointError("checkpoint cells do not cover the stated depth")

    def save(self, path: str) -> None:
        """Write an atomic, checksummed checkpoint."""
        body = self.to_json()
        text = json.dumps(body, sort_keys=True, separators=(",", ":"))
        wrapped = json.dumps({"sha256": hashlib.sha256(text.encode()).hexdigest(), "table": body},
                             sort_keys=True, separators=(",", ":"))
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".w3-", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(wrapped)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str):
        with open(path) as fh:
            raw = fh.read()
        try:
            obj = json.loads(raw)
            body = obj["table"]
            digest = obj["sha256"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from None
        text = json.dumps(body, sort_keys=True, separators=(",", ":"))
        if hashlib.sha256(text.encode()).hexdigest() != digest:
            raise CheckpointError(f"checksum mismatch in {path}")
        return cls.from_json(body)

    @classmethod
    def from_json(cls, obj: dict):
        if obj.get("format") != FORMAT:
            raise CheckpointError(f"unsupported checkpoint format {obj.get('format')!r}")
        if obj.get("kind") != cls.kind:
            raise CheckpointError(f"expected a {cls.kind} table, got {obj.get('kind')!r}")
        t = cls.__new__(cls)
        t._init_from_header(obj)
        t._restore(obj)
        return t

    def _init_from_header(self, obj: dict) -> None:
        pass


class W3Table(_Engine):
    """Counts B^(g)_{>=l}(n) for n >= 1, l >= 0, n + l <= depth, 0 <= g <= n + 1."""

    kind = "counts"

    def _seed(self, ell: int) -> int:
        return catalan(ell + 1)

    def _weight(self, k: int) -> int:
        return catalan(k)

    def entry(self, n: int, ell: int, g: int) -> int:
        return self._raw(n, ell, g)

    def w3(self, n: int) -> int:
        if n == 0:
            return 1
        return self._raw_total(n)

    def counts(self, n_max: int) -> list[int]:
        """[W_3(1), ..., W_3(n_max)]."""
        return [self.w3(n) for n in range(1, n_max + 1)]


class W3PolyTable(_Engine):
    """Polynomials E^(g)_{>=l}(n) = sum x^(des+1) y^(peak+1) over the preimages counted by B^(g)_{>=l}(n).

    With track_peaks=False every polynomial is stored at y = 1.
    """

    kind = "poly"

    def __init__(self, depth: int, track_peaks: bool = True, method: str = "fast",
                 on_diagonal: Callable | None = None):
        self.track_peaks = track_peaks
        self.packer = Packer.for_length(max(depth, 1), track_peaks)
        super().__init__(depth, method, on_diagonal)

    def _seed(self, ell: int) -> int:
        return self.packer.pack(l_poly(ell + 1))

    def _weight(self, k: int) -> int:
        return self.packer.pack(l_poly(k))

    def extend(self, depth: int, on_diagonal: Callable | None = None) -> None:
        if depth > self.packer.max_x:
            old = self.packer
            self.packer = Packer.for_length(depth, self.track_peaks)
            repack = lambda v: self.packer.pack(old.unpack(v))
            self._B = [[[repack(v) for v in cell] for cell in row] for row in self._B]
            self._P = [[[repack(v) for v in pre] for pre in row] for row in self._P]
        super().extend(depth, on_diagonal)

    def entry(self, n: int, ell: int, g: int) -> BiPoly:
        return self.packer.unpack(self._raw(n, ell, g))

    def w3_poly(self, n: int) -> BiPoly:
        if n == 0:
            return BiPoly.x()
        return self.packer.unpack(self._raw_total(n))

    def triangle(self, n: int) -> dict[tuple[int, int], int]:
        """{(k, p): W_3(n, k, p)}; p is 0 throughout when peaks are not tracked."""
        return {(i - 1, j - 1 if self.track_peaks else 0): c for (i, j), c in self.w3_poly(n)}

    def descent_coeffs(self, n: int) -> list[int]:
        """[W_3(n, k) for k = 0..n-1]."""
        out = [0] * max(n, 1)
        for (i, _), c in self.w3_poly(n):
            out[i - 1] += c
        return out

    def specialize(self) -> W3Table:
        """The count table obtained at x = y = 1."""
        t = W3Table.__new__(W3Table)
        t.depth, t.audit, t.method = self.depth, 0, self.method
        t._B = [[[self.packer.total(v) for v in cell] for cell in row] for row in self._B]
        t._P = [[[self.packer.total(v) for v in pre] for pre in row] for row in self._P]
        return t

    def _header(self) -> dict:
        h = super()._header()
        h.update(track_peaks=self.track_peaks, packer=[self.packer.max_x, self.packer.max_y, self.packer.width])
        return h

    def _init_from_header(self, obj: dict) -> None:
        self.track_peaks = obj["track_peaks"]
        self.packer = Packer(*obj["packer"])


def build_w3_table(n_max: int, method: str = "fast", checkpoint: str | None = None) -> W3Table:
    """A table deep enough for W_3(1..n_max).

    With a checkpoint path, an existing checkpoint is resumed and the table is
    re-saved after every completed anti-diagonal.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return _build(W3Table, n_max, checkpoint, method=method)


def build_w3_poly_table(n_max: int, track_peaks: bool = True, method: str = "fast",
                        checkpoint: str | None = None) -> W3PolyTable:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return _build(W3PolyTable, n_max, checkpoint, method=method, track_peaks=track_peaks)


def _build(cls, n_max: int, checkpoint: str | None, **kw):
    if checkpoint is None:
        return cls(n_max, **kw)
    save = lambda t: t.save(checkpoint)
    if os.path.exists(checkpoint):
        table = cls.load(checkpoint)
        if cls is W3PolyTable and table.track_peaks != kw["track_peaks"]:
            raise CheckpointError("checkpoint peak tracking does not match the request")
        table.method = kw["method"]
        table.extend(n_max, save)
        return table
    return cls(n_max, on_diagonal=save, **kw)


def w3_count(table: W3Table, n: int) -> int:
    return table.w3(n)


def w3_triangle(table: W3PolyTable, n: int) -> dict[tuple[int, int], int]:
    return table.triangle(n)
