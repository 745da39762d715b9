"""Exact analytics over computed count tables: parity, growth, bounds, and
the pattern-avoidance lower-bound series; plus table persistence.

Sequences are passed as lists [W(1), ..., W(N)] of Python ints. Nothing in
the decision path uses floating point; the few float fields are labeled
estimates for reporting.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from . import oracle
from .poly import TruncatedSeries, catalan, w2_closed_form
from .w2 import InsufficientDepthError, W2PolyTable, W2Table
from .w3 import W3PolyTable, W3Table

BUNDLE_FORMAT = "stacksort.tables/1"

# the leading odd/even pattern of W_3(2n+1), n = 0..20, as published
EPS3_ODD_PREFIX = (1, 0, 0, 0, 1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1)


class ChecksumError(ValueError):
    pass


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------- lower bound series

def kremer_coeffs(t: int, n_max: int) -> list[int]:
    """[|Av_n(Γ_t)| for n = t..n_max] from the closed-form generating function.

    (t-1)! x^(t-2) (1 + (t-1)x - sqrt(1 - 2(t+1)x + (t-1)^2 x^2)) / 2
    """
    if t < 1:
        raise ValueError("t must be positive")
    if n_max < t:
        return []
    order = n_max + 1
    disc = TruncatedSeries.univariate([1, -2 * (t + 1), (t - 1) ** 2], order, zero=Fraction(0))
    num = TruncatedSeries.univariate([1, t - 1], order, zero=Fraction(0)) - disc.sqrt()
    series = (num * Fraction(math.factorial(t - 1), 2)).shift(t - 2)
    out = []
    for n in range(t, n_max + 1):
        c = series.coeff(n)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c} at x^{n}")
        out.append(int(c))
    return out


def verify_gamma_t_containment(t: int, n: int, cap: int = oracle.DEFAULT_CAP) -> bool:
    """Every Γ_t-avoider of length n is t-stack-sortable (exhaustive)."""
    if n > cap:
        raise oracle.OracleCapError(f"length {n} exceeds the enumeration cap {cap}")
    _, bad = oracle.brute_avoiders(n, oracle.gamma_t_patterns(t), t)
    return bad == 0


# ---------------------------------------------------------------- parity

@dataclass(frozen=True)
class ParityRecord:
    n: int
    eps: int  # W(n) mod 2
    g: int  # number of odd W(m) with 1 <= m <= n


def parity_table(values: Sequence[int]) -> list[ParityRecord]:
    out, g = [], 0
    for n, w in enumerate(values, start=1):
        g += w & 1
        out.append(ParityRecord(n, w & 1, g))
    return out


def parity_bits(values: Sequence[int]) -> str:
    """One character per n >= 1."""
    return "".join(str(w & 1) for w in values)


def g_count(values: Sequence[int], m: int) -> int:
    if m > len(values):
        raise InsufficientDepthError(f"need {m} values, have {len(values)}")
    return sum(w & 1 for w in values[:m])


def compare_g(m: int, w3_values: Sequence[int]) -> tuple[int, int, int]:
    """(g_1(m), g_2(m), g_3(m)): odd counts among W_t(1..m) for t = 1, 2, 3."""
    g1 = sum(catalan(n) & 1 for n in range(1, m + 1))
    g2 = sum(w2_closed_form(n) & 1 for n in range(1, m + 1))
    return g1, g2, g_count(w3_values, m)


def odd_prefix_matches(w3_values: Sequence[int]) -> list[bool]:
    """Per-n agreement of W_3(2n+1) mod 2 with the published leading pattern."""
    need = 2 * (len(EPS3_ODD_PREFIX) - 1) + 1
    if len(w3_values) < need:
        raise InsufficientDepthError(f"need W_3 up to n = {need}")
    return [w3_values[2 * n] & 1 == e for n, e in enumerate(EPS3_ODD_PREFIX)]


def fibonacci(r: int) -> int:
    a, b = 0, 1
    for _ in range(r):
        a, b = b, a + b
    return a


def slope_estimates(values: Sequence[int]) -> list[tuple[int, float]]:
    """log g(m) / log m at m = 2, 4, 8, ... — finite-prefix estimates only."""
    out = []
    m = 2
    while m <= len(values):
        g = g_count(values, m)
        out.append((m, math.log(g) / math.log(m) if g else float("-inf")))
        m *= 2
    return out


# ---------------------------------------------------------------- growth

@dataclass(frozen=True)
class GrowthRecord:
    n: int
    ratio: Fraction | None  # W(n+1)/W(n), None at the end of the prefix
    root_lo: Fraction  # W(n)^(1/n) lies in [root_lo, root_hi]
    root_hi: Fraction


def nth_root_interval(w: int, n: int, digits: int = 6) -> tuple[Fraction, Fraction]:
    scale = 10 ** digits
    k, exact = gmpy2.iroot(gmpy2.mpz(w) * scale ** n, n)
    k = int(k)
    return Fraction(k, scale), Fraction(k if exact else k + 1, scale)


def root_at_least(w: int, n: int, c: Fraction) -> bool:
    """W^(1/n) >= c, decided as W * den^n >= num^n."""
    c = Fraction(c)
    return w * c.denominator ** n >= c.numerator ** n


def growth_report(values: Sequence[int], digits: int = 6) -> list[GrowthRecord]:
    out = []
    for n, w in enumerate(values, start=1):
        ratio = Fraction(values[n], w) if n < len(values) else None
        lo, hi = nth_root_interval(w, n, digits)
        out.append(GrowthRecord(n, ratio, lo, hi))
    return out


def check_supermultiplicative(values: Sequence[int]) -> bool:
    N = len(values)
    W = [1] + list(values)
    return all(W[m + n] >= W[m] * W[n] for m in range(1, N) for n in range(1, N - m + 1))


def check_doubling(values: Sequence[int]) -> bool:
    """W(2n)^n >= W(n)^(2n), i.e. the 2n-th root is at least the n-th root."""
    W = [1] + list(values)
    return all(W[2 * n] ** n >= W[n] ** (2 * n) for n in range(1, len(values) // 2 + 1))


def check_log_convex_prefix(values: Sequence[int]) -> int | None:
    """First n with W(n)^2 > W(n-1) W(n+1), or None."""
    W = [None] + list(values)
    for n in range(2, len(values)):
        if W[n] * W[n] > W[n - 1] * W[n + 1]:
            return n
    return None


@dataclass(frozen=True)
class BoundRow:
    n: int
    value: int
    binom_bound: int  # binom((t+1)n, n)
    power_bound: int  # (t+1)^(2n)

    @property
    def below_binom(self) -> bool:
        return self.value <= self.binom_bound

    @property
    def below_power(self) -> bool:
        return self.value <= self.power_bound


def check_conj3(values: Sequence[int], t: int) -> list[BoundRow]:
    return [BoundRow(n, w, math.comb((t + 1) * n, n), (t + 1) ** (2 * n))
            for n, w in enumerate(values, start=1)]


# ---------------------------------------------------------------- exports

def counts_csv(values: Sequence[int]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["n", "count"])
    for n, w in enumerate(values, start=1):
        wr.writerow([n, w])
    return buf.getvalue()


def triangle_csv(triangles: Iterable[tuple[int, dict[tuple[int, int], int]]]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["n", "k", "p", "count"])
    for n, tri in triangles:
        for (k, p), c in sorted(tri.items()):
            wr.writerow([n, k, p, c])
    return buf.getvalue()


def _frac(q: Fraction | None) -> str | None:
    return None if q is None else f"{q.numerator}/{q.denominator}"


def _unfrac(s: str | None) -> Fraction | None:
    return None if s is None else Fraction(s)


def growth_json(records: Sequence[GrowthRecord]) -> list[dict]:
    return [{"n": r.n, "ratio": _frac(r.ratio), "root_lo": _frac(r.root_lo), "root_hi": _frac(r.root_hi)}
            for r in records]


# ---------------------------------------------------------------- persistence

def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dumps_tables(w2: W2Table | W2PolyTable | None = None, w3: W3Table | W3PolyTable | None = None,
                 parity: Sequence[ParityRecord] | None = None,
                 growth: Sequence[GrowthRecord] | None = None) -> str:
    payload = {
        "w2": None if w2 is None else w2.to_json(),
        "w3": None if w3 is None else w3.to_json(),
        "parity": None if parity is None else [asdict(r) for r in parity],
        "growth": None if growth is None else growth_json(growth),
    }
    body = _canonical(payload)
    return _canonical({"format": BUNDLE_FORMAT, "sha256": hashlib.sha256(body.encode()).hexdigest(),
                       "payload": payload}) + "\n"


def loads_tables(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChecksumError(f"corrupt table file: {exc}") from None
    if not isinstance(obj, dict) or obj.get("format") != BUNDLE_FORMAT:
        raise FormatError(f"unsupported table bundle format {obj.get('format') if isinstance(obj, dict) else None!r}")
    payload = obj.get("payload")
    if hashlib.sha256(_canonical(payload).encode()).hexdigest() != obj.get("sha256"):
        raise ChecksumError("table bundle checksum mismatch")
    out: dict = {"w2": None, "w3": None, "parity": None, "growth": None}
    if payload["w2"] is not None:
        cls = W2PolyTable if payload["w2"]["kind"] == "poly" else W2Table
        out["w2"] = cls.from_json(payload["w2"])
    if payload["w3"] is not None:
        cls = W3PolyTable if payload["w3"]["kind"] == "poly" else W3Table
        out["w3"] = cls.from_json(payload["w3"])
    if payload["parity"] is not None:
        out["parity"] = [ParityRecord(**r) for r in payload["parity"]]
    if payload["growth"] is not None:
        out["growth"] = [GrowthRecord(r["n"], _unfrac(r["ratio"]), _unfrac(r["root_lo"]), _unfrac(r["root_hi"]))
                         for r in payload["growth"]]
    return out


def save_tables(path: str, **tables) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_tables(**tables))


def load_tables(path: str) -> dict:
    with open(path) as fh:
        return loads_tables(fh.read())
