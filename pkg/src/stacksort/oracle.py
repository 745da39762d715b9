"""Brute-force ground truth over full symmetric groups.

Everything here is computed by scanning all of S_n, so it is slow past
n = 11 but trivially correct. The recurrence modules are checked against it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .perm_core import (
    Permutation,
    descents,
    hooks_from,
    is_t_stack_sortable,
    legal_spaces,
    normalize,
    peaks,
    split,
    stack_sort,
    tail_bound_descents,
    tail_length,
)
from .poly import BiPoly, RationalPoly

DEFAULT_CAP = 11
# up to this length the full image table of S_n is cached
_TABLE_LIMIT = 8


class OracleCapError(ValueError):
    pass


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OracleCapError(f"length {n} exceeds the enumeration cap {cap}")


def perm_rank(p: Sequence[int]) -> int:
    """Lexicographic rank of a normalized permutation."""
    n = len(p)
    r = 0
    for i in range(n):
        r = r * (n - i) + sum(1 for j in range(i + 1, n) if p[j] < p[i])
    return r


@dataclass(frozen=True)
class PreimageSet:
    target: Permutation
    members: tuple[Permutation, ...]

    @property
    def fertility(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DClass:
    ell: int
    g: int | None
    n: int
    at_least: bool
    members: tuple[Permutation, ...] = field(repr=False)


def preimages(target: Sequence[int], cap: int = DEFAULT_CAP) -> PreimageSet:
    target = Permutation(target)
    n = len(target)
    _check_cap(n, cap)
    if not target.is_normalized():
        # fertility only depends on the relative order
        norm = normalize(target)
        values = sorted(target)
        base = preimages(norm, cap)
        return PreimageSet(target, tuple(Permutation(values[v - 1] for v in m) for m in base.members))
    if n == 0:
        return PreimageSet(target, (Permutation(),))
    rows = K.collect_preimages(n, np.array(target, dtype=np.int64))
    return PreimageSet(target, tuple(Permutation(r) for r in rows.tolist()))


@lru_cache(maxsize=None)
def _image_table(n: int) -> dict[int, Counter]:
    ranks, ds, ps = K.image_table(n)
    table: dict[int, Counter] = {}
    for r, d, p in zip(ranks.tolist(), ds.tolist(), ps.tolist()):
        table.setdefault(r, Counter())[d, p] += 1
    return table


def _stat_poly(hist: Counter, track_peaks: bool) -> BiPoly:
    terms: dict[tuple[int, int], int] = {}
    for (d, p), c in hist.items():
        key = (d + 1, p + 1 if track_peaks else 0)
        terms[key] = terms.get(key, 0) + c
    return BiPoly(terms)


def _target_stats(targets: Sequence[Permutation], cap: int) -> Counter:
    """Histogram {(des, peak): count} over the union of the preimage sets."""
    lengths = {len(t) for t in targets}
    if len(lengths) > 1:
        raise ValueError("all targets must have the same length")
    if not targets:
        return Counter()
    n = lengths.pop()
    _check_cap(n, cap)
    norm = sorted({perm_rank(normalize(t)) for t in targets})
    if len(norm) != len(set(targets)):
        raise ValueError("targets must be pairwise distinct as patterns")
    if n == 0:
        return Counter({(0, -1): 1})
    out: Counter = Counter()
    if n <= _TABLE_LIMIT:
        table = _image_table(n)
        for r in norm:
            out.update(table.get(r, Counter()))
        return out
    hist = K.target_histogram(n, np.array(norm, dtype=np.int64)).sum(axis=0)
    for d, p in zip(*np.nonzero(hist)):
        out[int(d), int(p)] = int(hist[d, p])
    return out


def fertility_polynomial(targets: Iterable[Sequence[int]], track_peaks: bool = True,
                         cap: int = DEFAULT_CAP) -> BiPoly:
    """Sum of x^(des+1) y^(peak+1) over all preimages of the targets."""
    targets = [Permutation(t) for t in targets]
    return _stat_poly(_target_stats(targets, cap), track_peaks)


def fertility(p: Sequence[int], cap: int = DEFAULT_CAP) -> int:
    return fertility_polynomial([p], cap=cap).total()


@lru_cache(maxsize=None)
def class_fertility(n: int, t: int) -> dict[tuple[int, int], BiPoly]:
    """{(tl(s(σ)), leg(s(σ))): sum of x^(des σ+1) y^(peak σ+1)} over t-sortable σ in S_n."""
    if n == 0:
        return {(0, 1): BiPoly.x()}
    hist = K.class_histogram(n, t)
    out: dict[tuple[int, int], dict] = {}
    for tl, lg, d, p in zip(*np.nonzero(hist)):
        terms = out.setdefault((int(tl), int(lg)), {})
        terms[int(d) + 1, int(p) + 1] = int(hist[tl, lg, d, p])
    return {k: BiPoly(v) for k, v in out.items()}


def brute_w_t(n: int, t: int, cap: int = DEFAULT_CAP) -> int:
    _check_cap(n, cap)
    return sum(p.total() for p in class_fertility(n, t).values())


def brute_w_t_triangle(n: int, t: int, cap: int = DEFAULT_CAP) -> dict[tuple[int, int], int]:
    """{(k, p): W_t(n, k, p)}."""
    _check_cap(n, cap)
    total = BiPoly()
    for poly in class_fertility(n, t).values():
        total = total + poly
    return {(i - 1, j - 1): c for (i, j), c in total.terms.items()}


def brute_b2(ell: int, n: int, refined: bool = False, cap: int = DEFAULT_CAP):
    """|s^-1(D_{>=ell}(n))|, or its (x, y) polynomial."""
    _check_cap(n + ell, cap)
    acc = BiPoly()
    for (tl, _), poly in class_fertility(n + ell, 2).items():
        if tl >= ell:
            acc = acc + poly
    return acc if refined else acc.total()


def brute_b3(ell: int, g: int, n: int, refined: bool = False, cap: int = DEFAULT_CAP):
    """|s^-1(D^(g)_{>=ell}(n))|, or its (x, y) polynomial."""
    _check_cap(n + ell, cap)
    acc = BiPoly()
    for (tl, lg), poly in class_fertility(n + ell, 3).items():
        if tl >= ell and lg == ell + g:
            acc = acc + poly
    return acc if refined else acc.total()


@lru_cache(maxsize=None)
def _sortable_list(n: int, t: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in permutations(range(1, n + 1)) if is_t_stack_sortable(p, t))


def d_class(ell: int, g: int | None, n: int, at_least: bool = True, cap: int = DEFAULT_CAP) -> DClass:
    """D_ell(n) / D_{>=ell}(n) inside Av(231) when g is None, else inside W_2 with leg = ell + g."""
    _check_cap(n + ell, cap)
    pool = _sortable_list(n + ell, 1 if g is None else 2)
    members = []
    for p in pool:
        tl = tail_length(p)
        if (tl >= ell) if at_least else (tl == ell):
            if g is None or legal_spaces(p)[0] == ell + g:
                members.append(p)
    return DClass(ell, g, n, at_least, tuple(members))


def verify_decomposition(p: Sequence[int], d: int, refined: bool = True, cap: int = DEFAULT_CAP) -> bool:
    """Compare both sides of the (refined) decomposition lemma at the tail-bound descent d."""
    p = Permutation(p)
    if d not in tail_bound_descents(p):
        raise ValueError(f"{d} is not a tail-bound descent of {p}")
    lhs = fertility_polynomial([p], cap=cap)
    rhs = BiPoly()
    for h in hooks_from(p, d):
        u, s = split(p, h)
        rhs = rhs + fertility_polynomial([normalize(u)], cap=cap) * fertility_polynomial([normalize(s)], cap=cap)
    if not refined:
        return lhs.total() == rhs.total()
    return lhs == rhs


def gamma_identity_sides(targets: Iterable[Sequence[int]], cap: int = DEFAULT_CAP) -> tuple[RationalPoly, RationalPoly]:
    """(sum of x^des over s^-1(A), its expansion from peak counts)."""
    targets = [Permutation(t) for t in targets]
    stats = _target_stats(targets, cap)
    if not targets:
        return RationalPoly(), RationalPoly()
    n = len(targets[0])
    lhs = [0] * max(n, 1)
    by_peak: Counter = Counter()
    for (d, pk), c in stats.items():
        lhs[d] += c
        by_peak[pk] += c
    rhs = RationalPoly()
    for m, c in by_peak.items():
        e = n - 1 - 2 * m
        if e < 0:
            raise ArithmeticError(f"peak count {m} too large for length {n}")
        basis = RationalPoly([0] * m + [comb(e, k) for k in range(e + 1)])
        rhs = rhs + basis * Fraction(c, 2**e)
    return RationalPoly(lhs), rhs


def verify_gamma_identity(targets: Iterable[Sequence[int]], cap: int = DEFAULT_CAP) -> bool:
    lhs, rhs = gamma_identity_sides(targets, cap)
    return lhs == rhs


def random_subsets(n: int, count: int, seed: int) -> list[list[Permutation]]:
    """Seeded random subsets of S_n, each element kept with probability 1/2."""
    rng = random.Random(seed)
    pool = [Permutation(p) for p in permutations(range(1, n + 1))]
    return [[p for p in pool if rng.random() < 0.5] for _ in range(count)]


def gamma_t_patterns(t: int) -> list[Permutation]:
    """Γ_t: permutations of S_{t+2} ending in (t+2), 1."""
    return [Permutation(tuple(head) + (t + 2, 1)) for head in permutations(range(2, t + 2))]


def brute_avoiders(n: int, patterns: Sequence[Sequence[int]], t: int = 0) -> tuple[int, int]:
    """(|Av_n(patterns)|, number of those avoiders that are not t-stack-sortable)."""
    if n == 0:
        return 1, 0
    pats = np.array([list(p) for p in patterns], dtype=np.int64)
    a, bad = K.avoider_scan(n, pats, t)
    return int(a), int(bad)


def triangle_json(n: int, t: int, cap: int = DEFAULT_CAP) -> dict:
    tri = brute_w_t_triangle(n, t, cap)
    return {"n": n, "t": t, "triangle": [[k, p, str(c)] for (k, p), c in sorted(tri.items())]}


# pure-Python reference scans, kept for cross-checking the compiled kernels

def reference_class_fertility(n: int, t: int) -> dict[tuple[int, int], BiPoly]:
    out: dict[tuple[int, int], BiPoly] = {}
    for sigma in permutations(range(1, n + 1)):
        if not is_t_stack_sortable(sigma, t):
            continue
        img = stack_sort(sigma)
        key = (tail_length(img), legal_spaces(img)[0])
        mono = BiPoly.monomial(descents(sigma)[0] + 1, peaks(sigma)[0] + 1)
        out[key] = out.get(key, BiPoly()) + mono
    return out


def reference_fertility_polynomial(target: Sequence[int]) -> BiPoly:
    target = tuple(normalize(target))
    acc = BiPoly()
    for sigma in permutations(range(1, len(target) + 1)):
        if tuple(stack_sort(sigma)) == target:
            acc = acc + BiPoly.monomial(descents(sigma)[0] + 1, peaks(sigma)[0] + 1)
    return acc
