"""Compiled scans over the full symmetric group.

Every scan splits S_n into n blocks by first entry and runs the blocks with
prange; block results are merged by exact integer addition. Permutations are
int64 arrays holding 1..n. These kernels re-implement the stack-sorting map
independently of perm_core; the test suite checks that both agree.
"""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the bundled TBB is too old and only produces a warning
    numba.config.THREADING_LAYER = "workqueue"


@njit(cache=True)
def _stack_sort(src, n, out, stack):
    top = 0
    k = 0
    for i in range(n):
        v = src[i]
        while top > 0 and stack[top - 1] < v:
            top -= 1
            out[k] = stack[top]
            k += 1
        stack[top] = v
        top += 1
    while top > 0:
        top -= 1
        out[k] = stack[top]
        k += 1


@njit(cache=True)
def _next_perm(a, lo, n):
    i = n - 2
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    l, r = i + 1, n - 1
    while l < r:
        a[l], a[r] = a[r], a[l]
        l += 1
        r -= 1
    return True


@njit(cache=True)
def _first_block(a, n, f):
    a[0] = f
    k = 1
    for v in range(1, n + 1):
        if v != f:
            a[k] = v
            k += 1


@njit(cache=True)
def _is_identity(a, n):
    for i in range(n):
        if a[i] != i + 1:
            return False
    return True


@njit(cache=True)
def _des(a, n):
    d = 0
    for i in range(n - 1):
        if a[i] > a[i + 1]:
            d += 1
    return d


@njit(cache=True)
def _peak(a, n):
    p = 0
    for i in range(1, n - 1):
        if a[i - 1] < a[i] and a[i] > a[i + 1]:
            p += 1
    return p


@njit(cache=True)
def _tail(a, n):
    ell = 0
    while ell < n and a[n - 1 - ell] == n - ell:
        ell += 1
    return ell


@njit(cache=True)
def _leg(a, n):
    count = 0
    for thr in range(n + 1):
        low = n + 1
        paired = False
        ok = True
        for i in range(n):
            v = a[i]
            if v <= thr:
                if paired:
                    ok = False
                    break
            elif v < low:
                low = v
            elif v > low:
                paired = True
        if ok:
            count += 1
    return count


@njit(cache=True)
def _rank(a, n):
    r = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if a[j] < a[i]:
                smaller += 1
        r = r * (n - i) + smaller
    return r


@njit(cache=True)
def _sortable_after(img, n, passes, x, y, stack):
    """Whether `passes` further stack sorts of img reach the identity."""
    for i in range(n):
        x[i] = img[i]
    for _ in range(passes):
        _stack_sort(x, n, y, stack)
        for i in range(n):
            x[i] = y[i]
    return _is_identity(x, n)


@njit(parallel=True, cache=True)
def class_histogram(n, t):
    """hist[tl(s(σ)), leg(s(σ)), des(σ), peak(σ)] over σ in S_n with s^t(σ) = id."""
    pk = max(n // 2, 0) + 1
    hist = np.zeros((n, n + 1, n + 2, max(n, 1), pk), np.int64)
    for f in prange(n):
        a = np.empty(n, np.int64)
        img = np.empty(n, np.int64)
        x = np.empty(n, np.int64)
        y = np.empty(n, np.int64)
        stack = np.empty(n, np.int64)
        _first_block(a, n, f + 1)
        while True:
            _stack_sort(a, n, img, stack)
            if _sortable_after(img, n, t - 1, x, y, stack):
                hist[f, _tail(img, n), _leg(img, n), _des(a, n), _peak(a, n)] += 1
            if not _next_perm(a, 1, n):
                break
    return hist.sum(axis=0)


@njit(parallel=True, cache=True)
def target_histogram(n, target_ranks):
    """hist[m, des(σ), peak(σ)] over σ with rank(s(σ)) == target_ranks[m] (sorted)."""
    k = target_ranks.shape[0]
    pk = max(n // 2, 0) + 1
    hist = np.zeros((n, k, max(n, 1), pk), np.int64)
    for f in prange(n):
        a = np.empty(n, np.int64)
        img = np.empty(n, np.int64)
        stack = np.empty(n, np.int64)
        _first_block(a, n, f + 1)
        while True:
            _stack_sort(a, n, img, stack)
            if img[n - 1] == n:
                r = _rank(img, n)
                m = np.searchsorted(target_ranks, r)
                if m < k and target_ranks[m] == r:
                    hist[f, m, _des(a, n), _peak(a, n)] += 1
            if not _next_perm(a, 1, n):
                break
    return hist.sum(axis=0)


@njit(cache=True)
def image_table(n):
    """For every σ in S_n in lexicographic order: rank(s(σ)), des(σ), peak(σ)."""
    total = 1
    for i in range(2, n + 1):
        total *= i
    ranks = np.empty(total, np.int64)
    ds = np.empty(total, np.int64)
    ps = np.empty(total, np.int64)
    a = np.empty(n, np.int64)
    img = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    for i in range(n):
        a[i] = i + 1
    idx = 0
    while True:
        _stack_sort(a, n, img, stack)
        ranks[idx] = _rank(img, n)
        ds[idx] = _des(a, n)
        ps[idx] = _peak(a, n)
        idx += 1
        if not _next_perm(a, 0, n):
            break
    return ranks, ds, ps


@njit(cache=True)
def collect_preimages(n, target):
    """All σ in S_n with s(σ) == target, in lexicographic order."""
    a = np.empty(n, np.int64)
    img = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    count = 0
    for sweep in range(2):
        if sweep == 1:
            out = np.empty((count, n), np.int64)
            count = 0
        else:
            out = np.empty((0, n), np.int64)
        for i in range(n):
            a[i] = i + 1
        while True:
            _stack_sort(a, n, img, stack)
            same = True
            for i in range(n):
                if img[i] != target[i]:
                    same = False
                    break
            if same:
                if sweep == 1:
                    out[count, :] = a
                count += 1
            if not _next_perm(a, 0, n):
                break
    return out


@njit(cache=True)
def _contains(a, n, pat, m, idx):
    # idx is scratch of length m holding the current position combination
    if m > n:
        return False
    for i in range(m):
        idx[i] = i
    while True:
        match = True
        for u in range(m):
            for v in range(u + 1, m):
                if (a[idx[u]] < a[idx[v]]) != (pat[u] < pat[v]):
                    match = False
                    break
            if not match:
                break
        if match:
            return True
        i = m - 1
        while i >= 0 and idx[i] == n - m + i:
            i -= 1
        if i < 0:
            return False
        idx[i] += 1
        for j in range(i + 1, m):
            idx[j] = idx[j - 1] + 1


@njit(parallel=True, cache=True)
def avoider_scan(n, patterns, t):
    """(number of σ in S_n avoiding every pattern row, how many of those are not t-sortable)."""
    k, m = patterns.shape
    res = np.zeros((n, 2), np.int64)
    for f in prange(n):
        a = np.empty(n, np.int64)
        img = np.empty(n, np.int64)
        x = np.empty(n, np.int64)
        y = np.empty(n, np.int64)
        stack = np.empty(n, np.int64)
        idx = np.empty(m, np.int64)
        _first_block(a, n, f + 1)
        while True:
            avoid = True
            for r in range(k):
                if _contains(a, n, patterns[r], m, idx):
                    avoid = False
                    break
            if avoid:
                res[f, 0] += 1
                if t > 0 and not _sortable_after(a, n, t, x, y, stack):
                    res[f, 1] += 1
            if not _next_perm(a, 1, n):
                break
    return res[:, 0].sum(), res[:, 1].sum()


def set_threads(k: int) -> None:
    numba.set_num_threads(max(1, min(k, numba.config.NUMBA_NUM_THREADS)))
