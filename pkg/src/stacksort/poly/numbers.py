"""Catalan-family numbers and the tree-counting polynomials N_r, V_r, L_r."""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .bipoly import BiPoly


def _nonneg(*args: int) -> None:
    if any(a < 0 for a in args):
        raise ValueError(f"arguments must be nonnegative: {args}")


def _binom(n: int, k: int) -> int:
    # math.comb rejects negative n; the formulas below want 0 there
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    _nonneg(n)
    return comb(2 * n, n) // (n + 1)


def narayana(r: int, i: int) -> int:
    """N(r, i): binary plane trees with r vertices and i-1 right edges."""
    _nonneg(r, i)
    if r == 0:
        return 0
    num = _binom(r, i) * _binom(r, i - 1)
    q, rem = divmod(num, r)
    assert rem == 0
    return q


def v_num(r: int, j: int) -> int:
    """V(r, j): binary plane trees with r vertices and j leaves."""
    _nonneg(r, j)
    if r == 0 or j == 0:
        return 0
    b = _binom(r - 1, 2 * j - 2)
    if b == 0:
        return 0
    return 2 ** (r - 2 * j + 1) * b * catalan(j - 1)


@lru_cache(maxsize=None)
def l_num(r: int, i: int, j: int) -> int:
    """L(r, i, j): binary plane trees with r vertices, i-1 right edges, j leaves."""
    _nonneg(r, i, j)
    if r == 0:
        return 0
    num = _binom(r - 1, r - j) * _binom(r + 1 - j, j) * _binom(r + 1 - 2 * j, i - j)
    if num == 0:
        return 0
    q, rem = divmod(num, r + 1 - j)
    assert rem == 0
    return q


def n_poly(r: int) -> BiPoly:
    return BiPoly({(i, 0): narayana(r, i) for i in range(1, r + 1)})


def v_poly(r: int) -> BiPoly:
    return BiPoly({(0, j): v_num(r, j) for j in range(1, r + 1)})


@lru_cache(maxsize=None)
def l_poly(r: int) -> BiPoly:
    """L_r(x, y); the zero polynomial at r = 0 (tree counts start at r = 1)."""
    _nonneg(r)
    return BiPoly({(i, j): l_num(r, i, j) for i in range(1, r + 1) for j in range(1, r + 1)})


def w2_closed_form(n: int) -> int:
    """2/((n+1)(2n+1)) * binom(3n, n) for n >= 1; W_2(0) = 1 (the formula would give 2)."""
    _nonneg(n)
    if n == 0:
        return 1
    q, rem = divmod(2 * comb(3 * n, n), (n + 1) * (2 * n + 1))
    assert rem == 0
    return q
