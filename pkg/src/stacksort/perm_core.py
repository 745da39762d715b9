"""Permutations, their statistics, and the hook/tail decomposition apparatus.

Indices in the public functions are 1-based, as in one-line notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class NotNormalizedError(ValueError):
    pass


class InvalidHookError(ValueError):
    pass


def _tokens(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    if "," in text:
        return [int(tok) for tok in text.split(",")]
    if " " in text:
        return [int(tok) for tok in text.split()]
    return [int(ch) for ch in text]


class Permutation(tuple):
    """An immutable sequence of distinct positive integers.

    >>> Permutation.parse("4162")
    Permutation('4162')
    >>> str(Permutation([10, 2, 1]))
    '10,2,1'
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] | str = ()):
        if isinstance(entries, str):
            entries = _tokens(entries)
        p = super().__new__(cls, (int(v) for v in entries))
        if any(v < 1 for v in p):
            raise ValueError(f"entries must be positive integers: {tuple(p)}")
        if len(set(p)) != len(p):
            raise ValueError(f"entries must be distinct: {tuple(p)}")
        return p

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accept either a comma-free digit string or comma-separated integers."""
        return cls(_tokens(text))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def is_normalized(self) -> bool:
        return sorted(self) == list(range(1, len(self) + 1))

    def __str__(self) -> str:
        if all(v <= 9 for v in self):
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation('{self}')"


def _require_normalized(p: Sequence[int]) -> None:
    if sorted(p) != list(range(1, len(p) + 1)):
        raise NotNormalizedError(f"{tuple(p)} is not normalized")


def normalize(p: Sequence[int]) -> Permutation:
    """Replace the i-th smallest entry with i."""
    rank = {v: r for r, v in enumerate(sorted(p), start=1)}
    return Permutation(rank[v] for v in p)


def stack_sort(p: Sequence[int]) -> Permutation:
    """Apply West's stack-sorting map once."""
    out: list[int] = []
    stack: list[int] = []
    for v in p:
        while stack and stack[-1] < v:
            out.append(stack.pop())
        stack.append(v)
    out.extend(reversed(stack))
    return Permutation(out)


def is_t_stack_sortable(p: Sequence[int], t: int) -> bool:
    if t < 1:
        raise ValueError("t must be positive")
    q: Sequence[int] = p
    for _ in range(t):
        q = stack_sort(q)
    return all(q[i] < q[i + 1] for i in range(len(q) - 1))


def descents(p: Sequence[int]) -> tuple[int, frozenset[int]]:
    idx = frozenset(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])
    return len(idx), idx


def peaks(p: Sequence[int]) -> tuple[int, frozenset[int]]:
    """Peak count and 1-based peak indices; the empty permutation has -1 peaks."""
    if len(p) == 0:
        return -1, frozenset()
    idx = frozenset(i + 1 for i in range(1, len(p) - 1) if p[i - 1] < p[i] > p[i + 1])
    return len(idx), idx


def des(p: Sequence[int]) -> int:
    return descents(p)[0]


def peak(p: Sequence[int]) -> int:
    return peaks(p)[0]


def tail_length(p: Sequence[int]) -> int:
    _require_normalized(p)
    n = len(p)
    ell = 0
    while ell < n and p[n - 1 - ell] == n - ell:
        ell += 1
    return ell


def legal_spaces(p: Sequence[int]) -> tuple[int, frozenset[int]]:
    """Return leg(p) and the set of a in {0..n} for which (a, a+1) is legal.

    (a, a+1) is illegal when some i1 < i2 < i3 has p[i3] <= a < p[i1] < p[i2].
    One left-to-right scan per a: remember the smallest entry above a seen
    so far; a larger entry after it completes the (i1, i2) pair, and any
    entry <= a after that pair is the witness i3.
    """
    _require_normalized(p)
    n = len(p)
    legal = set()
    for a in range(n + 1):
        low_above = None
        paired = False
        ok = True
        for v in p:
            if v <= a:
                if paired:
                    ok = False
                    break
            elif low_above is None or v < low_above:
                low_above = v
            elif v > low_above:
                paired = True
        if ok:
            legal.add(a)
    return len(legal), frozenset(legal)


def contains_pattern(p: Sequence[int], pat: Sequence[int]) -> bool:
    _require_normalized(pat)
    k = len(pat)
    if k == 0:
        return True
    target = tuple(pat)
    for sub in combinations(p, k):
        if tuple(normalize(sub)) == target:
            return True
    return False


def avoids(p: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains_pattern(p, pat) for pat in patterns)


def is_w2_by_patterns(p: Sequence[int]) -> bool:
    """West's characterization: avoid 2341, and every 3241 extends to a 35241."""
    _require_normalized(p)
    if contains_pattern(p, (2, 3, 4, 1)):
        return False
    n = len(p)
    for i1, i2, i3, i4 in combinations(range(n), 4):
        # occurrence of 3241 at (i1, i2, i3, i4): p[i4] < p[i2] < p[i1] < p[i3]
        if p[i4] < p[i2] < p[i1] < p[i3]:
            # a "5" must sit between the "3" and the "2" and exceed the "4"
            if not any(p[m] > p[i3] for m in range(i1 + 1, i2)):
                return False
    return True


@dataclass(frozen=True)
class Hook:
    sw_index: int
    ne_index: int


def _check_index(p: Sequence[int], i: int) -> None:
    if not 1 <= i <= len(p):
        raise IndexError(f"index {i} out of range for length {len(p)}")


def hooks_from(p: Sequence[int], i: int) -> list[Hook]:
    """The hooks of p with southwest endpoint at position i."""
    _require_normalized(p)
    _check_index(p, i)
    return [Hook(i, j) for j in range(i + 1, len(p) + 1) if p[j - 1] > p[i - 1]]


def tail_bound_descents(p: Sequence[int]) -> frozenset[int]:
    n = len(p)
    tail_start = n - tail_length(p) + 1
    _, ds = descents(p)
    return frozenset(d for d in ds if all(h.ne_index >= tail_start for h in hooks_from(p, d)))


def split(p: Sequence[int], h: Hook) -> tuple[Permutation, Permutation]:
    """Return the (unsheltered, sheltered) subpermutations cut out by a hook."""
    i, j = h.sw_index, h.ne_index
    if not (1 <= i < j <= len(p)) or p[i - 1] >= p[j - 1]:
        raise InvalidHookError(f"{h} is not a hook of {tuple(p)}")
    return Permutation(tuple(p[:i]) + tuple(p[j:])), Permutation(p[i:j - 1])


def unsplit(h: Hook, ne_value: int, unsheltered: Sequence[int], sheltered: Sequence[int]) -> Permutation:
    """Inverse of split, given the hook and the value at its northeast endpoint."""
    i = h.sw_index
    return Permutation(tuple(unsheltered[:i]) + tuple(sheltered) + (ne_value,) + tuple(unsheltered[i:]))


def direct_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    _require_normalized(a)
    _require_normalized(b)
    shift = len(a)
    return Permutation(tuple(a) + tuple(v + shift for v in b))
