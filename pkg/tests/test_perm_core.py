from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from stacksort.perm_core import (
    Hook,
    InvalidHookError,
    NotNormalizedError,
    Permutation,
    avoids,
    contains_pattern,
    des,
    descents,
    direct_sum,
    hooks_from,
    is_t_stack_sortable,
    is_w2_by_patterns,
    legal_spaces,
    normalize,
    peak,
    peaks,
    split,
    stack_sort,
    tail_bound_descents,
    tail_length,
    unsplit,
)

P = Permutation.parse


def perms_of(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


any_perm = st.integers(0, 8).flatmap(perms_of)


def all_perms(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


class TestPermutation:
    def test_rejects_repeats_and_nonpositive(self):
        with pytest.raises(ValueError):
            Permutation([1, 1])
        with pytest.raises(ValueError):
            Permutation([0, 1])

    def test_string_forms(self):
        assert str(P("4162")) == "4162"
        assert str(Permutation([10, 2, 1])) == "10,2,1"
        assert P("10,2,1") == Permutation([10, 2, 1])
        assert Permutation("6,7,8,4,5,9,10,1,2,3,11")[6] == 10

    def test_empty(self):
        e = Permutation()
        assert len(e) == 0 and e.is_normalized()
        assert des(e) == 0 and peak(e) == -1


class TestNormalize:
    def test_examples(self):
        assert normalize(P("4162")) == P("3142")
        assert normalize(P("123")) == P("123")
        assert normalize(Permutation()) == Permutation()

    @given(st.lists(st.integers(1, 100), unique=True, max_size=10))
    def test_idempotent(self, xs):
        q = normalize(xs)
        assert q.is_normalized() and normalize(q) == q


class TestStackSort:
    def test_examples(self):
        assert stack_sort(P("4162")) == P("1426")
        assert stack_sort(P("231")) == P("213")
        assert stack_sort(Permutation.identity(6)) == Permutation.identity(6)

    def test_sortability(self):
        assert not is_t_stack_sortable(P("231"), 1)
        assert all(is_t_stack_sortable(p, 3) for p in all_perms(4))
        assert is_t_stack_sortable(P("35241"), 2)
        with pytest.raises(ValueError):
            is_t_stack_sortable(P("1"), 0)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_image_ends_with_max_and_n_minus_1_passes_sort(self, n):
        for p in all_perms(n):
            assert stack_sort(p)[-1] == n
            assert is_t_stack_sortable(p, max(n - 1, 1))

    @given(any_perm)
    def test_is_a_permutation_of_the_input(self, p):
        assert sorted(stack_sort(p)) == sorted(p)


class TestStatistics:
    def test_examples(self):
        assert descents(P("4162")) == (2, frozenset({1, 3}))
        assert peaks(P("3142567")) == (1, frozenset({3}))
        assert des(Permutation.identity(5)) == 0

    def test_tail_length(self):
        assert tail_length(P("3142567")) == 3
        assert tail_length(Permutation.identity(6)) == 6
        assert tail_length(P("21")) == 0
        with pytest.raises(NotNormalizedError):
            tail_length(P("24"))

    def test_legal_spaces(self):
        assert legal_spaces(P("145326"))[0] == 5
        assert legal_spaces(Permutation.identity(5))[0] == 6
        assert legal_spaces(P("2341")) == (3, frozenset({0, 3, 4}))
        with pytest.raises(NotNormalizedError):
            legal_spaces(P("35"))

    @pytest.mark.parametrize("n", range(0, 8))
    def test_legal_spaces_full_iff_231_avoider(self, n):
        for p in all_perms(n):
            assert (legal_spaces(p)[0] == n + 1) == (not contains_pattern(p, (2, 3, 1)))

    @given(any_perm)
    def test_legal_spaces_by_definition(self, p):
        n = len(p)
        idx = range(n)
        illegal = {a for a in range(n + 1)
                   for i1 in idx for i2 in idx for i3 in idx
                   if i1 < i2 < i3 and p[i3] <= a < p[i1] < p[i2]}
        assert legal_spaces(p)[1] == frozenset(range(n + 1)) - illegal


class TestPatterns:
    def test_examples(self):
        assert contains_pattern(P("4162"), P("231"))
        assert not contains_pattern(P("123"), P("21"))
        assert contains_pattern(P("35241"), P("3241"))
        assert avoids(P("123"), [P("21"), P("132")])

    def test_w2_characterization_examples(self):
        assert not is_w2_by_patterns(P("2341"))
        assert is_w2_by_patterns(P("35241"))
        assert not is_w2_by_patterns(P("3241"))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_w2_characterization_matches_sorting(self, n):
        for p in all_perms(n):
            assert is_w2_by_patterns(p) == is_t_stack_sortable(p, 2)


class TestHooks:
    def test_tail_bound(self):
        p = P("3142567")
        assert tail_bound_descents(p) == {3}
        assert [h.ne_index for h in hooks_from(p, 3)] == [5, 6, 7]
        assert tail_bound_descents(Permutation.identity(5)) == frozenset()

    def test_split_example(self):
        p = P("3142567")
        assert split(p, Hook(3, 6)) == (P("3147"), P("25"))
        assert split(p, Hook(5, 6))[1] == Permutation()
        assert split(p, Hook(3, 7))[0] == P("314")

    def test_invalid_hook(self):
        with pytest.raises(InvalidHookError):
            split(P("3142567"), Hook(1, 2))
        with pytest.raises(InvalidHookError):
            split(P("12"), Hook(2, 1))

    @given(any_perm, st.data())
    def test_split_round_trip(self, p, data):
        hooks = [h for i in range(1, len(p) + 1) for h in hooks_from(p, i)]
        if not hooks:
            return
        h = data.draw(st.sampled_from(hooks))
        u, s = split(p, h)
        assert unsplit(h, p[h.ne_index - 1], u, s) == p


class TestDirectSum:
    def test_examples(self):
        assert direct_sum(P("1"), P("1")) == P("12")
        assert direct_sum(P("21"), P("1")) == P("213")
        assert direct_sum(Permutation(), P("312")) == P("312")

    @given(st.integers(0, 6).flatmap(perms_of), st.integers(0, 6).flatmap(perms_of), st.integers(1, 3))
    def test_preserves_sortability(self, p, q, t):
        if is_t_stack_sortable(p, t) and is_t_stack_sortable(q, t):
            assert is_t_stack_sortable(direct_sum(p, q), t)
