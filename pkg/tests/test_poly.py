import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import stacksort.poly as poly
from stacksort.poly import (
    BiPoly,
    Packer,
    RationalPoly,
    TruncatedSeries,
    catalan,
    catalan_series,
    count_real_roots,
    f_series_check,
    gamma_expansion,
    gamma_reconstruct,
    is_gamma_nonneg,
    is_log_concave,
    is_real_rooted,
    is_symmetric,
    is_unimodal,
    l_num,
    l_poly,
    n_poly,
    narayana,
    v_num,
    v_poly,
)

X, Y = BiPoly.x(), BiPoly.y()
COUNTEREXAMPLE = [0, 0, 3, 31, 112, 169, 112, 31, 3]

small_ints = st.integers(-20, 20)
bipolys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 3)), small_ints, max_size=6).map(BiPoly)


class TestNumbers:
    def test_examples(self):
        assert catalan(5) == 42
        assert narayana(3, 2) == 3
        assert n_poly(4) == X + 6 * X**2 + 6 * X**3 + X**4

    @pytest.mark.parametrize("r", range(1, 13))
    def test_refinements_sum_to_catalan(self, r):
        assert sum(narayana(r, i) for i in range(r + 2)) == catalan(r)
        assert sum(v_num(r, j) for j in range(r + 2)) == catalan(r)
        assert sum(l_num(r, i, j) for i in range(r + 2) for j in range(r + 2)) == catalan(r)

    @pytest.mark.parametrize("r", range(0, 13))
    def test_specialization_chain(self, r):
        L = l_poly(r)
        assert L.total() == (catalan(r) if r else 0)
        assert L.at_y1() == n_poly(r)
        assert L.at_x1() == v_poly(r)

    def test_out_of_range_and_negative(self):
        assert narayana(3, 5) == 0
        assert l_num(3, 0, 1) == 0
        with pytest.raises(ValueError):
            catalan(-1)
        with pytest.raises(ValueError):
            narayana(-2, 1)

    def test_r0_is_zero(self):
        assert not l_poly(0) and not n_poly(0) and not v_poly(0)


class TestFSeries:
    def test_examples(self):
        assert f_series_check(6, 6, 4)
        assert f_series_check(1, 1, 1)
        assert l_poly(1) == X * Y  # the w^1 x^1 y^1 coefficient is 1

    def test_detects_a_wrong_coefficient(self, monkeypatch):
        real = poly.l_poly
        monkeypatch.setattr(poly, "l_poly", lambda r: real(r) + (X if r == 3 else 0))
        assert not f_series_check(4, 4, 4)


class TestBiPoly:
    @given(bipolys, bipolys, bipolys)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == BiPoly()

    @given(bipolys, st.integers(-3, 3), st.integers(-3, 3))
    def test_evaluate_is_a_homomorphism(self, a, x, y):
        b = a * a + 3
        assert b.evaluate(x, y) == a.evaluate(x, y) ** 2 + 3

    @given(bipolys)
    def test_json_round_trip(self, a):
        assert BiPoly.from_json(a.to_json()) == a

    def test_scalars(self):
        assert X * 0 == BiPoly() and (X + 1).total() == 2
        assert BiPoly.const(Fraction(1, 2)) * 2 == 1


class TestPacking:
    # products stay inside the box: x-degree <= 9, y-degree <= 6, coefficients < 2^39
    @given(st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 4)), st.integers(0, 10**5), max_size=8),
           st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), st.integers(0, 10**5), max_size=8))
    def test_pack_is_a_semiring_map(self, a, b):
        pk = Packer.for_length(14)
        a, b = BiPoly(a), BiPoly(b)
        assert pk.unpack(pk.pack(a)) == a
        assert pk.unpack(pk.pack(a) + pk.pack(b)) == a + b
        assert pk.unpack(pk.pack(a) * pk.pack(b)) == a * b

    def test_y1_mode_folds_y(self):
        pk = Packer.for_length(5, track_peaks=False)
        assert pk.unpack(pk.pack(X * Y**2 + X)) == 2 * X

    def test_box_violations(self):
        pk = Packer.for_length(3)
        with pytest.raises(ValueError):
            pk.pack(X**4)
        with pytest.raises(ValueError):
            pk.pack(BiPoly.const(-1))
        with pytest.raises(ValueError):
            pk.unpack(-5)


class TestShape:
    def test_examples(self):
        binom = [1, 3, 3, 1]
        assert (is_symmetric(binom), is_unimodal(binom), is_log_concave(binom)) == (True, True, True)
        assert is_symmetric([1, 0, 1]) and not is_log_concave([1, 0, 1])
        assert not is_unimodal([1, 0, 1])

    def test_real_rooted_examples(self):
        assert is_real_rooted([1, 3, 3, 1])
        assert not is_real_rooted([1, 1, 1])
        assert not is_real_rooted(COUNTEREXAMPLE)
        with pytest.raises(ValueError):
            is_real_rooted([])

    def test_gamma_examples(self):
        assert gamma_expansion([1, 2, 1], 2) == [1, 0]
        assert gamma_expansion([0, 1], 2) == [0, 1]
        g = gamma_expansion(COUNTEREXAMPLE, 10)
        assert g == [0, 0, 3, 13, 15, 1] and is_gamma_nonneg(g)
        with pytest.raises(ValueError):
            gamma_expansion([1, 2], 2)

    @given(st.lists(st.integers(0, 50), min_size=1, max_size=5), st.integers(0, 3))
    def test_gamma_round_trip(self, gamma, pad):
        n = 2 * (len(gamma) - 1) + pad
        p = gamma_reconstruct(gamma, n)
        assert gamma_expansion(p, n) == gamma + [0] * (n // 2 + 1 - len(gamma))
        assert is_symmetric(p, n)

    @given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
    def test_products_of_real_linear_factors(self, roots):
        p = RationalPoly([1])
        for r in roots:
            p = p * RationalPoly([r, 1])
        assert is_real_rooted(p) and count_real_roots(p) == len(set(roots))
        # real-rooted with nonnegative coefficients => log-concave => unimodal
        assert is_log_concave(p) and is_unimodal(p)

    def test_sturm_agrees_with_float_roots(self):
        rng = random.Random(7)
        checked = 0
        while checked < 200:
            deg = rng.randint(1, 8)
            c = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
            roots = np.roots(c[::-1])
            # keep only cases whose float verdict is unambiguous
            if np.any((np.abs(roots.imag) > 1e-6) & (np.abs(roots.imag) < 1e-2)):
                continue
            if len(roots) > 1 and np.min(np.abs(np.subtract.outer(roots, roots))[~np.eye(len(roots), dtype=bool)]) < 1e-3:
                continue
            assert is_real_rooted(c) == bool(np.all(np.abs(roots.imag) < 1e-6)), c
            checked += 1


class TestSeries:
    def test_catalan_from_sqrt(self):
        assert catalan_series(15).coeffs_w() == [catalan(n) for n in range(16)]

    def test_catalan_functional_equation(self):
        C = catalan_series(15)
        z = TruncatedSeries.univariate([0, 1], 15)
        assert (z * C * C + 1 - C).is_zero()

    def test_unit(self):
        S = TruncatedSeries.univariate([3, 1, 4, 1, 5], 4)
        assert S * 1 == S

    def test_sqrt_needs_unit_constant(self):
        with pytest.raises(ValueError):
            TruncatedSeries.univariate([2, 1], 3).sqrt()

    @given(st.lists(small_ints, min_size=1, max_size=6))
    def test_sqrt_squares_back(self, tail):
        S = TruncatedSeries.univariate([1] + tail, 6, zero=Fraction(0))
        R = S.sqrt()
        assert R * R == S

    def test_negative_shift_needs_zero_remainder(self):
        with pytest.raises(ArithmeticError):
            TruncatedSeries.univariate([1, 1], 3).shift(-1)
