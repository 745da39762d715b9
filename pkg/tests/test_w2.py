import json

import pytest

from stacksort import oracle, w2
from stacksort.poly import BiPoly, TruncatedSeries, catalan, l_poly, w2_closed_form
from stacksort.w2 import (
    InsufficientDepthError,
    W2PolyTable,
    W2Table,
    build_w2_poly_table,
    build_w2_table,
    check_eq6,
    check_eq37,
    check_theorem7,
)


@pytest.fixture(scope="module")
def table():
    return build_w2_table(30)


@pytest.fixture(scope="module")
def ptable():
    return build_w2_poly_table(20)


class TestCounts:
    def test_closed_form(self, table):
        assert table.w2(0) == 1
        assert all(table.w2(n) == w2_closed_form(n) for n in range(1, 31))

    def test_base_row(self, table):
        assert all(table.at_least(ell, 0) == catalan(ell) for ell in range(31))

    @pytest.mark.parametrize("d", range(0, 10))
    def test_cells_match_brute_force(self, table, d):
        for ell in range(d + 1):
            assert table.at_least(ell, d - ell) == oracle.brute_b2(ell, d - ell)

    def test_exact_classes(self, table):
        for ell in range(6):
            for n in range(6 - ell):
                members = oracle.d_class(ell, None, n, at_least=False).members
                assert table.exact(ell, n) == oracle.fertility_polynomial(members).total()
        for d in range(31):
            for ell in range(d + 1):
                assert table.exact(ell, d - ell) >= 0

    def test_supermultiplicative(self, table):
        assert all(table.w2(m + n) >= table.w2(m) * table.w2(n)
                   for m in range(1, 30) for n in range(1, 31 - m))

    def test_depth_guard(self, table):
        with pytest.raises(InsufficientDepthError):
            table.at_least(10, 21)
        with pytest.raises(IndexError):
            table.at_least(-1, 2)

    def test_extend_matches_fresh_build(self):
        t = W2Table(5)
        t.extend(12)
        assert t.to_json() == W2Table(12).to_json()

    def test_json_round_trip(self):
        t = W2Table(8)
        obj = json.loads(json.dumps(t.to_json()))
        assert W2Table.from_json(obj).to_json() == t.to_json()
        obj["cells"].pop()
        with pytest.raises(ValueError):
            W2Table.from_json(obj)
        with pytest.raises(ValueError):
            W2PolyTable.from_json(t.to_json())


class TestPolynomials:
    def test_base_row(self, ptable):
        assert ptable.at_least(0, 0) == BiPoly.x()
        assert all(ptable.at_least(ell, 0) == l_poly(ell) for ell in range(1, 21))

    def test_specializes_to_counts(self, ptable, table):
        spec = ptable.specialize()
        assert all(spec.at_least(l, n) == table.at_least(l, n) for n in range(21) for l in range(21 - n))

    @pytest.mark.parametrize("n", range(1, 10))
    def test_triangle_matches_brute_force(self, ptable, n):
        assert ptable.triangle(n) == oracle.brute_w_t_triangle(n, 2)

    @pytest.mark.parametrize("d", range(0, 9))
    def test_cells_match_brute_force(self, ptable, d):
        for ell in range(d + 1):
            assert ptable.at_least(ell, d - ell) == oracle.brute_b2(ell, d - ell, refined=True)

    def test_descent_symmetry(self, ptable):
        for n in range(1, 21):
            by_k = [0] * n
            for (k, _), c in ptable.triangle(n).items():
                by_k[k] += c
            assert by_k == by_k[::-1]

    def test_y1_mode(self, ptable):
        flat = build_w2_poly_table(12, track_peaks=False)
        for n in range(13):
            assert flat.w2_poly(n) == ptable.w2_poly(n).at_y1()

    def test_extend_repacks(self):
        t = W2PolyTable(4)
        t.extend(10)
        assert t.to_json() == W2PolyTable(10).to_json()

    def test_json_round_trip(self):
        t = W2PolyTable(7)
        assert W2PolyTable.from_json(json.loads(json.dumps(t.to_json()))).to_json() == t.to_json()


class TestResiduals:
    def test_kernel_identity_vanishes(self):
        r = check_eq6(10, 10)
        assert r.passed and r.vanishing[0, 0] and len(r.vanishing) == 121

    def test_algebraic_identity_vanishes(self):
        assert check_eq37(8, 8).passed
        assert check_eq37(10, 10).passed

    def test_refined_identity_vanishes(self):
        r = check_theorem7(8)
        assert r.passed and len(r.vanishing) == 9

    def test_report_json(self):
        obj = check_eq6(2, 3).to_json()
        assert obj["passed"] and obj["order_w"] == 2 and len(obj["orders"]) == 12

    def test_perturbed_table_fails(self):
        t = W2Table(22)
        t._vals[3, 4] += 1
        assert not check_eq6(10, 10, table=t).passed
        assert not check_eq37(10, 10, table=t).passed

    def test_perturbed_poly_table_fails(self):
        t = W2PolyTable(8)
        t._vals[0, 5] += t.packer.pack(BiPoly.monomial(3, 2))
        r = check_theorem7(8, table=t)
        assert not r.passed and r.failures[0][0] == 5

    def test_depth_errors(self):
        with pytest.raises(InsufficientDepthError):
            check_eq6(10, 10, table=W2Table(5))
        with pytest.raises(InsufficientDepthError):
            check_theorem7(8, table=W2PolyTable(4))

    def test_r_constant_term(self):
        # with w = 0 the series is just x, and R(x, 0, x, y) must vanish
        x, y = BiPoly.x(), BiPoly.y()
        terms = [(e, c) for e, c in w2._terms("R") if e[1] == 0]
        assert w2._evaluate(terms, [x, None, x, y], BiPoly.const(1)) == BiPoly()

    def test_r_at_one_kills_the_count_series(self):
        N = 12
        V = TruncatedSeries.univariate([w2_closed_form(n) for n in range(N + 1)], N)
        w = TruncatedSeries.univariate([0, 1], N)
        one = TruncatedSeries.constant(1, N)
        assert w2._evaluate(w2._terms("R"), [V, w, one, one], one).is_zero()


class TestFixtureIntegrity:
    def test_checksum_detects_tampering(self):
        raw = json.dumps(w2.load_fixtures() | {"sha256": "0" * 64})
        with pytest.raises(w2.FixtureError):
            w2.parse_fixture(raw)

    def test_loads(self):
        fx = w2.load_fixtures()
        assert fx["Q"]["variables"] == ["u", "v", "w", "z"]
        assert fx["R"]["variables"] == ["v", "w", "x", "y"]
