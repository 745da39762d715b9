from .bipoly import BiPoly
from .numbers import catalan, l_num, l_poly, n_poly, narayana, v_num, v_poly, w2_closed_form
from .packing import Packer
from .ratpoly import (
    RationalPoly,
    count_real_roots,
    gamma_expansion,
    gamma_reconstruct,
    is_gamma_nonneg,
    is_log_concave,
    is_real_rooted,
    is_symmetric,
    is_unimodal,
    sturm_sequence,
)
from .series import TruncatedSeries, catalan_series

__all__ = [
    "BiPoly", "Packer", "RationalPoly", "TruncatedSeries",
    "catalan", "catalan_series", "count_real_roots", "f_series_check", "gamma_expansion",
    "gamma_reconstruct", "is_gamma_nonneg", "is_log_concave", "is_real_rooted",
    "is_symmetric", "is_unimodal", "l_num", "l_poly", "n_poly", "narayana",
    "sturm_sequence", "v_num", "v_poly", "w2_closed_form",
]


def f_series_check(order_w: int, order_x: int, order_y: int) -> bool:
    """Check F = x + wxy + w(F+1)(F-x) coefficientwise, F built from L(r, i, j).

    F has constant term x (the empty tree), then L_r(x, y) at w^r.
    """
    x = BiPoly.x()
    coeffs = [x] + [l_poly(r) for r in range(1, order_w + 1)]
    F = TruncatedSeries.univariate(coeffs, order_w, zero=BiPoly())
    w = TruncatedSeries.univariate([BiPoly(), BiPoly.const(1)], order_w, zero=BiPoly())
    rhs = x + w * (x * BiPoly.y()) + w * (F + 1) * (F - x)
    for r in range(order_w + 1):
        diff = F.coeff(r) - rhs.coeff(r)
        if any(i <= order_x and j <= order_y for (i, j), _ in diff):
            return False
    return True
