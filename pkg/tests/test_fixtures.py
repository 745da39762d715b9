"""Guard the transcribed Q and R against the displayed formulas."""

import pytest
import sympy as sp

from stacksort.w2 import load_fixtures

u, v, w, z, x, y = sp.symbols("u v w z x y")

Q_DISPLAY = (
    "-v*w + z + 2*v*w*z + v^2*w^2*z + (w - z - 2*w*z - 2*v*w^2*z + v^2*w^2*z)*u"
    " + (w^2*z - 2*v*w^2*z + z^2 + 2*v*w*z^2 + v^2*w^2*z^2)*u^2"
    " + (w^2*z - 2*w*z^2 - 2*v*w^2*z^2)*u^3 + w^2*z^2*u^4"
)

R_DISPLAY = (
    "-x + (4*x + 8*x^2 - x*y)*w + (-6*x - 16*x^2 - 16*x^3 + 3*x*y + 36*x^2*y)*w^2"
    " + (4*x + 8*x^2 - 3*x*y - 36*x^2*y + 27*x^2*y^2)*w^3 + (-x + x*y)*w^4"
    " + (1 + (-4 - 12*x)*w + (6 + 20*x + 32*x^2 - 33*x*y)*w^2"
    " + (-4 - 4*x + 16*x^2 + 30*x*y - 36*x^2*y)*w^3 + (1 - 4*x + 3*x*y)*w^4)*v"
    " + (4*w + (-4 - 22*x)*w^2 + (-4 - 20*x + 8*x^2 + 33*x*y)*w^3 + (4 - 6*x + 3*x*y)*w^4)*v^2"
    " + (6*w^2 + (4 - 12*x)*w^3 + (6 - 4*x + x*y)*w^4)*v^3"
    " + (4*w^3 + (4 - x)*w^4)*v^4 + w^4*v^5"
)


def fixture_poly(name, gens):
    return sum(c * sp.prod([g ** e for g, e in zip(gens, exps)]) for exps, c in load_fixtures()[name]["terms"])


@pytest.mark.parametrize("name,text,gens", [("Q", Q_DISPLAY, (u, v, w, z)), ("R", R_DISPLAY, (v, w, x, y))])
def test_fixture_equals_display(name, text, gens):
    shown = sp.expand(sp.sympify(text.replace("^", "**")))
    assert sp.expand(fixture_poly(name, gens) - shown) == 0


@pytest.mark.parametrize("name,exps,coeff", [
    ("Q", (0, 1, 1, 0), -1),   # -v w
    ("Q", (4, 0, 2, 2), 1),    # w^2 z^2 u^4
    ("Q", (3, 1, 2, 2), -2),   # -2 v w^2 z^2 u^3
    ("R", (0, 3, 2, 2), 27),   # 27 x^2 y^2 w^3
    ("R", (1, 2, 1, 1), -33),  # -33 x y w^2 v
    ("R", (5, 4, 0, 0), 1),    # w^4 v^5
])
def test_hand_read_coefficients(name, exps, coeff):
    terms = {tuple(e): c for e, c in load_fixtures()[name]["terms"]}
    assert terms[exps] == coeff
