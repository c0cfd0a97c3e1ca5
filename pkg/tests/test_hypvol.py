import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fixtures import W, pretzel
from ravol import V_OCT, V_TET, ast_lower_bound, lobachevsky, volp
from ravol.errors import InvalidDiagram, NonFiniteInput
from ravol.tangles import add_kink, switch_crossing


def quad_lobachevsky(theta: float) -> float:
    with mpmath.workdps(30):
        t = mpmath.mpf(theta)
        return float(-mpmath.quad(lambda s: mpmath.log(abs(2 * mpmath.sin(s))), [0, t]))


GRID = [math.pi * k / 40 for k in range(41)]


def test_series_matches_quadrature_on_grid():
    worst = max(abs(lobachevsky(t) - quad_lobachevsky(t)) for t in GRID[1:-1])
    assert worst < 1e-12
    assert lobachevsky(0.0) == 0.0
    assert abs(lobachevsky(math.pi)) < 1e-15


def test_known_values():
    assert abs(lobachevsky(math.pi / 2)) < 1e-16
    assert abs(V_OCT - 3.66386237670887) < 1e-13
    assert abs(V_TET - 1.01494160640965) < 1e-13
    # the maximum sits at pi/6
    assert abs(lobachevsky(math.pi / 6) - 0.5074708032048) < 1e-12


@given(st.floats(-20, 20, allow_nan=False))
def test_odd_and_periodic(t):
    assert abs(lobachevsky(-t) + lobachevsky(t)) < 1e-13
    assert abs(lobachevsky(t + math.pi) - lobachevsky(t)) < 1e-12


@given(st.floats(1e-6, math.pi / 2 - 1e-6))
def test_duplication_formula(t):
    lhs = lobachevsky(2 * t)
    rhs = 2 * (lobachevsky(t) + lobachevsky(t + math.pi / 2))
    assert abs(lhs - rhs) < 1e-12


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_non_finite_input(bad):
    with pytest.raises(NonFiniteInput):
        lobachevsky(bad)


def test_volp_report_fields():
    rep = volp(W(3, 3))
    assert abs(rep.volp - 2 * V_OCT) < 1e-12
    assert rep.twist_number == 6 and len(rep.polyhedra) == 1
    js = rep.to_json()
    assert set(js) == {"volp", "polyhedra", "twist_number", "ast_bound", "trace", "constants", "diagnostics"}
    assert js["diagnostics"][0]["residual"] < 1e-12


def test_volp_zero_cases_are_float():
    for d in (W(2, 5), W(3, 2), pretzel(3)):
        rep = volp(d)
        assert rep.volp == 0.0 and isinstance(rep.volp, float) and rep.polyhedra == []


def test_volp_rejects_invalid_diagrams():
    for d in (switch_crossing(W(3, 4), 0), add_kink(W(3, 3), 1)):
        with pytest.raises(InvalidDiagram):
            volp(d)


def test_ast_bound():
    assert abs(ast_lower_bound(W(3, 4)) - V_OCT / 2 * 6) < 1e-12
    assert ast_lower_bound(W(2, 9)) < 0
