import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from translates.growth import fit_growth

NS = [8 * 2 ** k for k in range(10)]


def test_pure_power():
    fit = fit_growth([(n, n ** 2) for n in NS])
    assert abs(fit.beta - 2) < 1e-9 and abs(fit.alpha) < 1e-9
    assert fit.c == pytest.approx(1, rel=1e-9) and fit.residual < 1e-9


def test_pure_log_power():
    fit = fit_growth([(n, math.log(n) ** 0.5) for n in NS])
    assert abs(fit.alpha - 0.5) < 1e-6 and abs(fit.beta) < 1e-6


@given(st.floats(0.1, 10), st.floats(-2, 3), st.floats(-2, 2))
def test_recovers_exact_models(c, beta, alpha):
    pts = [(n, c * n ** beta * math.log(n) ** alpha) for n in NS]
    fit = fit_growth(pts)
    assert fit.beta == pytest.approx(beta, abs=1e-6)
    assert fit.alpha == pytest.approx(alpha, abs=1e-6)
    assert fit.predict(100) == pytest.approx(c * 100 ** beta * math.log(100) ** alpha, rel=1e-6)


def test_fixed_exponents():
    pts = [(n, 3 * n * math.log(n) ** 1.5) for n in NS]
    fit = fit_growth(pts, beta=1.0)
    assert fit.alpha == pytest.approx(1.5, abs=1e-9) and fit.fixed == ("beta",)
    fit = fit_growth(pts, beta=1.0, alpha=1.5)
    assert fit.c == pytest.approx(3, rel=1e-9)


def test_reproducible_from_stored_points():
    pts = [(n, n ** 1.1 * (1 + 0.01 * (n % 7))) for n in NS]
    fit = fit_growth(pts)
    again = fit_growth(fit.as_dict()["points"])
    assert again == fit


@pytest.mark.parametrize("pts", [
    [(8, 1), (16, 2), (32, 3)],
    [(2, 1), (16, 2), (32, 3), (64, 4)],
    [(8, 1), (16, 0), (32, 3), (64, 4)],
    [(8, 1), (8, 2), (8, 3), (8, 4)],
])
def test_invalid_inputs(pts):
    with pytest.raises(ValueError):
        fit_growth(pts)
