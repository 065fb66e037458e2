import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from translates.dyadic import DyadicTensor, haar, rademacher_moment_exact
from translates.seqmodel import (
    BlockScheme,
    Gauss,
    PiForm,
    SeqElement,
    TorusFunction,
    block_equivalence,
    from_step_function,
    half_period_witness,
    lacunary_build,
    pairing,
    seq_lin_comb,
    seq_pnorm,
    shift,
    shift_sequence,
    shift_span_distance_sq_l2,
    telescoping_build,
    telescoping_coefficients,
    telescoping_coord0_norm_p,
    to_step_function,
    torus_inner,
    transform,
    translate_sum_equivalence,
)
from translates.stepfn import StepFunction, inner_l2, lp_norm_p
from translates.systems import dilworth_f

chi = StepFunction.indicator


# -- sequence elements ---------------------------------------------------------

def test_window_decomposition_is_isometric():
    f = dilworth_f()
    X = from_step_function(f, 3)
    assert X.support == [-2, -1, 0, 1]
    assert to_step_function(X) == f
    assert seq_pnorm(X).value == lp_norm_p(f, 3)
    assert pairing(X, X) == inner_l2(f, f)


def test_shift_is_integer_translation():
    f = dilworth_f()
    X = from_step_function(f, 2)
    assert to_step_function(shift(X, 3)) == f.translate(3)
    assert shift(shift(X, 2), -5) == shift(X, -3)
    assert seq_pnorm(shift(X, 7)).value == seq_pnorm(X).value


def test_seq_element_validation():
    with pytest.raises(ValueError):
        SeqElement({0: chi(0, 2)}, 2)
    with pytest.raises(TypeError):
        SeqElement({0: chi(0, 1), 1: DyadicTensor.rademacher_poly({1: 1})}, 2)
    assert SeqElement({0: StepFunction.zero()}, 2).is_zero


def test_lin_comb_and_json():
    X = SeqElement({0: chi(0, 1)}, 2)
    Y = SeqElement({0: chi(0, F(1, 2)), 1: chi(0, 1)}, 2)
    Z = seq_lin_comb([1, -1], [X, Y])
    assert Z.coords == {0: chi(F(1, 2), 1), 1: -chi(0, 1)}
    assert '"p": "2"' in Z.to_json()


# -- lacunary block construction ------------------------------------------------------

def test_fourth_power_scheme():
    s = BlockScheme.fourth_powers()
    assert s.sizes == (1, 16, 81) and s.total == 98
    assert s.eps_power_sum(5) == F(11, 6)
    assert [s.eps_power_sum(4, n) for n in (1, 2, 3)] == [1, 1, 1]
    assert s.block_of(1) == 1 and s.block_of(17) == 2 and s.block_of(18) == 3
    with pytest.raises(ValueError):
        BlockScheme((2,), (1, 1))


def test_lacunary_coordinates_do_not_collide():
    # 3^i - 3^j is injective on pairs i != j, so distinct translates only
    # meet at coordinate 0
    model = lacunary_build(5, BlockScheme.fourth_powers())
    seen = {}
    for j, T in enumerate(model.translates, start=1):
        for n in T.support:
            if n != 0:
                assert n not in seen
                seen[n] = j
        assert 0 in T.support


def small_model():
    return lacunary_build(5, BlockScheme((1, 1, 1), (1, 1, 1)))


def brute_combination_norm(model, a, p):
    # oracle: coordinate 0 on a dense grid plus the disjoint remainder
    J = model.scheme.total
    T = DyadicTensor({})
    for j in range(1, J + 1):
        T = T + DyadicTensor.elementary(haar(model.scheme.block_of(j), p=p, normalized=True),
                                        j, a[j - 1] * model.scheme.eps(j))
    grid = T.to_grid(4)
    coord0 = sum(abs(float(v)) ** p for row in grid for v in row) / 256
    rest = sum(abs(float(a[j - 1])) ** p * sum(float(model.scheme.eps(i)) ** p
                                               for i in range(1, J + 1) if i != j)
               for j in range(1, J + 1))
    return coord0 + rest


@pytest.mark.parametrize("a", [[1, 0, 0], [1, -2, F(1, 2)], [3, 1, 1]])
def test_translate_combination_norm_matches_brute_force(a):
    model = small_model()
    lhs, rhs, ratio = translate_sum_equivalence(model, a)
    assert lhs.value == pytest.approx(brute_combination_norm(model, a, 5), rel=1e-12)
    assert ratio == pytest.approx(float(lhs.value) / rhs)


def test_single_translate_norm():
    model = lacunary_build(5, BlockScheme.fourth_powers())
    v = seq_pnorm(model.translates[40]).value
    assert float(v) == pytest.approx(11 / 6, rel=1e-12)


def test_block_equivalence_small():
    model = small_model()
    lhs, rhs, ratio = block_equivalence(model, [1, 1, 1])
    assert lhs.value == pytest.approx(brute_combination_norm(model, [1, 1, 1], 5), rel=1e-12)
    with pytest.raises(ValueError):
        block_equivalence(model, [1, 1])
    with pytest.raises(ValueError):
        lacunary_build(4, BlockScheme((1,), (1,)))


# -- telescoping Rademacher example ----------------------------------------------------------

def test_telescoping_weights():
    model = telescoping_build(5, 4)
    assert model.depth == 5
    assert model.a[0] == 1 and model.a[1] == 1 and len(model.a) == 7
    assert len(model.base.support) == 5 and len(model.translates) == 4
    big = telescoping_build(5, 20)
    assert big.a[16] == F(1, 2) and big.a[2] == pytest.approx(2 ** -0.25)


def test_telescoping_coefficients():
    a = [F(1), F(1), F(1, 2), F(1, 3), F(1, 4)]
    assert telescoping_coefficients(a, [1, 1, 1]) == {1: 1, 2: F(1, 2), 3: F(1, 6), 4: F(-1, 4)}
    v = telescoping_coord0_norm_p(a, [1, 1, 1], 5)
    assert v.exact and v.value == rademacher_moment_exact([1, F(1, 2), F(1, 6), F(-1, 4)], 5)


def test_telescoping_sum_of_translates_at_origin():
    model = telescoping_build(5, 6)
    S = seq_lin_comb([1] * 6, list(model.translates))
    tele = telescoping_coefficients(model.a, [1] * 6)
    expected = DyadicTensor.rademacher_poly(tele)
    got = S.coords[0]
    assert set(got.terms) == set(expected.terms)
    for j in got.terms:
        assert float(got.terms[j].values[0]) == pytest.approx(float(expected.terms[j].values[0]))


# -- torus Fourier analysis -----------------------------------------------------------------

def test_gauss_arithmetic():
    z = Gauss(1, 2) * Gauss(3, -1)
    assert z == Gauss(5, 5)
    assert (z / Gauss(3, -1)) == Gauss(1, 2)
    assert Gauss(0, 1).conj() == Gauss(0, -1) and Gauss(3, 4).abs2() == 25
    with pytest.raises(TypeError):
        Gauss.of(1j)


def _sample(u, t):
    out = np.zeros(t.shape, dtype=complex)
    for n, c in u.trig.items():
        out += complex(c) * np.exp(1j * n * t)
    for lo, hi, v in u.step.pieces():
        out += float(v) * ((t >= float(lo) * math.pi) & (t < float(hi) * math.pi))
    return out


def quad_inner(u, v, n=2_000_000):
    # independent oracle: vectorised midpoint rule on [-pi, pi]
    t = -math.pi + (np.arange(n) + 0.5) * (2 * math.pi / n)
    return complex(np.sum(_sample(u, t) * np.conj(_sample(v, t))) * (2 * math.pi / n))


def test_trig_orthogonality_exact():
    for m in range(-3, 4):
        for n in range(-3, 4):
            ip = torus_inner(TorusFunction({m: 1}), TorusFunction({n: 1}))
            assert ip.exact
            assert ip == (PiForm(Gauss(), Gauss(2)) if m == n else PiForm(Gauss(), Gauss()))


def test_witness_orthogonal_to_even_frequencies():
    w = half_period_witness()
    for k in range(-6, 7):
        assert torus_inner(TorusFunction({2 * k: 1}), w).is_zero
    ip = torus_inner(TorusFunction({1: 1}), w)
    assert ip.exact and ip.a == Gauss(0, -4) and ip.b == Gauss()
    assert abs(ip.value - quad_inner(TorusFunction({1: 1}), w)) < 1e-5


def test_step_inner_matches_quadrature_with_irrational_exponentials():
    u = TorusFunction({1: Gauss(1, 1), -2: 3})
    v = TorusFunction({}, StepFunction([F(-1, 3), F(1, 5)], [2]))
    ip = torus_inner(u, v)
    assert not ip.exact
    assert abs(ip.value - quad_inner(u, v)) < 1e-5


@given(st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=5),
       st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=5),
       st.integers(-5, 5))
def test_parseval_and_modulation(x, y, k):
    ip = torus_inner(transform(x), transform(y))
    assert ip.exact and not ip.a
    assert ip.b == Gauss(2 * sum(v * y.get(n, 0) for n, v in x.items()))
    shifted = transform(shift_sequence(x, k))
    assert shifted == transform(x).modulate(k)
    t = 0.731
    assert abs(shifted(t) - cmath.exp(1j * k * t) * transform(x)(t)) < 1e-9


# -- distances to shift spans ---------------------------------------------------------------

def numpy_span_distance(x, target, shifts):
    idx = sorted({n + k for n in x for k in shifts} | set(target))
    M = np.array([[float(x.get(n - k, 0)) for k in shifts] for n in idx])
    t = np.array([float(target.get(n, 0)) for n in idx])
    c, *_ = np.linalg.lstsq(M, t, rcond=None)
    r = t - M @ c
    return float(r @ r)


def test_shift_span_examples():
    assert shift_span_distance_sq_l2({0: 1, 1: -1}, {0: 1}, []) == 1
    assert shift_span_distance_sq_l2({0: 1, 1: -1}, {0: 1}, [0]) == F(1, 2)
    assert shift_span_distance_sq_l2({0: 1}, {3: 5}, [3]) == 0
    # the target is the limit of shifts of differences: distance 1/(n+1)
    for n in (1, 4, 9):
        assert shift_span_distance_sq_l2({0: 1, 1: -1}, {0: 1}, range(n)) == F(1, n + 1)


@given(st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), min_size=1, max_size=4),
       st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-4, 4), max_size=5, unique=True))
@settings(max_examples=60)
def test_shift_span_distance_matches_numpy(x, target, shifts):
    x = {n: v for n, v in x.items() if v}
    target = {n: v for n, v in target.items() if v}
    exact = shift_span_distance_sq_l2(x, target, shifts)
    if not x or not shifts:
        assert exact == sum(v * v for v in target.values())
        return
    assert float(exact) == pytest.approx(numpy_span_distance(x, target, shifts), abs=1e-9)
