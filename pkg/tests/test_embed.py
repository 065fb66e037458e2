from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from translates.embed import (
    Partition,
    build_partition,
    cond_expect,
    coords_pnorm_p,
    distortion_report,
    dual_system_l2,
    embed_coords,
    lower_lq_constant,
    tail_certificate,
)
from translates.stepfn import StepFunction, inner_l2, lin_comb, lp_norm_p, translate
from translates.systems import dilworth_f, telescope_base

chi = StepFunction.indicator


@st.composite
def functions_on_window(draw):
    # step functions with quarter-integer breakpoints inside [-2, 2]
    pts = sorted(set(draw(st.lists(st.integers(-8, 8), min_size=2, max_size=6))))
    if len(pts) < 2:
        pts = [-8, 8]
    vals = draw(st.lists(st.integers(-3, 3), min_size=len(pts) - 1, max_size=len(pts) - 1))
    return StepFunction([F(x, 4) for x in pts], vals)


# -- partitions and conditional expectations -----------------------------------

def test_partition_basics():
    P = Partition.from_breakpoints([0, F(1, 2), 2, 1])
    assert P.breakpoints == [0, F(1, 2), 1, 2]
    assert P.measures == [F(1, 2), F(1, 2), 1]
    assert P.window.lo == 0 and P.window.hi == 2
    assert P.refines(Partition.from_breakpoints([0, 1, 2]))
    assert not Partition.from_breakpoints([0, 1, 2]).refines(P)
    with pytest.raises(ValueError):
        Partition([(0, 1), (2, 3)])


def test_cond_expect_example():
    f = StepFunction([0, F(1, 2), 1, 2], [1, 3, 5])
    E = cond_expect(f, Partition.from_breakpoints([0, 1, 2]))
    assert E == StepFunction([0, 1, 2], [2, 5])
    with pytest.raises(ValueError):
        cond_expect(chi(0, 3), Partition.from_breakpoints([0, 1, 2]))


@given(functions_on_window(), st.sampled_from([1, 2, 3]))
@settings(max_examples=60)
def test_embedding_is_isometric_on_averages(f, p):
    part = Partition.from_breakpoints([F(k, 2) for k in range(-4, 5)])
    coords = embed_coords(f, part, p)
    lhs = coords_pnorm_p(coords, p)
    rhs = lp_norm_p(cond_expect(f, part), p)
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-12, abs=1e-12)
    # averaging contracts every L_p norm
    assert float(rhs) <= float(lp_norm_p(f, p)) * (1 + 1e-12)


def test_p1_coordinates_are_exact_integrals():
    f = StepFunction([0, F(1, 2), 1], [F(1, 3), 1])
    coords = embed_coords(f, Partition.from_breakpoints([0, 1]), 1)
    assert coords == [F(2, 3)]


# -- duals ---------------------------------------------------------------------------

def test_duals_are_biorthogonal():
    fns = [translate(dilworth_f(), k) for k in range(4)]
    duals = dual_system_l2(fns, 2)
    for i, f in enumerate(fns):
        for j, g in enumerate(duals.duals):
            assert inner_l2(f, g) == (1 if i == j else 0)
    f = lin_comb([2, F(-1, 3), 0, 5], fns)
    assert duals.coefficients(f) == [2, F(-1, 3), 0, 5]


def test_dual_norms():
    fns = [chi(k, k + 1) for k in range(3)]
    d1 = dual_system_l2(fns, 1)
    assert d1.K == 1 and lower_lq_constant(d1) == 1
    d2 = dual_system_l2(fns, 2)
    assert d2.K == pytest.approx(1) and lower_lq_constant(d2) == pytest.approx(3 ** 0.5)


def test_dependent_system_rejected():
    with pytest.raises(ValueError, match="depend"):
        dual_system_l2([chi(0, 1), chi(1, 2), chi(0, 2)])


# -- partition construction ------------------------------------------------------------

@pytest.mark.parametrize("p", [1, 2])
def test_build_partition_certificates(p):
    fns = [translate(dilworth_f(), k) for k in range(6)]
    res = build_partition(dual_system_l2(fns, p), F(1, 10))
    assert res.n[0] == 1 and res.n[-1] == len(fns)
    assert list(res.m) == sorted(set(res.m))
    assert all(c.ok for c in res.certificates) and res.verify()
    w = res.partition.window
    for f in fns:
        assert w.lo <= f.breakpoints[0] and f.breakpoints[-1] <= w.hi
    for k, c in enumerate(res.certificates, start=1):
        assert c.tolerance == res.epsilon / 2 ** k


def test_p1_certificates_are_exact():
    fns = [translate(telescope_base(), k) for k in range(5)]
    res = build_partition(dual_system_l2(fns, 1), 0.1)
    assert res.epsilon == F(1, 10)
    assert all(isinstance(c.c21, F) and isinstance(c.c23, F) for c in res.certificates)


def test_half_integer_breakpoints_force_bisection():
    fns = [translate(StepFunction([0, F(1, 2), 1], [1, 3]), k) for k in range(3)]
    res = build_partition(dual_system_l2(fns, 1), F(1, 10))
    assert F(1, 2) in res.partition.breakpoints and res.verify()


def test_distortion_of_exactly_representable_span():
    # every member is constant on the cells, so T is an isometry on the span
    fns = [translate(dilworth_f(), k) for k in range(8)]
    res = build_partition(dual_system_l2(fns, 1), F(1, 10))
    rep = distortion_report(fns, res.partition, 1, res.epsilon, trials=20, seed=3,
                            restriction_c=2)
    assert rep.min_ratio == 1 and rep.max_ratio == 1
    assert rep.lower_target == pytest.approx(1 - 0.8)
    assert all(0 <= r <= 1 for _, r in rep.restriction_ratios)
    again = distortion_report(fns, res.partition, 1, res.epsilon, trials=20, seed=3,
                              restriction_c=2)
    assert again.to_json() == rep.to_json()


def test_coarse_cells_erase_oscillating_members():
    fns = [translate(StepFunction([0, F(1, 2), 1], [1, -1]), k) for k in range(4)]
    part = Partition.from_breakpoints(range(0, 5))
    rep = distortion_report(fns, part, 2, 0.1, trials=10, seed=0)
    assert rep.max_ratio == 0


def test_tail_certificate_bound_holds():
    fns = [translate(dilworth_f(), k) for k in range(6)]
    duals = dual_system_l2(fns, 2)
    f = lin_comb([1, -1, 2, F(1, 2), 3, -2], fns)
    for n in range(1, 7):
        res, bound = tail_certificate(duals, f, n, (-1, 3))
        assert res <= bound * (1 + 1e-12)


def test_two_by_two_duals():
    fns = [chi(0, 2), chi(1, 3)]
    duals = dual_system_l2(fns, 2)
    assert duals.duals[0] == lin_comb([F(2, 3), F(-1, 3)], fns)
    assert duals.duals[1] == lin_comb([F(-1, 3), F(2, 3)], fns)
    assert dual_system_l2([chi(0, 1), chi(1, 2)], 2).duals == (chi(0, 1), chi(1, 2))


@given(functions_on_window())
def test_cond_expect_idempotent(f):
    part = Partition.from_breakpoints([-2, F(-1, 3), 0, F(5, 4), 2])
    once = cond_expect(f, part)
    assert cond_expect(once, part) == once


@given(functions_on_window(), st.sampled_from([1, 2, 3]))
@settings(max_examples=50)
def test_refinement_never_decreases_ratio(f, p):
    coarse = Partition.from_breakpoints([-2, 0, 2])
    fine = Partition.from_breakpoints([-2, -1, 0, 1, 2])
    finer = Partition.from_breakpoints([F(k, 4) for k in range(-8, 9)])
    values = [coords_pnorm_p(embed_coords(f, P, p), p) for P in (coarse, fine, finer)]
    assert float(values[0]) <= float(values[1]) * (1 + 1e-12) + 1e-12
    assert float(values[1]) <= float(values[2]) * (1 + 1e-12) + 1e-12
    assert float(values[2]) == pytest.approx(float(lp_norm_p(f, p)), rel=1e-12, abs=1e-12)


def test_cancellation_under_coarse_cell():
    f = StepFunction([0, F(1, 2), 1], [1, -1])
    assert embed_coords(f, Partition.from_breakpoints([0, 1]), 1) == [0]
    assert cond_expect(chi(0, F(1, 2)), Partition.from_breakpoints([0, 1])) == \
        StepFunction([0, 1], [F(1, 2)])
