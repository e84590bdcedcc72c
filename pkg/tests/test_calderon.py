"""Tests for multiplicative convolutions, Hardy/Young checks, and
Calderon-type bilinear operators on the half line."""

from __future__ import annotations

import math

import numpy as np
import pytest

from tflab import (
    ETA_SEPARABLE,
    ETA_SQRT_MIN,
    EtaSet,
    MeasuredFunction,
    PiecewiseMonomial,
    StepFunction,
    calderon_apply,
    calderon_estimate_check,
    calderon_separable_value,
    calderon_t_functional,
    convolution_norm,
    halfline_lorentz_functional,
    hardy_check,
    lorentz_norm,
    mult_convolution,
    rearrangement,
    young_check,
)


def random_step(rng: np.random.Generator, pieces: int = 4) -> StepFunction:
    breaks = np.sort(rng.uniform(0.05, 8.0, size=pieces))
    values = rng.uniform(0.0, 5.0, size=pieces)
    return StepFunction(breaks, values)


def random_monotone_step(rng: np.random.Generator, pieces: int = 4) -> StepFunction:
    breaks = np.sort(rng.uniform(0.05, 8.0, size=pieces))
    values = np.sort(rng.uniform(0.05, 5.0, size=pieces))[::-1]
    return StepFunction(breaks, values, monotone=True)


# -- EtaSet -----------------------------------------------------------------------


def test_eta_set_requires_triples() -> None:
    with pytest.raises(ValueError):
        EtaSet([])
    with pytest.raises(ValueError):
        EtaSet([("1/2", "1/2")])
    with pytest.raises(ValueError):
        EtaSet([("1/2", "1/2", "1/2"), ("1/2", "1/2", "1/2")])


def test_canonical_kernels() -> None:
    # sqrt-min: min(sqrt(rs/t), r, s); separable: sqrt(rs) min(1, 1/sqrt(t)).
    assert ETA_SQRT_MIN.kernel(4.0, 9.0, 1.0) == pytest.approx(4.0)
    assert ETA_SQRT_MIN.kernel(4.0, 9.0, 36.0) == pytest.approx(1.0)
    assert ETA_SEPARABLE.kernel(4.0, 9.0, 4.0) == pytest.approx(3.0)
    assert ETA_SEPARABLE.kernel(4.0, 9.0, 0.25) == pytest.approx(6.0)


# -- multiplicative convolution ------------------------------------------------------


def test_mult_convolution_log_tent() -> None:
    # 1_{[1,e)} * 1_{[1,e)} under dt/t is the tent in log x on [0, 2].
    f = StepFunction([1.0, math.e], [0.0, 1.0])
    for x in (1.2, 2.0, math.e, 4.0, math.e**2 * 0.99):
        lx = math.log(x)
        expected = max(0.0, min(lx, 1.0, 2.0 - lx)) if 0 <= lx <= 2 else 0.0
        assert mult_convolution(f, f, x) == pytest.approx(expected, abs=1e-12)


def test_mult_convolution_fubini_total_mass() -> None:
    f = StepFunction([1.0, math.e], [0.0, 1.0])
    # integral of (f*g) dt/t factorizes; both factors are 1 here.
    grid = np.exp(np.linspace(-0.5, 2.5, 4001))
    vals = [mult_convolution(f, f, x) for x in grid]
    total = np.trapezoid(vals, np.log(grid))
    assert total == pytest.approx(1.0, abs=1e-6)


def test_convolution_with_zero_vanishes() -> None:
    f = StepFunction([1.0, 2.0], [1.0, 3.0])
    z = StepFunction([1.0], [0.0])
    assert convolution_norm(f, z, 2) == 0.0


# -- Young and Hardy ------------------------------------------------------------------


def test_young_constant_one_random_pairs() -> None:
    rng = np.random.default_rng(42)
    for _ in range(50):
        f, g = random_step(rng), random_step(rng)
        for u, v, w in ((1, 1, 1), (2, 2, math.inf), (1, 2, 2), (1.5, 3, math.inf)):
            lhs, rhs, ok = young_check(f, g, u, v, w)
            assert ok and lhs <= rhs * (1 + 1e-9)


def test_young_rejects_off_scaling_indices() -> None:
    f = StepFunction([1.0], [1.0])
    with pytest.raises(ValueError):
        young_check(f, f, 2, 2, 2)


def test_hardy_constant_random_suite() -> None:
    rng = np.random.default_rng(7)
    for _ in range(50):
        phi = random_step(rng)
        for delta, q in ((0.5, 1), (0.25, 2), (-0.5, 1.5), (0.75, math.inf)):
            res = hardy_check(phi, delta, q)
            assert res.holds


def test_hardy_zero_function() -> None:
    z = StepFunction([1.0], [0.0])
    res = hardy_check(z, 0.5, 2)
    assert res.lhs1 == 0.0 and res.lhs2 == 0.0 and res.holds


def test_hardy_rejects_bad_delta_or_q() -> None:
    f = StepFunction([1.0], [1.0])
    with pytest.raises(ValueError):
        hardy_check(f, 1.0, 2)
    with pytest.raises(ValueError):
        hardy_check(f, 0.5, 0.5)


# -- Calderon operator: pointwise values ----------------------------------------------


def test_sqrt_min_unit_indicators_value_two() -> None:
    # S(1_{[0,1)}, 1_{[0,1)})(1) splits at the switching lines into pieces
    # summing to 2: derived by direct log-plane integration.
    one = StepFunction([1.0], [1.0], monotone=True)
    assert calderon_apply(ETA_SQRT_MIN, one, one, 1.0) == pytest.approx(2.0, rel=1e-12)


def test_sqrt_min_unit_indicators_riemann_oracle() -> None:
    # Independent check of the same value by 2-d Riemann summation in logs.
    m = 600
    edges = np.linspace(-12.0, 0.0, m + 1)
    mids = (edges[:-1] + edges[1:]) / 2
    dx = edges[1] - edges[0]
    lr, ls = np.meshgrid(mids, mids, indexing="ij")
    kernel = np.exp(np.minimum((lr + ls) / 2, np.minimum(lr, ls)))
    total = float(kernel.sum()) * dx * dx
    assert calderon_apply(ETA_SQRT_MIN, StepFunction([1.0], [1.0]), StepFunction([1.0], [1.0]), 1.0) == pytest.approx(
        total, rel=5e-3
    )


def test_calderon_symmetry() -> None:
    rng = np.random.default_rng(3)
    for _ in range(20):
        f, g = random_monotone_step(rng), random_monotone_step(rng)
        for t in (0.25, 1.0, 7.5):
            assert calderon_apply(ETA_SQRT_MIN, f, g, t) == pytest.approx(
                calderon_apply(ETA_SQRT_MIN, g, f, t), rel=1e-10
            )


def test_calderon_monotone_in_t() -> None:
    rng = np.random.default_rng(4)
    f, g = random_monotone_step(rng), random_monotone_step(rng)
    ts = np.geomspace(0.01, 100, 25)
    vals = [calderon_apply(ETA_SQRT_MIN, f, g, float(t)) for t in ts]
    assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


def test_calderon_separable_identity() -> None:
    rng = np.random.default_rng(5)
    for _ in range(20):
        f, g = random_monotone_step(rng), random_monotone_step(rng)
        for t in (0.3, 1.0, 4.0):
            assert calderon_apply(ETA_SEPARABLE, f, g, t) == pytest.approx(
                calderon_separable_value(f, g, t), rel=1e-9
            )


def test_calderon_quadrature_matches_exact() -> None:
    rng = np.random.default_rng(6)
    for _ in range(12):
        f, g = random_monotone_step(rng), random_monotone_step(rng)
        for t in (0.5, 2.0):
            a = calderon_apply(ETA_SQRT_MIN, f, g, t, method="exact")
            b = calderon_apply(ETA_SQRT_MIN, f, g, t, method="quadrature")
            assert b == pytest.approx(a, rel=1e-6)


def test_calderon_rejects_bad_method_and_t() -> None:
    one = StepFunction([1.0], [1.0])
    with pytest.raises(ValueError):
        calderon_apply(ETA_SQRT_MIN, one, one, 0.0)
    with pytest.raises(ValueError):
        calderon_apply(ETA_SQRT_MIN, one, one, 1.0, method="magic")


# -- half-line Lorentz functionals ------------------------------------------------------


def test_monomial_functional_closed_form() -> None:
    # || min(1, t^{-1/2}) ||_{q,1} = q + 2q/(q-2) = q^2/(q-2); equals 9 at q = 3.
    h = PiecewiseMonomial.bounded_inverse_sqrt()
    assert halfline_lorentz_functional(h, 3, 1) == pytest.approx(9.0, rel=1e-9)
    assert halfline_lorentz_functional(h, 4, 1) == pytest.approx(8.0, rel=1e-9)


def test_monomial_functional_sup_form() -> None:
    # sup_t t^{1/4} min(1, t^{-1/2}) = 1, attained at t = 1.
    h = PiecewiseMonomial.bounded_inverse_sqrt()
    assert halfline_lorentz_functional(h, 4, math.inf) == pytest.approx(1.0, rel=1e-9)


def test_step_functional_matches_lorentz_norm() -> None:
    # For a decreasing step function, the functional is the Lorentz norm of
    # any measured function with that rearrangement.
    f = MeasuredFunction.from_values([3.0, 1.0, 2.0], weight=0.5)
    sf = rearrangement(f)
    for q, w in ((2, 1), (3, 3), (2.5, math.inf)):
        assert halfline_lorentz_functional(sf, q, w) == pytest.approx(
            lorentz_norm(f, q, w), rel=1e-12
        )


def test_callable_functional_quadrature() -> None:
    # Plain-callable route, checked against the piecewise-monomial answer.
    h = PiecewiseMonomial.bounded_inverse_sqrt()
    got = halfline_lorentz_functional(lambda t: min(1.0, t**-0.5), 3, 1)
    assert got == pytest.approx(9.0, rel=1e-5)


# -- the t-functional ---------------------------------------------------------------


def quadrature_t_functional(fstar, gstar, q, w, lo=1e-6, hi=1e7, n=6000) -> float:
    """Independent oracle: log-grid trapezoid over a wide window plus
    analytic power pieces outside it (S is constant below lo and exactly
    proportional to t^{-1/2} above hi)."""
    lam = np.linspace(math.log(lo), math.log(hi), n)
    svals = np.array(
        [calderon_apply(ETA_SQRT_MIN, fstar, gstar, math.exp(x)) for x in lam]
    )
    integrand = np.exp(lam * w / q) * svals**w
    body = float(np.trapezoid(integrand, lam))
    head = svals[0] ** w * lo ** (w / q) * q / w
    c = svals[-1] * math.sqrt(hi)
    gamma = w / q - w / 2
    tail = c**w * math.exp(gamma * math.log(hi)) / (-gamma)
    return (head + body + tail) ** (1 / w)


def test_t_functional_matches_quadrature_oracle() -> None:
    rng = np.random.default_rng(8)
    for _ in range(3):
        f, g = random_monotone_step(rng, 3), random_monotone_step(rng, 3)
        for q, w in ((4, 1), (3, 2)):
            got = calderon_t_functional(f, g, q, w)
            want = quadrature_t_functional(f, g, q, w)
            assert got == pytest.approx(want, rel=1e-4)


def test_t_functional_sup_form_unit_indicators() -> None:
    # sup_t t^{1/4} S(1,1)(t): S(t) = 2 - sqrt(t) + ... piecewise; the value
    # at q = 4, w = inf is pinned by the exact sup bracket.
    one = StepFunction([1.0], [1.0], monotone=True)
    got = calderon_t_functional(one, one, 4, math.inf)
    ts = np.geomspace(1e-4, 1e6, 4000)
    brute = max(
        t ** 0.25 * calderon_apply(ETA_SQRT_MIN, one, one, float(t)) for t in ts
    )
    assert got == pytest.approx(brute, rel=1e-3)
    assert got >= brute - 1e-12


def test_t_functional_separable_closed_form() -> None:
    # For the separable kernel the functional factorizes through the
    # sqrt-moments and the monomial functional.
    one = StepFunction([1.0], [1.0], monotone=True)
    # sqrt-moment of 1_{[0,1)} is 2, so S(t) = 4 min(1, t^{-1/2});
    # || 4 min(1,sqrt(1/t)) ||_{3,1} = 4 * 9.
    got = calderon_t_functional(one, one, 3, 1, eta=ETA_SEPARABLE)
    assert got == pytest.approx(36.0, rel=1e-9)


def test_t_functional_rejects_unknown_eta() -> None:
    one = StepFunction([1.0], [1.0], monotone=True)
    other = EtaSet([("1/3", "1/3", "1/3")])
    with pytest.raises(ValueError):
        calderon_t_functional(one, one, 4, 1, eta=other)


def test_t_functional_rejects_q_at_most_two() -> None:
    one = StepFunction([1.0], [1.0], monotone=True)
    with pytest.raises(ValueError):
        calderon_t_functional(one, one, 2, 1)


# -- the composite estimate -----------------------------------------------------------


def test_estimate_check_zero_function() -> None:
    f = MeasuredFunction.from_values([0.0, 0.0])
    g = MeasuredFunction.from_values([1.0, 2.0])
    lhs, rhs, ratio = calderon_estimate_check(4, 3, 1, 1, 1, f, g)
    assert lhs == 0.0 and ratio == 0.0


def test_estimate_check_finite_on_random_input() -> None:
    rng = np.random.default_rng(9)
    f = MeasuredFunction.from_values(rng.standard_normal(8))
    g = MeasuredFunction.from_values(rng.standard_normal(8))
    lhs, rhs, ratio = calderon_estimate_check(4, 3, 1, 1, 1, f, g)
    assert math.isfinite(lhs) and math.isfinite(rhs) and math.isfinite(ratio)
    assert lhs == pytest.approx(ratio * rhs, rel=1e-12)


def test_estimate_check_rejects_p_equal_two() -> None:
    f = MeasuredFunction.from_values([1.0])
    with pytest.raises(ValueError):
        calderon_estimate_check(4, 2, 1, 1, 1, f, f)
