import math

import numpy as np
import pytest

from lr_horizon import (
    CouplingModel,
    NoCrossingError,
    SignalingSpec,
    analytic_bound,
    chain,
    exact_sum_signaling_time,
    fit_pure_power,
    ising_exact_oracle,
    ising_signal,
    ising_signaling_time,
    many_site_signaling_time,
    ring,
    self_hop_lambda,
    signaling_contour,
    signaling_time_analytic,
    signaling_time_numeric,
)

RING4_ALPHA1 = self_hop_lambda(ring(4), CouplingModel(alpha=1.0))


def test_signaling_spec_threshold_window():
    SignalingSpec(delta=1.9)
    with pytest.raises(ValueError):
        SignalingSpec(delta=0.0)
    with pytest.raises(ValueError):
        SignalingSpec(delta=2.0)  # trivial commutator bound for unit norms


def test_analytic_inversion_hand_value():
    # lam=2.5, p=4, r=2: ln(1 + 1*2.5*4*2/2) / (2*2.5*5)
    res = signaling_time_analytic(RING4_ALPHA1, SignalingSpec(delta=1.0), 2.0)
    assert res.t_star == pytest.approx(math.log(11) / 25, rel=1e-13)
    assert res.method == "analytic"


def test_analytic_inversion_small_delta_limit():
    t = signaling_time_analytic(RING4_ALPHA1, SignalingSpec(delta=1e-12), 2.0).t_star
    assert 0 < t < 1e-11


def test_analytic_inversion_consistency():
    """Plugging t* back into the bound recovers delta."""
    for delta in (0.25, 1.0, 1.7):
        res = signaling_time_analytic(RING4_ALPHA1, SignalingSpec(delta=delta), 2.0)
        assert analytic_bound(RING4_ALPHA1, r=2.0, t=res.t_star).value == pytest.approx(delta, abs=1e-12)


def test_numeric_matches_analytic():
    params = self_hop_lambda(ring(32), CouplingModel(alpha=0.5))

    def bound_fn(t):
        return analytic_bound(params, r=5.0, t=t).value

    closed = signaling_time_analytic(params, SignalingSpec(delta=1.0), 5.0).t_star
    res = signaling_time_numeric(bound_fn, 1.0, t_init=1.0 / (2 * params.lam * (1 + params.p)))
    assert res.t_star == pytest.approx(closed, rel=1e-9)
    lo, hi = res.bracket
    assert lo <= res.t_star <= hi


def test_numeric_round_trip():
    bound_fn = lambda t: t**3  # monotone through 0
    delta = bound_fn(0.37)
    assert signaling_time_numeric(bound_fn, delta, t_init=0.05).t_star == pytest.approx(0.37, rel=1e-9)


def test_numeric_scale_invariance():
    bound_fn = lambda t: math.expm1(3 * t)
    base = signaling_time_numeric(bound_fn, 1.0, t_init=0.1).t_star
    scaled = signaling_time_numeric(lambda t: 40.0 * bound_fn(t), 40.0, t_init=0.1).t_star
    assert scaled == pytest.approx(base, rel=1e-9)


def test_numeric_no_crossing():
    # bounded function never reaches delta
    with pytest.raises(NoCrossingError):
        signaling_time_numeric(lambda t: -math.expm1(-t), 2.0, t_init=0.1)


def test_contour_values():
    assert signaling_contour(math.e, 0.0, 1.0) == pytest.approx(1 / math.e, rel=1e-13)
    n, alpha = 5000.0, 0.4
    assert signaling_contour(n, alpha, 1.0) == pytest.approx(
        math.log(n ** (1 - alpha)) / n ** (1 - alpha), rel=1e-12
    )
    # r = N collapses the argument to N itself
    assert signaling_contour(n, alpha, n) == pytest.approx(math.log(n) / n ** (1 - alpha), rel=1e-12)


def test_contour_requires_alpha_below_one():
    with pytest.raises(ValueError):
        signaling_contour(100.0, 1.0, 1.0)


def test_many_site_hand_value():
    res = many_site_signaling_time(ring(4), CouplingModel(alpha=1.0), [0], [1, 2, 3], 1.0)
    assert res.t_star == pytest.approx(math.log(3) / 25, rel=1e-9)


def test_many_site_small_delta_limit():
    res = many_site_signaling_time(ring(4), CouplingModel(alpha=1.0), [0], [1, 2, 3], 1e-10)
    assert 0 < res.t_star < 1e-10


def test_many_site_scaling_exponent():
    """t* against the full complement falls off as N^(alpha-1)."""
    for alpha, target in ((0.0, -1.0), (0.5, -0.5)):
        pts = []
        for n in (256, 512, 1024, 2048, 4096):
            res = many_site_signaling_time(ring(n), CouplingModel(alpha=alpha), [0], list(range(1, n)), 1.0)
            pts.append((n, res.t_star))
        assert fit_pure_power(pts).coefficients[1] == pytest.approx(target, abs=0.1)


def test_exact_sum_signaling_regression_fixture():
    """Bisection against the series bound; value frozen from this solver."""
    res = exact_sum_signaling_time(10**4, 0.5, 1, 1.0)
    assert res.t_star == pytest.approx(0.00615981581116, rel=1e-6)


def test_ising_signal_values():
    spec = ring(4)
    model = CouplingModel(alpha=1.0)
    assert ising_signal(spec, model, 0, 0.0) == 0.0
    assert ising_signal(spec, model, 0, math.pi / 30) == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("make", [ring, chain])
def test_ising_signal_matches_dense_oracle(alpha, make):
    rng = np.random.default_rng(11)
    for n in (2, 3, 5, 8):
        if make is ring and n == 2:
            continue
        spec = make(n)
        model = CouplingModel(alpha=alpha)
        for t in rng.uniform(0.0, 1.0, size=5):
            assert ising_exact_oracle(spec, model, 0, float(t)) == pytest.approx(
                ising_signal(spec, model, 0, float(t)), abs=1e-10
            )


def test_ising_signaling_time_hand_value():
    t = ising_signaling_time(ring(4), CouplingModel(alpha=1.0), 0, 0.5)
    assert t == pytest.approx(math.pi / 30, rel=1e-12)


def test_ising_signaling_time_delta_window():
    with pytest.raises(ValueError):
        ising_signaling_time(ring(4), CouplingModel(alpha=1.0), 0, 1.0)
    with pytest.raises(ValueError):
        ising_signaling_time(ring(4), CouplingModel(alpha=1.0), 0, 0.0)


def test_ising_signaling_time_scaling():
    pts = [(n, ising_signaling_time(ring(n), CouplingModel(alpha=0.5), 0, 0.5)) for n in (256, 1024, 4096, 16384)]
    assert fit_pure_power(pts).coefficients[1] == pytest.approx(-0.5, abs=0.05)


def test_kac_rescaling_multiplies_times_by_lambda():
    spec = ring(16)
    plain = CouplingModel(alpha=0.5)
    kac = CouplingModel(alpha=0.5, kac_normalize=True)
    lam = self_hop_lambda(spec, plain).lam

    params = self_hop_lambda(spec, plain)
    t0 = signaling_time_analytic(params, SignalingSpec(delta=1.0), 4.0).t_star
    t1 = signaling_time_analytic(params, SignalingSpec(delta=1.0, kac_rescale=True), 4.0).t_star
    assert t1 == pytest.approx(lam * t0, rel=1e-12)

    e0 = exact_sum_signaling_time(16, 0.5, 4, 1.0).t_star
    e1 = exact_sum_signaling_time(16, 0.5, 4, 1.0, kac_rescale=True).t_star
    assert e1 == pytest.approx(lam * e0, rel=1e-9)

    m0 = many_site_signaling_time(spec, plain, [0], [8], 1.0).t_star
    m1 = many_site_signaling_time(spec, kac, [0], [8], 1.0).t_star
    assert m1 == pytest.approx(lam * m0, rel=1e-9)

    i0 = ising_signaling_time(spec, plain, 0, 0.5)
    i1 = ising_signaling_time(spec, kac, 0, 0.5)
    assert i1 == pytest.approx(lam * i0, rel=1e-12)
