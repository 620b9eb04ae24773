"""Signaling and scrambling time lower bounds.

A signaling time here is the earliest t at which a commutator-norm
bound reaches the threshold delta; since every evaluator upper-bounds
the true commutator, each t* is a certified lower bound on the physical
signaling time. The many-site variant doubles as a scrambling-time
lower bound (scrambling from a region is no faster than signaling to
its complement).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import UNIT_PREFACTOR, BoundPrefactor, many_site_bound
from .kernels import HopParameters, self_hop_lambda, site_hop_strength
from .lattice import CouplingModel, LatticeSpec

# Bisection: relative tolerance in t; downstream exponent fits need
# 6+ significant digits across N spans of 10**2.
BISECT_REL_TOL = 1e-10
MAX_BRACKET_DOUBLINGS = 200


class NoCrossingError(RuntimeError):
    """The bound never reached delta within the bracket expansion."""


@dataclass(frozen=True)
class SignalingSpec:
    """Threshold and prefactors for a signaling-time query."""

    delta: float = 1.0
    prefactor: BoundPrefactor = UNIT_PREFACTOR
    kac_rescale: bool = False

    def __post_init__(self) -> None:
        if not 0 < self.delta < self.prefactor.trivial_bound:
            raise ValueError(
                f"delta must lie in (0, {self.prefactor.trivial_bound}), got {self.delta}"
            )


@dataclass(frozen=True)
class SignalingTime:
    """Earliest time a bound reaches delta; a lower bound on t_si."""

    t_star: float
    method: str
    bracket: tuple[float, float] | None = None


def signaling_time_analytic(params: HopParameters, sig: SignalingSpec, r: float) -> SignalingTime:
    """Invert the closed-form bound: t* = ln(1 + delta lam p r^alpha / s) / (2 lam (1+p)).

    ``s`` is the prefactor scale 2||A||||B|||X||Y|. With ``kac_rescale``
    the reported time is multiplied by lam.
    """
    if r < 1:
        raise ValueError("separation r must be >= 1")
    lam, p = params.lam, params.p
    t = math.log1p(sig.delta * lam * p * r**params.alpha / sig.prefactor.scale) / (
        2.0 * lam * (1.0 + p)
    )
    if sig.kac_rescale:
        t *= lam
    return SignalingTime(t_star=t, method="analytic")


def signaling_time_numeric(bound_fn, delta: float, t_init: float = 1.0) -> SignalingTime:
    """Bisect a monotone bound for the crossing bound_fn(t*) = delta.

    ``bound_fn`` must be continuous, strictly increasing, and 0 at t=0.
    The bracket grows geometrically from ``t_init`` (callers working
    from hop parameters should seed it with 1 / (2 lam (1 + p)), the
    natural time scale of the exponential bounds) and then bisects to
    ``BISECT_REL_TOL`` relative width.

    Raises
    ------
    NoCrossingError
        If delta is not reached after ``MAX_BRACKET_DOUBLINGS``
        doublings, i.e. delta sits above the bound's achievable range.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if t_init <= 0:
        raise ValueError("t_init must be positive")
    lo, hi = 0.0, t_init
    doublings = 0
    while bound_fn(hi) < delta:
        lo = hi
        hi *= 2.0
        doublings += 1
        if doublings > MAX_BRACKET_DOUBLINGS:
            raise NoCrossingError(f"bound stayed below delta={delta} out to t={hi:.3e}")
    while hi - lo > BISECT_REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if bound_fn(mid) < delta:
            lo = mid
        else:
            hi = mid
    return SignalingTime(t_star=0.5 * (lo + hi), method="numeric", bracket=(lo, hi))


def signaling_contour(n_sites: float, alpha: float, r: float, delta: float = 1.0) -> float:
    """Asymptotic comparator log(N^(1-alpha) r^alpha) / N^(1-alpha).

    Valid for D = 1, alpha < 1. Carries no hidden constant (the
    threshold ``delta`` enters only through constants, so it does not
    appear in the expression); use for fits and plots, never as a
    numeric equality.
    """
    if alpha >= 1:
        raise ValueError("contour is stated for alpha < 1")
    if r < 1 or n_sites < 2:
        raise ValueError("need r >= 1 and N >= 2")
    scale = n_sites ** (1.0 - alpha)
    return math.log(scale * r**alpha) / scale


def many_site_signaling_time(
    spec: LatticeSpec,
    model: CouplingModel,
    region_x,
    region_y,
    delta: float = 1.0,
    norms: tuple[float, float] = (1.0, 1.0),
) -> SignalingTime:
    """Earliest t at which the pair-summed analytic bound reaches delta.

    With |X| fixed and Y the complement this is simultaneously the
    many-site signaling bound and a scrambling-time lower bound. Solved
    by bisection on ``many_site_bound``; honors ``model.kac_normalize``
    by rescaling the reported time by lambda.
    """
    params = self_hop_lambda(spec, model)

    def f(t: float) -> float:
        return many_site_bound(spec, model, region_x, region_y, t, norms).value

    t_init = 1.0 / (2.0 * params.lam * (1.0 + params.p))
    result = signaling_time_numeric(f, delta, t_init=t_init)
    t = result.t_star * params.lam if model.kac_normalize else result.t_star
    return SignalingTime(t_star=t, method="many_site", bracket=result.bracket)


def exact_sum_signaling_time(
    n_sites: int,
    alpha: float,
    r: int,
    delta: float = 1.0,
    pre: BoundPrefactor = UNIT_PREFACTOR,
    spectrum=None,
    kac_rescale: bool = False,
) -> SignalingTime:
    """Bisection on the ring series bound; the workhorse for the N sweeps.

    Pass a precomputed spectrum to amortize the FFT across many r or
    delta values at fixed (N, alpha).
    """
    from .bounds import exact_sum_bound
    from .kernels import fourier_spectrum

    if spectrum is None:
        spectrum = fourier_spectrum(n_sites, alpha)
    lam = spectrum.lam
    p = 2.0 ** (alpha + 1)

    def f(t: float) -> float:
        return exact_sum_bound(n_sites, alpha, r, t, pre, spectrum).value

    result = signaling_time_numeric(f, delta, t_init=1.0 / (2.0 * lam * (1.0 + p)))
    t = result.t_star * lam if kac_rescale else result.t_star
    return SignalingTime(t_star=t, method="exact_sum", bracket=result.bracket)


def ising_signal(spec: LatticeSpec, model: CouplingModel, i: int, t: float) -> float:
    """Exact commutator expectation sin(2 lambda_i t) of the Ising protocol.

    For the all-to-all Ising Hamiltonian sum_{j<k} J_jk sigma^z_j
    sigma^z_k acting on a GHZ state, with A = sigma^+ on site i and B
    the product of sigma^+ on every other site, the commutator
    expectation has magnitude sin(2 lambda_i t) where lambda_i is the
    coupling row sum at i. The dense oracle in ``dynamics`` reproduces
    this including the overall phase convention.
    """
    return math.sin(2.0 * t * site_hop_strength(spec, model, i))


def ising_signaling_time(spec: LatticeSpec, model: CouplingModel, i: int, delta: float) -> float:
    """First time |sin(2 lambda_i t)| reaches delta: arcsin(delta) / (2 lambda_i)."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    lam_i = site_hop_strength(spec, model, i)
    t = math.asin(delta) / (2.0 * lam_i)
    return t * lam_i if model.kac_normalize else t
