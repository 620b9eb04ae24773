"""Scaling-law regression for signaling times and hop strengths.

Three fixed-form models, each linearized exactly by logarithms and
solved with unweighted ordinary least squares (no iterative fitting, no
initialization knobs):

* ``power_log``:     t = a * N**gamma * ln(N)
* ``loglog_power``:  t = a * ln(N)**b * ln(ln(N))**c
* ``pure_power``:    t = a * N**gamma

All logarithms are natural. 95% intervals use the normal approximation
1.96 * SE; the fitted grids have few points, so treat them as
indicative rather than exact coverage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CI95_FACTOR = 1.96

# Design-matrix condition number beyond which the regressors are
# effectively collinear over the provided N range and the coefficient
# split is unreliable (the fitted curve itself remains fine).
CONDITION_WARN = 1e3

MODELS = ("power_log", "loglog_power", "pure_power")


@dataclass(frozen=True)
class FitResult:
    """Coefficients of one scaling-law fit.

    ``coefficients`` is (a, gamma) for the two-parameter models and
    (a, b, c) for ``loglog_power``; ``standard_errors`` and ``ci95``
    align with it. The error on ``a`` is propagated from log(a) by the
    delta method (se_a = a * se_log_a). ``residual_rms`` is measured in
    log space.
    """

    model: str
    coefficients: tuple[float, ...]
    standard_errors: tuple[float, ...]
    ci95: tuple[float, ...]
    residual_rms: float
    n_points: int
    condition_warning: bool = False


def _validate(points, min_points: int, min_n: int):
    pts = [(float(n), float(t)) for n, t in points]
    if len(pts) < min_points:
        raise ValueError(f"need at least {min_points} points, got {len(pts)}")
    ns = np.array([p[0] for p in pts])
    ts = np.array([p[1] for p in pts])
    if np.any(ns < min_n):
        raise ValueError(f"all N must be >= {min_n}")
    if np.any(ts <= 0):
        raise ValueError("all t must be positive")
    if np.all(ns == ns[0]):
        raise ValueError("degenerate design: all N equal")
    return ns, ts


def _ols(design: np.ndarray, y: np.ndarray):
    n, k = design.shape
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    dof = n - k
    sigma2 = float(resid @ resid) / dof if dof > 0 else 0.0
    cov = sigma2 * np.linalg.inv(design.T @ design)
    se = np.sqrt(np.maximum(np.diag(cov), 0.0))
    cond = float(np.linalg.cond(design))
    return coef, se, rms, cond


def _pack(model: str, log_a: float, rest, se_log_a: float, se_rest, rms, n_points, cond) -> FitResult:
    a = math.exp(log_a)
    coefficients = (a, *rest)
    standard_errors = (a * se_log_a, *se_rest)
    return FitResult(
        model=model,
        coefficients=coefficients,
        standard_errors=standard_errors,
        ci95=tuple(CI95_FACTOR * s for s in standard_errors),
        residual_rms=rms,
        n_points=n_points,
        condition_warning=cond > CONDITION_WARN,
    )


def fit_power_log(points) -> FitResult:
    """Fit t = a * N**gamma * ln(N) by OLS on ln t - ln ln N = ln a + gamma ln N."""
    ns, ts = _validate(points, min_points=3, min_n=3)
    y = np.log(ts) - np.log(np.log(ns))
    design = np.column_stack([np.ones_like(ns), np.log(ns)])
    coef, se, rms, cond = _ols(design, y)
    return _pack("power_log", coef[0], (float(coef[1]),), se[0], (float(se[1]),), rms, len(ns), cond)


def fit_loglog_power(points) -> FitResult:
    """Fit t = a * ln(N)**b * lnln(N)**c by OLS on the triple-log linearization.

    The two regressors ln ln N and ln ln ln N are nearly collinear over
    narrow N ranges; ``condition_warning`` flags when the coefficient
    split (b vs c) should not be over-interpreted.
    """
    ns, ts = _validate(points, min_points=4, min_n=16)
    y = np.log(ts)
    x1 = np.log(np.log(ns))
    x2 = np.log(np.log(np.log(ns)))
    design = np.column_stack([np.ones_like(ns), x1, x2])
    coef, se, rms, cond = _ols(design, y)
    return _pack(
        "loglog_power",
        coef[0],
        (float(coef[1]), float(coef[2])),
        se[0],
        (float(se[1]), float(se[2])),
        rms,
        len(ns),
        cond,
    )


def fit_pure_power(points) -> FitResult:
    """Fit t = a * N**gamma by OLS on ln t = ln a + gamma ln N."""
    ns, ts = _validate(points, min_points=3, min_n=2)
    y = np.log(ts)
    design = np.column_stack([np.ones_like(ns), np.log(ns)])
    coef, se, rms, cond = _ols(design, y)
    return _pack("pure_power", coef[0], (float(coef[1]),), se[0], (float(se[1]),), rms, len(ns), cond)


def fit_model(model: str, points) -> FitResult:
    """Dispatch by model name; see ``MODELS``."""
    if model == "power_log":
        return fit_power_log(points)
    if model == "loglog_power":
        return fit_loglog_power(points)
    if model == "pure_power":
        return fit_pure_power(points)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
