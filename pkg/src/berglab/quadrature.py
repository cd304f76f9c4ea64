"""Adaptive integration, weight moments, and vertical Laplace transforms."""

import math
import threading
from dataclasses import dataclass, field

from . import _backend
from .errors import NoConvergence
from .weights import RadialWeightProfile

UNDERFLOW_FLOOR = 1e-290


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_depth: int = 40
    panel_order: int = 15

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.max_depth < 1:
            raise ValueError("rel_tol must be > 0 and max_depth >= 1")
        if self.panel_order != 15:
            raise ValueError("only the embedded 15/7-point panel rule is provided")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    converged: bool


def integrate_adaptive(f, interval, spec=DEFAULT_SPEC):
    """Adaptive panel integration of a callable on [a, b] or [0, inf).

    Semi-infinite intervals are mapped through u = r/(1+r) and integrated on
    (0, 1).  Never raises on slow convergence: the best value is returned
    with converged=False.
    """
    a, b = interval
    infinite = math.isinf(b)
    value, err, ok = _backend.integrate_callable(
        f, a, b, infinite, spec.rel_tol, spec.abs_tol, spec.max_depth
    )
    return IntegralResult(value, err, ok)


@dataclass(frozen=True)
class MomentResult:
    value: float
    log_value: float
    error_estimate: float
    underflow: bool


_moment_cache = {}
_moment_cache_lock = threading.Lock()


def clear_moment_cache():
    with _moment_cache_lock:
        _moment_cache.clear()


def cached_moment_logs(profile, alpha, ks, spec=DEFAULT_SPEC):
    """(log rho_k(alpha), rel_err) for each requested k, cached per profile."""
    key = (profile, float(alpha), spec.rel_tol)
    with _moment_cache_lock:
        entry = _moment_cache.setdefault(key, {})
        missing = [k for k in ks if k not in entry]
    if missing:
        codes, offs, params = profile.descriptor()
        infinite = math.isinf(profile.support_radius)
        rows = _backend.moment_table_log(
            codes,
            offs,
            params,
            infinite,
            missing,
            float(alpha),
            spec.rel_tol,
            spec.abs_tol,
            spec.max_depth,
        )
        bad = [k for k, (_, _, ok) in zip(missing, rows) if not ok]
        if bad:
            raise NoConvergence(f"moment quadrature did not converge for k={bad}")
        with _moment_cache_lock:
            for k, (lv, err, _) in zip(missing, rows):
                entry[k] = (lv, err)
    with _moment_cache_lock:
        return [entry[k] for k in ks]


def moment(profile, k, alpha, spec=DEFAULT_SPEC):
    """rho_k(alpha): integral of r^k phi(r^2)^alpha dr over the support."""
    if k < 0:
        raise ValueError("moment index must be >= 0")
    if math.isinf(profile.support_radius) and alpha <= 0.0:
        raise ValueError("full-space moments need alpha > 0")
    (log_value, err) = cached_moment_logs(profile, alpha, [k], spec)[0]
    value = math.exp(log_value) if log_value > -745.0 else 0.0
    return MomentResult(value, log_value, err, value < UNDERFLOW_FLOOR)


@dataclass
class MomentTable:
    """rho_k(alpha) for k = 0..k_max, with log values and error estimates."""

    alpha: float
    k_max: int
    values: dict = field(default_factory=dict)
    log_values: dict = field(default_factory=dict)
    error_estimates: dict = field(default_factory=dict)
    finite_support: bool = True

    def validate(self):
        """Positivity, log-convexity, and (finite support) decrease in k."""
        slack = 10.0 * max(self.error_estimates.values(), default=0.0) + 1e-14
        for k in range(self.k_max + 1):
            if not math.isfinite(self.log_values[k]):
                raise AssertionError(f"moment k={k} is not positive")
        for k in range(self.k_max - 1):
            lhs = 2.0 * self.log_values[k + 1]
            rhs = self.log_values[k] + self.log_values[k + 2]
            if lhs > rhs + slack:
                raise AssertionError(f"log-convexity fails at k={k}")
        if self.finite_support:
            for k in range(self.k_max):
                if self.log_values[k + 1] >= self.log_values[k] + slack:
                    raise AssertionError(f"moments not decreasing at k={k}")
        return True


def moment_table(profile, alpha, k_max, spec=DEFAULT_SPEC):
    if math.isinf(profile.support_radius) and alpha <= 0.0:
        raise ValueError("full-space moments need alpha > 0")
    ks = list(range(k_max + 1))
    rows = cached_moment_logs(profile, alpha, ks, spec)
    table = MomentTable(
        alpha=float(alpha),
        k_max=k_max,
        finite_support=not math.isinf(profile.support_radius),
    )
    for k, (lv, err) in zip(ks, rows):
        table.log_values[k] = lv
        table.values[k] = math.exp(lv) if lv > -745.0 else 0.0
        table.error_estimates[k] = err
    return table


def laplace_log(profile, t, alpha=1.0, spec=DEFAULT_SPEC, use_closed_form=True):
    """log rho_tilde(t) for the weight rho^alpha; closed form when available."""
    if use_closed_form:
        pc = profile.power_decay_exponents()
        if pc is not None:
            p_big = pc[0] * alpha
            c_big = pc[1] * alpha
            return math.lgamma(p_big + 1.0) - (p_big + 1.0) * math.log(c_big + 2.0 * t)
    codes, offs, params = profile.descriptor()
    lv, _, ok = _backend.vlaplace_log(
        codes, offs, params, float(alpha), float(t), spec.rel_tol, spec.abs_tol, spec.max_depth
    )
    if not ok:
        raise NoConvergence(f"Laplace transform did not converge at t={t}")
    return lv


def laplace_transform_rho(profile, t, spec=DEFAULT_SPEC, alpha=1.0, use_closed_form=True):
    """rho_tilde(t): integral of rho(y)^alpha e^(-2 t y) over (0, inf)."""
    if t <= 0.0:
        raise ValueError("transform argument must be positive")
    return math.exp(laplace_log(profile, t, alpha, spec, use_closed_form))


def scaled_profile(profile, c):
    """Profile for c * phi, used by the weight-scaling invariance checks."""
    return RadialWeightProfile.polynomial((c,)) * profile
