"""Diagonal weighted kernels on the ball and full space, assembled from
moment tables.

The harmonic diagonal is

    R(x) = Gamma(n/2) / (2 pi^(n/2)) * sum_k N_{k,n} t^k / rho_{2k+n-1}

and the holomorphic one

    K(z) = 1 / (2 pi^m) * sum_k (k+m-1)!/k! * t^k / rho_{2k+2m-1},

with t the squared radius and rho_j the weight moments.  Terms are summed in
the log domain (moments underflow long before the kernel does) with the same
10-consecutive-decay geometric tail certificate the series module uses.
"""

import math
from dataclasses import dataclass

from .errors import NoDecay
from .quadrature import DEFAULT_SPEC, cached_moment_logs

_BLOCK = 64
_DECAY_WINDOW = 10


@dataclass(frozen=True)
class KernelEvaluation:
    value: float
    log_value: float
    terms_used: int
    tail_bound: float
    alpha: float
    dimension: int
    t: float
    flags: tuple = ()


def _finish(log_value, terms, tail, alpha, dim, t, flags=()):
    if log_value > 709.0:
        value = math.inf
        flags = flags + ("overflow",)
    elif log_value < -745.0:
        value = 0.0
        flags = flags + ("underflow",)
    else:
        value = math.exp(log_value)
    return KernelEvaluation(value, log_value, terms, tail, alpha, dim, t, flags)


def _log_zonal_dim(k, n):
    if n == 2:
        return 0.0 if k == 0 else math.log(2.0)
    if k == 0:
        return 0.0
    return (
        math.lgamma(n + k - 2.0)
        + math.log(n + 2.0 * k - 2.0)
        - math.lgamma(k + 1.0)
        - math.lgamma(n - 1.0)
    )


def _log_rising(k, m):
    # log of (k+m-1)!/k!
    return math.lgamma(k + m) - math.lgamma(k + 1.0)


def _sum_log_terms(profile, alpha, t, tol, spec, k_cap, coeff_log, moment_index):
    """Stream log-domain terms coeff_log(k) + k log t - log rho_(moment_index(k))
    until the geometric tail certificate reaches tol."""
    log_t = math.log(t)
    scale = -math.inf
    total = 0.0
    prev = None
    q_window = []
    k = 0
    while k <= k_cap:
        ks = list(range(k, min(k + _BLOCK, k_cap + 1)))
        rows = cached_moment_logs(profile, alpha, [moment_index(i) for i in ks], spec)
        for i, (log_mom, _) in zip(ks, rows):
            log_term = coeff_log(i) + i * log_t - log_mom
            if log_term > scale:
                total = total * math.exp(scale - log_term) + 1.0
                scale = log_term
            else:
                total += math.exp(log_term - scale)
            if prev is not None:
                ratio = math.exp(log_term - prev)
                if ratio < 1.0:
                    q_window.append(ratio)
                    q_window = q_window[-_DECAY_WINDOW:]
                else:
                    q_window = []
            prev = log_term
            if len(q_window) >= _DECAY_WINDOW:
                q = max(q_window)
                tail = math.exp(log_term - scale) * q / (1.0 - q)
                if tail <= tol * total:
                    return scale + math.log(total), i + 1, tail / total
        k = ks[-1] + 1
    raise NoDecay(
        f"series tail not certified within k_max={k_cap}; t={t} is too close "
        "to the support radius for this tolerance"
    )


def harmonic_ball_diag(profile, alpha, n, t, tol=1e-10, spec=DEFAULT_SPEC):
    """Weighted harmonic kernel R_alpha(x, x) at t = |x|^2."""
    if n < 2:
        raise ValueError("real dimension n must be >= 2")
    if not 0.0 <= t < profile.support_radius:
        raise ValueError(f"need 0 <= t < {profile.support_radius}")
    log_pref = math.lgamma(0.5 * n) - math.log(2.0) - 0.5 * n * math.log(math.pi)
    if t == 0.0:
        log_mom = cached_moment_logs(profile, alpha, [n - 1], spec)[0][0]
        return _finish(log_pref - log_mom, 1, 0.0, alpha, n, t)
    k_cap = int(10 * (alpha + n) + 200)
    log_sum, terms, tail = _sum_log_terms(
        profile,
        alpha,
        t,
        tol,
        spec,
        k_cap,
        lambda k: _log_zonal_dim(k, n),
        lambda k: 2 * k + n - 1,
    )
    return _finish(log_pref + log_sum, terms, tail, alpha, n, t)


def holomorphic_ball_diag(profile, alpha, m, t, tol=1e-10, spec=DEFAULT_SPEC):
    """Weighted holomorphic kernel K_alpha(z, z) at t = |z|^2."""
    if m < 1:
        raise ValueError("complex dimension m must be >= 1")
    if not 0.0 <= t < profile.support_radius:
        raise ValueError(f"need 0 <= t < {profile.support_radius}")
    log_pref = -math.log(2.0) - m * math.log(math.pi)
    if t == 0.0:
        log_mom = cached_moment_logs(profile, alpha, [2 * m - 1], spec)[0][0]
        return _finish(log_pref + _log_rising(0, m) - log_mom, 1, 0.0, alpha, m, t)
    k_cap = int(10 * (alpha + m) + 200)
    log_sum, terms, tail = _sum_log_terms(
        profile,
        alpha,
        t,
        tol,
        spec,
        k_cap,
        lambda k: _log_rising(k, m),
        lambda k: 2 * k + 2 * m - 1,
    )
    return _finish(log_pref + log_sum, terms, tail, alpha, m, t)
