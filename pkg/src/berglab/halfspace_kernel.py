"""Diagonal kernels on the upper half-space and Siegel domain.

Both reduce to one-dimensional integrals against the reciprocal of the
vertical weight's Laplace transform:

    R(x, y)  = 2^(2-n) / (pi^((n-1)/2) Gamma((n-1)/2))
               * integral r^(n-2) e^(-2 y r) / rho_tilde(r) dr
    K(z, w)  = 2^(m-2) / pi^m
               * integral xi^(m-1) e^(-2 s xi) / rho_tilde(xi) dxi

with s = Im w - |z|^2 the invariant height.  For pure power/decay weights
rho_tilde has a closed form, which is the default inner path; the numeric
nested transform is kept as a cross-check (inner tolerance a tenth of the
outer).  The two kernels are tied together by the constant-factor bridge
checked in halfspace_siegel_bridge_check.
"""

import math
from dataclasses import dataclass

from . import _backend
from .errors import InnerTransformFailure, NoConvergence
from .ball_kernel import KernelEvaluation, _finish
from .quadrature import DEFAULT_SPEC


@dataclass(frozen=True)
class SiegelPoint:
    """Diagonal point of the Siegel domain, reduced to its invariant height."""

    s: float
    m: int

    def __post_init__(self):
        if self.s <= 0.0:
            raise ValueError("Siegel height s must be positive")
        if self.m < 1:
            raise ValueError("complex dimension m must be >= 1")


def _halfline_log(profile, alpha, expo, scale, tol, spec, inner):
    if inner not in ("auto", "closed", "numeric"):
        raise ValueError("inner must be 'auto', 'closed', or 'numeric'")
    closed_pc = None
    if inner != "numeric":
        pc = profile.power_decay_exponents()
        if pc is not None:
            closed_pc = (pc[0] * alpha, pc[1] * alpha)
        elif inner == "closed":
            raise ValueError("no closed-form transform for this weight family")
    codes, offs, params = profile.descriptor()
    rel = min(spec.rel_tol, 0.1 * tol)
    log_v, err, ok, inner_ok = _backend.halfline_log(
        codes,
        offs,
        params,
        float(alpha),
        float(expo),
        float(scale),
        closed_pc,
        rel,
        spec.abs_tol,
        spec.max_depth,
    )
    if not inner_ok:
        raise InnerTransformFailure("nested Laplace transform did not converge")
    if not ok:
        raise NoConvergence("half-line kernel quadrature did not converge")
    return log_v, err


def harmonic_halfspace_diag(profile, alpha, n, y, tol=1e-10, spec=DEFAULT_SPEC, inner="auto"):
    """Weighted harmonic kernel R_alpha(x, x) on the half-space at height y."""
    if n < 2:
        raise ValueError("real dimension n must be >= 2")
    if y <= 0.0:
        raise ValueError("height y must be positive")
    log_pref = (
        (2.0 - n) * math.log(2.0)
        - 0.5 * (n - 1.0) * math.log(math.pi)
        - math.lgamma(0.5 * (n - 1.0))
    )
    log_int, err = _halfline_log(profile, alpha, n - 2.0, y, tol, spec, inner)
    return _finish(log_pref + log_int, 0, err, alpha, n, y)


def siegel_holo_diag(profile, alpha, m, s, tol=1e-10, spec=DEFAULT_SPEC, inner="auto"):
    """Weighted holomorphic kernel K_alpha at invariant height s on the Siegel domain."""
    if m < 1:
        raise ValueError("complex dimension m must be >= 1")
    if s <= 0.0:
        raise ValueError("invariant height s must be positive")
    log_pref = (m - 2.0) * math.log(2.0) - m * math.log(math.pi)
    log_int, err = _halfline_log(profile, alpha, m - 1.0, s, tol, spec, inner)
    return _finish(log_pref + log_int, 0, err, alpha, m, s)


def siegel_hessian_det(phi_source, m, t):
    """det of the complex Hessian of phi(Im w - |z|^2), phi = log(1/rho):
    phi''(t)/4 * (-phi'(t))^(m-1)."""
    if callable(phi_source):
        _, d1, d2 = phi_source(t)
    else:
        lr, lr1 = phi_source.log_derivs(t)
        d1, d2 = -lr, -lr1
    return 0.25 * d2 * (-d1) ** (m - 1)


@dataclass(frozen=True)
class BridgeReport:
    lhs: KernelEvaluation
    rhs_log_value: float
    relative_gap: float


def halfspace_siegel_bridge_check(profile, alpha, n, y, tol=1e-10, spec=DEFAULT_SPEC, inner="auto"):
    """Half-space kernel against the constant times the Siegel kernel at
    m = n-1, s = y; the relative gap should vanish for admissible weights."""
    lhs = harmonic_halfspace_diag(profile, alpha, n, y, tol, spec, inner)
    rhs = siegel_holo_diag(profile, alpha, n - 1, y, tol, spec, inner)
    log_const = (
        (5.0 - 2.0 * n) * math.log(2.0)
        + 0.5 * (n - 1.0) * math.log(math.pi)
        - math.lgamma(0.5 * (n - 1.0))
    )
    log_rhs = log_const + rhs.log_value
    gap = abs(math.expm1(lhs.log_value - log_rhs))
    return BridgeReport(lhs, log_rhs, gap)
