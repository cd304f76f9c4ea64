"""Predicted high-power leading terms, the endpoint expansion engine,
origin behavior, and empirical convergence reports.

For a radial weight rho = phi(|x|^2) on the ball the interior prediction is

    alpha^(1-n) rho^alpha R_alpha -> 2 Gamma(n/2) t^(n/2-1)
        / (pi^(n/2) Gamma(n-1)) * (-phi'/phi)^(n-2) * (-t phi'/phi)'

and for a vertical weight on the half-space

    alpha^(1-n) rho^alpha R_alpha -> 2^(3-2n)
        / (pi^((n-1)/2) Gamma((n-1)/2)) * (rho'/rho)^(n-2) * (-rho'/rho)'.

At the origin the scaling switches from alpha^(n-1) to alpha^(n/2) (the
Stokes jump), with leading constant a0 = (-phi'(0)/phi(0))^(n/2).
"""

import math
import warnings
from dataclasses import dataclass, field

from .ball_kernel import harmonic_ball_diag, holomorphic_ball_diag
from .errors import (
    DegenerateGrid,
    DerivativeUnavailable,
    HigherVanishing,
    HypothesisViolation,
    NonpositiveSlope,
    UnsupportedOrder,
)
from .halfspace_kernel import harmonic_halfspace_diag, siegel_hessian_det
from .oracles import OracleSelector, oracle_harm_diag
from .taylor import jet_from_provider
from .weights import (
    RadialWeightProfile,
    check_defining,
    check_radial_psh,
    check_vertical_hypotheses,
)

RICHARDSON_DEPTH_CAP = 4


def radial_hessian_det(profile, m, t):
    """(-phi'/phi)^(m-1) (-t phi'/phi)', the complex Hessian determinant of
    log(1/phi(|z|^2)) in m complex variables."""
    lr, curve = profile.log_ratio_derivs(t)
    return (-lr) ** (m - 1) * (-curve)


def _warn_radial(profile):
    ok = check_radial_psh(profile)
    if profile.support_radius == 1.0:
        ok = ok and check_defining(profile).is_defining
    if not ok:
        warnings.warn(
            "weight fails the interior-asymptotics hypotheses; prediction computed anyway",
            HypothesisViolation,
            stacklevel=3,
        )


def thm2_leading(profile, n, t, check_hypotheses=True):
    """Predicted limit of alpha^(1-n) rho^alpha R_alpha at t = |x|^2 > 0 (ball)."""
    if t <= 0.0:
        raise ValueError("interior prediction needs t > 0; see origin_leading")
    if check_hypotheses:
        _warn_radial(profile)
    lr, curve = profile.log_ratio_derivs(t)
    const = (
        2.0
        * math.gamma(0.5 * n)
        * t ** (0.5 * n - 1.0)
        / (math.pi ** (0.5 * n) * math.gamma(n - 1.0))
    )
    return const * (-lr) ** (n - 2) * (-curve)


def thm3_leading(profile, n, y, check_hypotheses=True):
    """Predicted limit of alpha^(1-n) rho^alpha R_alpha at height y (half-space)."""
    if y <= 0.0:
        raise ValueError("height y must be positive")
    if check_hypotheses and not (check_vertical_hypotheses(profile) and profile.admissible):
        warnings.warn(
            "vertical weight fails the hypotheses (monotonicity/concavity/admissibility); "
            "prediction computed anyway",
            HypothesisViolation,
            stacklevel=2,
        )
    lr, lr1 = profile.log_derivs(y)
    const = 2.0 ** (3 - 2 * n) / (
        math.pi ** (0.5 * (n - 1.0)) * math.gamma(0.5 * (n - 1.0))
    )
    return const * lr ** (n - 2) * (-lr1)


def holo_leading(profile, m, t):
    """Predicted limit of alpha^(-m) pi^m rho^alpha K_alpha: the Hessian
    determinant, radial (ball) or vertical (Siegel) as the profile dictates."""
    if isinstance(profile, RadialWeightProfile):
        return radial_hessian_det(profile, m, t)
    return siegel_hessian_det(profile, m, t)


def thm1_root_gap(kernel_value, alpha, rho_at_x, log_kernel_value=None):
    """|R_alpha(x,x)^(1/alpha) rho(x) - 1|, the gap the root limit drives to 0."""
    if log_kernel_value is None:
        if kernel_value <= 0.0:
            raise ValueError("kernel value must be positive")
        log_kernel_value = math.log(kernel_value)
    return abs(math.expm1((log_kernel_value + alpha * math.log(rho_at_x)) / alpha))


def origin_leading(profile, n):
    """a0 = (-phi'(0)/phi(0))^(n/2), the origin-scaling leading constant."""
    phi0, slope = profile.derivatives(0.0, 1)
    if slope >= -1e-12 * abs(phi0):
        raise HigherVanishing(
            "phi'(0) = 0: higher-order vanishing at the origin is not handled"
        )
    return (-slope / phi0) ** (0.5 * n)


def n2_laplacian_leading(profile, t):
    """Planar (n = 2) form of the interior prediction: the radial Laplacian
    of log(1/phi) over 2 pi, i.e. (4 t h'' + 4 h') / (2 pi), h = log(1/phi)."""
    phi, d1, d2 = profile.derivatives(t, 2)[:3]
    h1 = -d1 / phi
    h2 = -(d2 / phi - (d1 / phi) ** 2)
    return (4.0 * t * h2 + 4.0 * h1) / (2.0 * math.pi)


def gamma_doubling_check(n):
    """Relative gap between the ball and half-space constant factors, equal
    by the Gamma doubling formula."""
    lhs = 2.0 * math.gamma(0.5 * n) / (math.pi ** (0.5 * n) * math.gamma(n - 1.0))
    rhs = 2.0 ** (3 - n) / (math.pi ** (0.5 * (n - 1)) * math.gamma(0.5 * (n - 1)))
    return abs(lhs - rhs) / rhs


def laplace_endpoint_expansion(F, S, b, J):
    """Coefficients e_0..e_J of the endpoint expansion

        integral_a^b F e^(alpha S) ~ e^(alpha S(b)) / (alpha S'(b))
                                     * sum_j e_j alpha^(-j)

    for S increasing with S'(b) > 0: e_j = (-1)^j (L^j F)(b) with the
    integration-by-parts operator L g = (g/S')'.  The alternating sign is
    pinned by the exact linear-phase test integral.
    """
    if J < 0:
        raise ValueError("expansion order J must be >= 0")
    try:
        jet_s = jet_from_provider(S, b, J + 1)
        jet_f = jet_from_provider(F, b, J)
    except UnsupportedOrder as exc:
        raise DerivativeUnavailable(str(exc)) from None
    slope = jet_s.derivative_list()[1]
    if slope <= 0.0:
        raise NonpositiveSlope(f"S'(b) = {slope} must be positive")
    inv_slope = 1.0 / jet_s.deriv()
    coeffs = []
    current = jet_f
    for j in range(J + 1):
        coeffs.append((-1.0) ** j * current.coef[0])
        if j < J:
            current = (current * inv_slope).deriv()
    return coeffs


def laplace_endpoint_value(F, S, b, alpha, J):
    """Evaluate the truncated endpoint expansion at a given alpha."""
    coeffs = laplace_endpoint_expansion(F, S, b, J)
    slope = jet_from_provider(S, b, 1).derivative_list()[1]
    sb = jet_from_provider(S, b, 0).coef[0]
    acc = 0.0
    for j, e in enumerate(coeffs):
        acc += e * alpha ** (-j)
    return math.exp(alpha * sb) / (alpha * slope) * acc


def richardson_fit(alpha_grid, values, depth=None):
    """Coefficients c_0, c_1, ... of the model c_0 + c_1/alpha + c_2/alpha^2
    + ... interpolated through the last depth+1 grid points (elimination in
    the variable 1/alpha); exact when the data follows the model."""
    if len(set(alpha_grid)) != len(alpha_grid):
        raise DegenerateGrid("repeated alpha in extrapolation grid")
    if depth is None:
        depth = min(len(alpha_grid) - 1, RICHARDSON_DEPTH_CAP)
    depth = min(depth, RICHARDSON_DEPTH_CAP)
    if len(alpha_grid) < depth + 1:
        raise DegenerateGrid(f"need at least {depth + 1} grid points")
    xs = [1.0 / a for a in alpha_grid[-(depth + 1) :]]
    ys = list(values[-(depth + 1) :])
    m = len(xs)
    # Newton divided differences, then expansion to monomial coefficients.
    table = list(ys)
    diffs = [table[0]]
    for level in range(1, m):
        for i in range(m - level):
            table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
        diffs.append(table[0])
    poly = [diffs[-1]]
    for i in range(m - 2, -1, -1):
        shifted = [0.0] + poly
        scaled = [-xs[i] * c for c in poly] + [0.0]
        poly = [a + b for a, b in zip(shifted, scaled)]
        poly[0] += diffs[i]
    return poly


@dataclass
class AsymptoticReport:
    """Scaled kernel values against a predicted leading constant over an
    increasing alpha grid, with extrapolated expansion coefficients."""

    alpha_grid: list
    scaled_values: list
    predicted_leading: float
    ratios: list = field(default_factory=list)
    fitted_coefficients: list = field(default_factory=list)
    converged: bool = False
    achieved_gap: float = math.inf

    @classmethod
    def build(cls, alphas, scaled_values, prediction, fit_depth=None):
        ratios = [v / prediction for v in scaled_values]
        gaps = [abs(r - 1.0) for r in ratios]
        report = cls(
            alpha_grid=list(alphas),
            scaled_values=list(scaled_values),
            predicted_leading=prediction,
            ratios=ratios,
            fitted_coefficients=richardson_fit(alphas, scaled_values, fit_depth)
            if len(alphas) >= 2
            else [],
            converged=all(b < a for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 0.5,
            achieved_gap=gaps[-1],
        )
        return report


def _log_scaled_ball(profile, alpha, n, t, tol):
    ev = harmonic_ball_diag(profile, alpha, n, t, tol)
    log_rho = math.log(profile.value(t))
    return ev.log_value + alpha * log_rho + (1.0 - n) * math.log(alpha)


def _log_scaled_ball_oracle(profile, alpha, n, t):
    factors = profile.factors
    if len(factors) == 1 and factors[0].kind == 1 and factors[0].params == (1.0,):
        sel = OracleSelector("real_ball", "harmonic", float(alpha), n, t)
    elif len(factors) == 1 and factors[0].kind == 2 and factors[0].params == (1.0,):
        sel = OracleSelector("fock", "harmonic", float(alpha), n, t)
    else:
        raise ValueError("oracle path exists only for the first-order and gaussian weights")
    log_rho = math.log(profile.value(t))
    return oracle_harm_diag(sel).log_value + alpha * log_rho + (1.0 - n) * math.log(alpha)


def thm2_report(profile, n, t, alphas, tol=1e-10, use_oracle=False, fit_depth=None):
    """Interior ball convergence report: scaled kernels against thm2_leading."""
    scaled = []
    for a in alphas:
        lv = (
            _log_scaled_ball_oracle(profile, a, n, t)
            if use_oracle
            else _log_scaled_ball(profile, a, n, t, tol)
        )
        scaled.append(math.exp(lv))
    return AsymptoticReport.build(alphas, scaled, thm2_leading(profile, n, t), fit_depth)


def thm3_report(profile, n, y, alphas, tol=1e-10, inner="auto", fit_depth=None):
    """Half-space convergence report: scaled kernels against thm3_leading."""
    scaled = []
    for a in alphas:
        ev = harmonic_halfspace_diag(profile, a, n, y, tol, inner=inner)
        log_rho = math.log(profile.value(y))
        scaled.append(math.exp(ev.log_value + a * log_rho + (1.0 - n) * math.log(a)))
    return AsymptoticReport.build(alphas, scaled, thm3_leading(profile, n, y), fit_depth)


def holo_report(profile, m, t, alphas, tol=1e-10, fit_depth=None):
    """Ball holomorphic report: alpha^(-m) pi^m rho^alpha K_alpha vs the
    Hessian determinant."""
    scaled = []
    for a in alphas:
        ev = holomorphic_ball_diag(profile, a, m, t, tol)
        log_rho = math.log(profile.value(t))
        scaled.append(
            math.exp(ev.log_value + a * log_rho + m * (math.log(math.pi) - math.log(a)))
        )
    return AsymptoticReport.build(alphas, scaled, holo_leading(profile, m, t), fit_depth)


def origin_report(profile, n, alphas, tol=1e-10, fit_depth=None):
    """Origin report: pi^(n/2) alpha^(-n/2) phi(0)^alpha R_alpha(0) vs a0."""
    scaled = []
    for a in alphas:
        ev = harmonic_ball_diag(profile, a, n, 0.0, tol)
        log_rho = math.log(profile.value(0.0))
        scaled.append(
            math.exp(
                ev.log_value + a * log_rho + 0.5 * n * (math.log(math.pi) - math.log(a))
            )
        )
    return AsymptoticReport.build(alphas, scaled, origin_leading(profile, n), fit_depth)


def thm1_report(profile, n, t, alphas, tol=1e-10):
    """Root-gap report: the gap |(rho^alpha R_alpha)^(1/alpha) - 1| against
    the 2 (n-1) log(alpha)/alpha decay envelope."""
    gaps = []
    for a in alphas:
        ev = harmonic_ball_diag(profile, a, n, t, tol)
        gaps.append(thm1_root_gap(ev.value, a, profile.value(t), ev.log_value))
    envelope = [2.0 * (n - 1) * math.log(a) / a for a in alphas]
    report = AsymptoticReport(
        alpha_grid=list(alphas),
        scaled_values=gaps,
        predicted_leading=0.0,
        ratios=[g / e for g, e in zip(gaps, envelope)],
        fitted_coefficients=[],
        converged=all(b < a for a, b in zip(gaps, gaps[1:]))
        and all(r <= 1.0 for r in [g / e for g, e in zip(gaps, envelope)]),
        achieved_gap=gaps[-1],
    )
    return report
