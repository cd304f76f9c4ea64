"""Acceptance suites: every verification criterion as a named pass/fail check.

Each suite returns CheckResult rows; the CLI `verify` subcommand prints them
and exits nonzero on any failure, and tests/test_acceptance.py asserts them
one criterion at a time.  Tolerances are fixed here, not calibrated.
"""

import io
import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from . import cli
from .asymptotics import (
    gamma_doubling_check,
    laplace_endpoint_expansion,
    n2_laplacian_leading,
    origin_report,
    richardson_fit,
    thm1_report,
    thm2_leading,
    thm2_report,
    thm3_leading,
    thm3_report,
)
from .ball_kernel import harmonic_ball_diag
from .errors import HypothesisViolation
from .halfspace_kernel import halfspace_siegel_bridge_check, harmonic_halfspace_diag
from .oracles import OracleSelector, oracle_harm_diag, unweighted_ball_diag
from .quadrature import moment_table, scaled_profile
from .series import (
    TruncatedPowerSeries,
    harm_coeff_transform,
    harm_transform_by_calculus,
    holo_coeff_transform,
    holo_transform_by_calculus,
)
from .taylor import Smooth
from .weights import parse_weight

import warnings


@dataclass(frozen=True)
class CheckResult:
    name: str
    got: float
    want: float
    tol: float
    passed: bool


def _rel_check(name, log_got, log_want, tol):
    rel = abs(math.expm1(log_got - log_want))
    return CheckResult(name, rel, 0.0, tol, rel <= tol)


def _bound_check(name, got, bound):
    return CheckResult(name, got, bound, 0.0, got <= bound)


def suite_ball_oracle():
    """Series kernel vs the hypergeometric ball oracle; rational form at alpha=0."""
    phi = parse_weight("power:1")
    out = []
    for n in (3, 4, 5):
        for alpha in (0, 1, 5, 10):
            for t in (0.0, 0.25, 0.49):
                ev = harmonic_ball_diag(phi, alpha, n, t, tol=1e-11)
                oracle = oracle_harm_diag(
                    OracleSelector("real_ball", "harmonic", float(alpha), n, t)
                )
                out.append(
                    _rel_check(
                        f"ball-oracle/n={n},a={alpha},t={t}",
                        ev.log_value,
                        oracle.log_value,
                        1e-8,
                    )
                )
                if alpha == 0:
                    out.append(
                        _rel_check(
                            f"ball-rational/n={n},t={t}",
                            ev.log_value,
                            math.log(unweighted_ball_diag(n, t)),
                            1e-10,
                        )
                    )
    return out


def suite_fock_oracle():
    """Full-space series kernel vs the confluent hypergeometric oracle."""
    gauss = parse_weight("exp:1")
    out = []
    for n in (3, 4):
        for alpha in (1, 4):
            for t in (0.0, 0.5, 1.0):
                ev = harmonic_ball_diag(gauss, alpha, n, t, tol=1e-11)
                oracle = oracle_harm_diag(
                    OracleSelector("fock", "harmonic", float(alpha), n, t)
                )
                out.append(
                    _rel_check(
                        f"fock-oracle/n={n},a={alpha},t={t}",
                        ev.log_value,
                        oracle.log_value,
                        1e-8,
                    )
                )
    return out


def suite_halfspace_oracle():
    """Half-space quadrature vs the power-weight closed form, both inner paths."""
    lin = parse_weight("vert-power:1")
    out = []
    for n in (2, 3, 4):
        for alpha in (0, 1, 3):
            for y in (0.5, 1.0, 2.0):
                oracle = oracle_harm_diag(
                    OracleSelector("halfspace", "harmonic", float(alpha), n, y)
                )
                closed = harmonic_halfspace_diag(lin, alpha, n, y, tol=1e-10)
                out.append(
                    _rel_check(
                        f"halfspace-closed/n={n},a={alpha},y={y}",
                        closed.log_value,
                        oracle.log_value,
                        1e-8,
                    )
                )
                numeric = harmonic_halfspace_diag(
                    lin, alpha, n, y, tol=1e-6, inner="numeric"
                )
                out.append(
                    _rel_check(
                        f"halfspace-numeric/n={n},a={alpha},y={y}",
                        numeric.log_value,
                        oracle.log_value,
                        1e-4,
                    )
                )
    return out


def suite_thm2_trend():
    """Interior ball convergence for a second-order polynomial weight with no
    closed form in the loop."""
    phi = parse_weight("poly:1,0,-1")
    report = thm2_report(phi, 3, 0.25, [40.0, 80.0, 160.0], tol=1e-10)
    gaps = [abs(r - 1.0) for r in report.ratios]
    out = [_bound_check("thm2-trend/gap-at-160", gaps[-1], 0.10)]
    for a, lo, hi in ((40, 0, 1), (80, 1, 2)):
        out.append(
            _bound_check(f"thm2-trend/halving-{a}to{2*a}", gaps[hi] / gaps[lo], 0.7)
        )
    return out


def suite_thm2_scale():
    """Large-alpha interior convergence through the hypergeometric oracle."""
    phi = parse_weight("power:1")
    alphas = [125.0, 250.0, 500.0, 1000.0]
    report = thm2_report(phi, 3, 0.25, alphas, use_oracle=True)
    out = [
        _bound_check("thm2-scale/gap-at-1000", abs(report.ratios[-1] - 1.0), 0.02)
    ]
    fit = richardson_fit(alphas, report.scaled_values, depth=3)
    rel = abs(fit[0] / thm2_leading(phi, 3, 0.25) - 1.0)
    out.append(_bound_check("thm2-scale/richardson-c0", rel, 0.01))
    return out


def suite_thm3_trend():
    """Half-space convergence: exact Gamma-ratio trend for the linear weight,
    quadrature trend for a rational weight with no closed transform."""
    lin = parse_weight("vert-power:1")
    n = 3
    alphas = [50.0, 100.0, 200.0, 400.0, 500.0]
    report = thm3_report(lin, n, 1.0, alphas, tol=1e-10)
    out = []
    gamma_ratio = [
        math.exp(math.lgamma(n + a) - math.lgamma(a + 1.0) - (n - 1.0) * math.log(a))
        for a in alphas
    ]
    agree = max(
        abs(r / g - 1.0) for r, g in zip(report.ratios, gamma_ratio)
    )
    out.append(_bound_check("thm3-trend/matches-gamma-ratio", agree, 1e-6))
    monotone = all(b < a for a, b in zip(report.ratios, report.ratios[1:]))
    out.append(
        CheckResult("thm3-trend/monotone", float(monotone), 1.0, 0.0, monotone)
    )
    out.append(
        _bound_check("thm3-trend/gap-at-500", abs(report.ratios[-1] - 1.0), 0.02)
    )
    mob = parse_weight("vert-power:1*vert-invpow:1")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisViolation)
        mob_report = thm3_report(mob, n, 1.0, [40.0, 80.0, 160.0], tol=1e-8, inner="numeric")
    out.append(
        _bound_check(
            "thm3-trend/rational-gap-at-160", abs(mob_report.ratios[-1] - 1.0), 0.10
        )
    )
    return out


def suite_thm1_rootgap():
    """Root limit: gap decreasing and below the 2(n-1) log(alpha)/alpha envelope."""
    phi = parse_weight("power:1")
    n = 3
    report = thm1_report(phi, n, 0.25, [50.0, 100.0, 200.0], tol=1e-10)
    out = []
    for a, gap in zip(report.alpha_grid, report.scaled_values):
        envelope = 2.0 * (n - 1) * math.log(a) / a
        out.append(_bound_check(f"thm1-rootgap/envelope-a={a:g}", gap, envelope))
    gaps = report.scaled_values
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    out.append(
        CheckResult("thm1-rootgap/monotone", float(monotone), 1.0, 0.0, monotone)
    )
    return out


def suite_stokes():
    """Origin scaling alpha^(n/2) with a0 = 1, while the interior alpha^(n-1)
    normalization drifts from any positive limit at the origin."""
    phi = parse_weight("power:1")
    n = 3
    report = origin_report(phi, n, [50.0, 100.0, 200.0], tol=1e-10)
    out = [
        _bound_check("stokes/origin-gap-at-200", abs(report.ratios[-1] - 1.0), 0.05)
    ]
    # Interior normalization at t=0: alpha^(1-n) phi^alpha R_alpha ~ alpha^(1-n/2),
    # so its mismatch from any positive limit grows ~ sqrt(2) per doubling.
    mismatch = []
    for a in (100.0, 200.0):
        ev = harmonic_ball_diag(phi, a, n, 0.0, tol=1e-10)
        log_scaled = ev.log_value + (1.0 - n) * math.log(a)
        mismatch.append(math.exp(-log_scaled))
    growth = mismatch[1] / mismatch[0]
    out.append(
        CheckResult("stokes/interior-normalization-diverges", growth, 1.3, 0.0, growth >= 1.3)
    )
    return out


def _random_poly_series(rng, exact):
    degree = rng.randint(0, 12)
    coeffs = [rng.randint(-9, 9) for _ in range(degree + 1)]
    if exact:
        return TruncatedPowerSeries(tuple(Fraction(c) for c in coeffs))
    return TruncatedPowerSeries(tuple(float(c) for c in coeffs))


def suite_identities():
    """Dual-path coefficient transforms, the Gamma doubling constant, the
    half-space/Siegel bridge, and the planar consistency of the predictions."""
    rng = random.Random(20240817)
    failures = 0
    for _ in range(50):
        series = _random_poly_series(rng, exact=True)
        for m in (1, 2, 3, 4):
            if holo_coeff_transform(series, m) != holo_transform_by_calculus(series, m):
                failures += 1
        for n in (3, 4, 5, 6):
            if harm_coeff_transform(series, n) != harm_transform_by_calculus(series, n):
                failures += 1
    out = [
        CheckResult("identities/transform-dual-path", float(failures), 0.0, 0.0, failures == 0)
    ]
    for n in range(2, 9):
        out.append(_bound_check(f"identities/doubling-n={n}", gamma_doubling_check(n), 1e-13))
    bridge_cases = [
        ("vert-power:0", 1.0, 2),
        ("vert-power:1", 0.0, 3),
        ("vert-power:1", 2.0, 4),
        ("vert-power:2", 1.0, 3),
        ("vert-expdecay", 1.0, 3),
        ("vert-power:1*vert-invpow:1", 1.0, 3),
    ]
    for spec_text, alpha, n in bridge_cases:
        profile = parse_weight(spec_text)
        y = 1.0 if n != 4 else 0.5
        inner = "auto" if profile.power_decay_exponents() is not None else "numeric"
        report = halfspace_siegel_bridge_check(profile, alpha, n, y, tol=1e-10, inner=inner)
        out.append(
            _bound_check(
                f"identities/bridge-{spec_text}-a={alpha:g}-n={n}",
                report.relative_gap,
                1e-8,
            )
        )
    rng = random.Random(3)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisViolation)
        for _ in range(20):
            profile = parse_weight(
                rng.choice(["power:1", "poly:1,0,-1", "exp:0.7", "poly:2,-1", "power:1*poly:1,0.5"])
            )
            t = rng.uniform(0.05, 0.8)
            a = thm2_leading(profile, 2, t, check_hypotheses=False)
            b = n2_laplacian_leading(profile, t)
            worst = max(worst, abs(a / b - 1.0))
    out.append(_bound_check("identities/n2-consistency", worst, 1e-12))
    return out


def suite_laplace_expansion():
    """Endpoint expansion against the exact linear-phase integral.

    The J=1 truncation error of integral_0^1 x e^(alpha x) dx is formed in
    the exact {e^alpha, 1} coefficient basis (the expansion coefficients are
    integers), so the alpha^2 e^(-alpha) scaling is evaluated without
    catastrophic cancellation.
    """
    x = Smooth.x()
    coeffs = laplace_endpoint_expansion(x, x, 1.0, 1)
    out = [
        CheckResult(
            "laplace-expansion/sign-e1", coeffs[1], -1.0, 0.0, coeffs[1] == -1.0
        ),
        CheckResult(
            "laplace-expansion/lead-e0", coeffs[0], 1.0, 0.0, coeffs[0] == 1.0
        ),
    ]
    scaled_errors = []
    for alpha in (20, 40, 80):
        # exact:      e^a (1/a - 1/a^2) + 1/a^2     (antiderivative)
        # expansion:  e^a (e0/a + e1/a^2)
        exact_coef = Fraction(1, alpha) - Fraction(1, alpha**2)
        exact_const = Fraction(1, alpha**2)
        expansion_coef = Fraction(int(coeffs[0]), alpha) + Fraction(int(coeffs[1]), alpha**2)
        diff_coef = exact_coef - expansion_coef
        scaled = abs(float(diff_coef) * alpha**2 + float(exact_const) * alpha**2 * math.exp(-alpha))
        scaled_errors.append(scaled)
    out.append(_bound_check("laplace-expansion/scaled-error-bounded", max(scaled_errors), 1.0))
    decreasing = all(b < a for a, b in zip(scaled_errors, scaled_errors[1:]))
    out.append(
        CheckResult(
            "laplace-expansion/scaled-error-decreasing",
            float(decreasing),
            1.0,
            0.0,
            decreasing,
        )
    )
    return out


def _csv_sweep(threads):
    saved = os.environ.get("BERGLAB_THREADS")
    os.environ["BERGLAB_THREADS"] = str(threads)
    try:
        config = cli.parse_config(
            [
                "sweep",
                "--theorem",
                "2",
                "--weight",
                "power:1",
                "--n",
                "3",
                "--t",
                "0.25",
                "--alphas",
                "10,20,40",
                "--tol",
                "1e-9",
            ]
        )
        buf = io.StringIO()
        cli._run_sweep(config, buf, with_value=True)
        return buf.getvalue()
    finally:
        if saved is None:
            del os.environ["BERGLAB_THREADS"]
        else:
            os.environ["BERGLAB_THREADS"] = saved


def suite_properties():
    """Moment-table invariants, weight-scaling invariance, monotonicity in t,
    and thread-count determinism of the CSV output."""
    out = []
    cases = [
        ("power:1", 5.0, 40),
        ("poly:1,0,-1", 12.0, 30),
        ("exp:1", 3.0, 30),
        ("power:1*poly:1,0.5", 7.0, 25),
    ]
    for spec_text, alpha, k_max in cases:
        profile = parse_weight(spec_text)
        table = moment_table(profile, alpha, k_max)
        ok = table.validate()
        out.append(
            CheckResult(
                f"properties/moment-invariants-{spec_text}", float(ok), 1.0, 0.0, ok
            )
        )
    phi = parse_weight("power:1")
    doubled = scaled_profile(phi, 2.0)
    for alpha in (1.0, 10.0):
        base = harmonic_ball_diag(phi, alpha, 3, 0.25, tol=1e-11)
        scaled = harmonic_ball_diag(doubled, alpha, 3, 0.25, tol=1e-11)
        # (c phi)^alpha R^(c phi) == phi^alpha R^(phi)
        log_lhs = alpha * math.log(2.0 * phi.value(0.25)) + scaled.log_value
        log_rhs = alpha * math.log(phi.value(0.25)) + base.log_value
        out.append(_rel_check(f"properties/weight-scaling-a={alpha:g}", log_lhs, log_rhs, 1e-9))
    values = [
        harmonic_ball_diag(phi, 3.0, 3, t, tol=1e-11).value
        for t in (0.0, 0.1, 0.2, 0.3, 0.4, 0.45)
    ]
    monotone = all(b > a for a, b in zip(values, values[1:]))
    out.append(
        CheckResult("properties/kernel-monotone-in-t", float(monotone), 1.0, 0.0, monotone)
    )
    csv_one = _csv_sweep(1)
    csv_four = _csv_sweep(4)
    identical = csv_one == csv_four
    out.append(
        CheckResult(
            "properties/deterministic-csv-threads", float(identical), 1.0, 0.0, identical
        )
    )
    return out


SUITES = {
    "ball-oracle": suite_ball_oracle,
    "fock-oracle": suite_fock_oracle,
    "halfspace-oracle": suite_halfspace_oracle,
    "thm2-trend": suite_thm2_trend,
    "thm2-scale": suite_thm2_scale,
    "thm3-trend": suite_thm3_trend,
    "thm1-rootgap": suite_thm1_rootgap,
    "stokes": suite_stokes,
    "identities": suite_identities,
    "laplace-expansion": suite_laplace_expansion,
    "properties": suite_properties,
}


def run_suite(name):
    """Checks for one suite, or every suite in order for 'all'."""
    if name == "all":
        results = []
        for suite in SUITES.values():
            results.extend(suite())
        return results
    return SUITES[name]()
