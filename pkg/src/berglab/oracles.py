"""Closed-form kernel diagonals and the hypergeometric series they need.

These are the independent truth source the series and quadrature paths are
verified against: the disc/half-plane/complex-ball weighted kernels for the
standard first-order weight, the real-ball and full-space harmonic diagonals
via 2F1/1F1, the power-weight half-space kernel, and the two unweighted
rational formulas.
"""

import math
from dataclasses import dataclass

from .errors import NoConvergence, PoleInC, UnsupportedSelector

_MAX_TERMS = 10**6


def pochhammer(a, k):
    """(a)_k by the recurrence (a)_(k+1) = (a)_k (a+k)."""
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def _is_nonpositive_int(x):
    return x <= 0.0 and x == math.floor(x)


def _sum_scaled(first_term, ratio, tol, max_terms):
    """Sum positive terms given t_(k+1) = t_k * ratio(k), rescaling to avoid
    overflow.  Returns (log of the sum, terms used)."""
    total = first_term
    term = first_term
    scale = 0.0
    k = 0
    settled = 0
    while k < max_terms:
        r = ratio(k)
        term *= r
        total += term
        k += 1
        if total <= 0.0:
            raise NoConvergence("series left the positive-term parameter range")
        if abs(term) <= tol * total:
            settled += 1
            if settled >= 3 and r < 1.0:
                return math.log(total) + scale, k
        else:
            settled = 0
        if total > 1e250:
            adj = math.log(total)
            scale += adj
            rescale = math.exp(-adj)
            total *= rescale
            term *= rescale
    raise NoConvergence(f"hypergeometric series not settled after {max_terms} terms")


def _check_series_length(growth, x, max_terms):
    # Terms grow roughly until k ~ growth * x / (1 - x); refuse hopeless cases
    # before summing (the tolerance tail adds only O(10^2) more terms).
    if x <= 0.0:
        return
    est = growth * x / (1.0 - x) + 400.0
    if est > max_terms:
        raise NoConvergence(
            f"series needs ~{est:.2g} terms, above the {max_terms} cap"
        )


def hyp2f1_log(a, b, c, x, tol=1e-15, max_terms=_MAX_TERMS):
    """log of 2F1(a, b; c; x) by direct series, for x in [0, 1).

    The doubly-degenerate combination b = c = 0 (planar limit of the
    harmonic-ball parameters) uses the limit ratio (b)_k/(c)_k -> 2 for
    k >= 1.
    """
    if not 0.0 <= x < 1.0:
        raise NoConvergence("direct series needs 0 <= x < 1")
    if b == 0.0 and c == 0.0:
        if x == 0.0:
            return 0.0
        log_m = _sum_scaled(1.0, lambda k: (a + k) * x / (k + 1.0), tol, max_terms)[0]
        # 2 * M - 1 with M = sum (a)_k x^k / k! >= 1
        return log_m + math.log(2.0 - math.exp(-log_m))
    if _is_nonpositive_int(c) and not (_is_nonpositive_int(b) and b > c):
        raise PoleInC(f"lower parameter c={c} hits a pole")
    if x == 0.0:
        return 0.0
    _check_series_length(max(abs(a), abs(b)), x, max_terms)

    def ratio(k):
        return (a + k) * (b + k) * x / ((c + k) * (k + 1.0))

    return _sum_scaled(1.0, ratio, tol, max_terms)[0]


def hyp2f1(a, b, c, x, tol=1e-15, max_terms=_MAX_TERMS):
    """2F1(a, b; c; x) by direct series (positive-term parameter range)."""
    return math.exp(hyp2f1_log(a, b, c, x, tol, max_terms))


def hyp1f1_log(a, c, x, tol=1e-15, max_terms=_MAX_TERMS):
    """log of 1F1(a; c; x) by direct series, x >= 0; same c = a = 0 limit."""
    if x < 0.0:
        raise NoConvergence("direct series needs x >= 0")
    if a == 0.0 and c == 0.0:
        if x == 0.0:
            return 0.0
        log_m = _sum_scaled(1.0, lambda k: x / (k + 1.0), tol, max_terms)[0]
        return log_m + math.log(2.0 - math.exp(-log_m))
    if _is_nonpositive_int(c) and not (_is_nonpositive_int(a) and a > c):
        raise PoleInC(f"lower parameter c={c} hits a pole")
    if x == 0.0:
        return 0.0

    def ratio(k):
        return (a + k) * x / ((c + k) * (k + 1.0))

    return _sum_scaled(1.0, ratio, tol, max_terms)[0]


def hyp1f1(a, c, x, tol=1e-15, max_terms=_MAX_TERMS):
    return math.exp(hyp1f1_log(a, c, x, tol, max_terms))


HOLO_GEOMETRIES = ("disc", "halfplane", "complex_ball")
HARM_GEOMETRIES = ("real_ball", "halfspace", "fock")


@dataclass(frozen=True)
class OracleSelector:
    geometry: str
    kind: str
    alpha: float
    dimension: int
    coordinate: float


@dataclass(frozen=True)
class OracleValue:
    value: float
    log_value: float

    @classmethod
    def from_log(cls, log_value):
        return cls(math.exp(log_value) if log_value < 709.0 else math.inf, log_value)


def unweighted_ball_diag(n, t):
    """Rational form of the unweighted harmonic ball kernel on the diagonal."""
    num = (n - 4.0) * t**4 + (8.0 * t - 2.0 * n - 4.0) * t**2 + n
    return math.gamma(0.5 * n) / (2.0 * math.pi ** (0.5 * n)) * num / (1.0 - t) ** (n + 2)


def unweighted_halfspace_diag(n, y):
    """Rational form of the unweighted harmonic half-space kernel, x = y."""
    return 2.0 * math.gamma(0.5 * n) * (n - 1.0) / (math.pi ** (0.5 * n) * (2.0 * y) ** n)


def oracle_holo_diag(sel):
    """Closed-form weighted holomorphic kernel diagonals (first-order weight)."""
    if sel.kind != "holomorphic" or sel.geometry not in HOLO_GEOMETRIES:
        raise UnsupportedSelector(f"no holomorphic closed form for {sel.geometry!r}")
    a = sel.alpha
    if sel.geometry == "disc":
        t = sel.coordinate
        log_v = math.log(a + 1.0) - math.log(math.pi) - (a + 2.0) * math.log1p(-t)
    elif sel.geometry == "halfplane":
        y = sel.coordinate
        log_v = math.log(a + 1.0) - math.log(4.0 * math.pi) - (a + 2.0) * math.log(y)
    else:
        m = sel.dimension
        t = sel.coordinate
        log_v = (
            math.lgamma(a + m + 1.0)
            - math.lgamma(a + 1.0)
            - m * math.log(math.pi)
            - (a + m + 1.0) * math.log1p(-t)
        )
    return OracleValue.from_log(log_v)


def oracle_harm_diag(sel):
    """Closed-form weighted harmonic kernel diagonals.

    real_ball and fock go through the hypergeometric series; halfspace is the
    power-weight formula.  At alpha = 0 the real-ball value is cross-checked
    against the independent rational form.
    """
    if sel.kind != "harmonic" or sel.geometry not in HARM_GEOMETRIES:
        raise UnsupportedSelector(f"no harmonic closed form for {sel.geometry!r}")
    a = sel.alpha
    n = sel.dimension
    if sel.geometry == "real_ball":
        t = sel.coordinate
        log_v = (
            math.lgamma(a + 0.5 * n + 1.0)
            - math.lgamma(a + 1.0)
            - 0.5 * n * math.log(math.pi)
            + hyp2f1_log(a + 0.5 * n + 1.0, n - 2.0, 0.5 * n - 1.0, t)
        )
        if a == 0.0:
            rational = unweighted_ball_diag(n, t)
            if abs(math.exp(log_v) / rational - 1.0) > 1e-10:
                raise AssertionError(
                    "hypergeometric and rational unweighted ball forms disagree"
                )
    elif sel.geometry == "halfspace":
        y = sel.coordinate
        log_v = (
            math.lgamma(n + a)
            + (3.0 - 2.0 * n) * math.log(2.0)
            - 0.5 * (n - 1.0) * math.log(math.pi)
            - math.lgamma(a + 1.0)
            - math.lgamma(0.5 * (n - 1.0))
            - (n + a) * math.log(y)
        )
    else:
        if a <= 0.0:
            raise UnsupportedSelector("full-space kernel needs alpha > 0")
        t = sel.coordinate
        log_v = (
            0.5 * n * (math.log(a) - math.log(math.pi))
            + hyp1f1_log(n - 2.0, 0.5 * n - 1.0, a * t)
        )
    return OracleValue.from_log(log_v)
