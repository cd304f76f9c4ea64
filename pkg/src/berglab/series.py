"""Truncated power series, spherical-harmonic dimensions, and the
coefficient transforms linking harmonic and holomorphic kernel series.

The two transforms have dual implementations - multiply coefficients by the
known factors, or shift by a power of t and differentiate - kept permanently
as a cross-check because the interior asymptotics rest on exactly these
identities.  With int/Fraction coefficients both paths are exact.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoDecay


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """Coefficients c_0..c_K; exact if the entries are int/Fraction."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise ValueError("series needs at least one coefficient")

    @property
    def truncation_order(self):
        return len(self.coefficients) - 1

    def differentiate(self):
        c = self.coefficients
        if len(c) == 1:
            return TruncatedPowerSeries((0 * c[0],))
        return TruncatedPowerSeries(tuple((i + 1) * c[i + 1] for i in range(len(c) - 1)))

    def shift(self, j):
        """Multiply by t^j."""
        zero = 0 * self.coefficients[0]
        return TruncatedPowerSeries((zero,) * j + self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        pad = lambda c: c + (0,) * (n - len(c))
        return pad(a) == pad(b)

    def __hash__(self):
        return hash(self.coefficients)


def zonal_dimension(k, n):
    """Dimension of the degree-k spherical harmonics in n variables.

    (n+k-3)! (n+2k-2) / (k! (n-2)!) for n >= 3; the n = 2 values are the
    limit of the formula (1, then 2 for k >= 1), and n = 1 follows the
    classical convention so the addition recurrence closes.
    """
    if k < 0:
        return 0
    if n == 1:
        return 1 if k <= 1 else 0
    if n == 2:
        return 1 if k == 0 else 2
    if k == 0:
        return 1
    return math.factorial(n + k - 3) * (n + 2 * k - 2) // (math.factorial(k) * math.factorial(n - 2))


@dataclass(frozen=True)
class SeriesSum:
    value: float
    tail_bound: float
    terms_used: int


_DECAY_WINDOW = 10


def series_eval_with_tail(series, t, tol=1e-12):
    """Partial sum with a certified geometric tail bound.

    Once the term ratio stays below 1 for 10 consecutive terms, the tail is
    bounded by |last term| q/(1-q) with q the largest ratio in that window,
    and summation stops when the bound drops under tol times the partial
    sum.  Exhausting the coefficients is exact (zero tail) unless the terms
    were still growing, which raises NoDecay.
    """
    coeffs = series.coefficients
    last = len(coeffs) - 1
    while last > 0 and coeffs[last] == 0:
        last -= 1
    total = 0.0
    prev_term = None
    ratio = None
    q_window = []
    for k in range(last + 1):
        term = float(coeffs[k]) * t**k
        total += term
        if prev_term is not None and prev_term != 0.0:
            ratio = abs(term) / abs(prev_term)
            if ratio < 1.0:
                q_window.append(ratio)
                q_window = q_window[-_DECAY_WINDOW:]
            else:
                q_window = []
        if len(q_window) >= _DECAY_WINDOW:
            q = max(q_window)
            tail = abs(term) * q / (1.0 - q)
            if tail <= tol * abs(total):
                return SeriesSum(total, tail, k + 1)
        prev_term = term
    if ratio is not None and ratio >= 1.0:
        raise NoDecay("terms were still growing when the series ran out")
    if len(q_window) >= _DECAY_WINDOW:
        q = max(q_window)
        return SeriesSum(total, abs(prev_term) * q / (1.0 - q), last + 1)
    return SeriesSum(total, 0.0, last + 1)


def _exact_div(x, d):
    if isinstance(x, (int, Fraction)):
        return Fraction(x, d) if not isinstance(x, Fraction) else x / d
    return x / d


def rising_factor(k, m):
    """(k+m-1)! / k! as an exact integer."""
    out = 1
    for i in range(k + 1, k + m):
        out *= i
    return out


def holo_coeff_transform(series, m):
    """Coefficients (k+m-1)!/k! c_k, the holomorphic-kernel multiplier."""
    if m < 1:
        raise ValueError("complex dimension m must be >= 1")
    return TruncatedPowerSeries(
        tuple(rising_factor(k, m) * c for k, c in enumerate(series.coefficients))
    )


def holo_transform_by_calculus(series, m):
    """Same transform computed as the (m-1)-th derivative of t^(m-1) F(t)."""
    if m < 1:
        raise ValueError("complex dimension m must be >= 1")
    out = series.shift(m - 1)
    for _ in range(m - 1):
        out = out.differentiate()
    return out


def harm_coeff_transform(series, n):
    """Coefficients N_{k,n} c_k, the harmonic-kernel multiplier."""
    if n < 2:
        raise ValueError("real dimension n must be >= 2")
    return TruncatedPowerSeries(
        tuple(zonal_dimension(k, n) * c for k, c in enumerate(series.coefficients))
    )


def harm_transform_by_calculus(series, n):
    """[(t^(n-2) F)^(n-2) + t (t^(n-3) F)^(n-2)] / (n-2)! for n >= 3."""
    if n < 3:
        raise ValueError("calculus route needs n >= 3; n = 2 multiplies directly")
    first = series.shift(n - 2)
    second = series.shift(n - 3)
    for _ in range(n - 2):
        first = first.differentiate()
        second = second.differentiate()
    second = second.shift(1)
    na = len(first.coefficients)
    nb = len(second.coefficients)
    width = max(na, nb)
    fact = math.factorial(n - 2)
    coeffs = []
    for i in range(width):
        a = first.coefficients[i] if i < na else 0
        b = second.coefficients[i] if i < nb else 0
        coeffs.append(_exact_div(a + b, fact))
    return TruncatedPowerSeries(tuple(coeffs))
