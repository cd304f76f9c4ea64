"""Radial and vertical weight profiles with closed-form derivatives.

A radial profile represents phi(t) with rho(x) = phi(|x|^2) on the ball
(support [0, 1)) or the full space (support [0, inf)); a vertical profile
represents rho(y) on (0, inf) for the upper half-space.  Profiles are
products of primitive factors, each with exact derivatives, so hypothesis
checks never rely on numerical differentiation.
"""

import math
from dataclasses import dataclass

from .errors import OutOfSupport, ParseError, UnsupportedOrder

MAX_DERIVATIVE_ORDER = 4

# Factor kind tags shared with the numeric core descriptors.
RADIAL_POLY, RADIAL_POWER, RADIAL_EXP = 0, 1, 2
VERT_POWER, VERT_EXPDECAY, VERT_INVPOW = 0, 1, 2

_POSITIVITY_GRID_SIZE = 64
_PSH_COLLAR = 1e-3
_DEFAULT_GRID_SIZE = 64
_DEFAULT_INFINITE_SPAN = 16.0


def chebyshev_grid(lo, hi, n=_DEFAULT_GRID_SIZE):
    """Chebyshev nodes mapped to the open interval (lo, hi)."""
    return [
        lo + (hi - lo) * 0.5 * (1.0 - math.cos(math.pi * (2 * i + 1) / (2 * n)))
        for i in range(n)
    ]


def _leibniz(a, b, order):
    """Derivatives of a product from derivative lists of the factors."""
    out = []
    for j in range(order + 1):
        s = 0.0
        for i in range(j + 1):
            s += math.comb(j, i) * a[i] * b[j - i]
        out.append(s)
    return out


def _poly_derivs(coeffs, t, order):
    out = []
    cur = list(coeffs)
    for _ in range(order + 1):
        acc = 0.0
        for c in reversed(cur):
            acc = acc * t + c
        out.append(acc)
        cur = [j * c for j, c in enumerate(cur)][1:]
    return out


def _power_derivs(p, t, order):
    # d^j/dt^j (1-t)^p = (-1)^j p(p-1)...(p-j+1) (1-t)^(p-j)
    base = 1.0 - t
    out = []
    coef = 1.0
    for j in range(order + 1):
        sign = -1.0 if j % 2 else 1.0
        if coef == 0.0:
            out.append(0.0)
        elif base > 0.0:
            out.append(sign * coef * base ** (p - j))
        elif p - j > 0.0:
            out.append(0.0)
        elif p - j == 0.0:
            out.append(sign * coef)
        else:
            out.append(math.copysign(math.inf, sign * coef))
        coef *= p - j
    return out


def _exp_derivs(beta, t, order):
    v = math.exp(-beta * t)
    return [v * (-beta) ** j for j in range(order + 1)]


def _vert_power_derivs(p, y, order):
    # d^j/dy^j y^p for y > 0
    out = []
    coef = 1.0
    for j in range(order + 1):
        out.append(coef * y ** (p - j) if coef != 0.0 else 0.0)
        coef *= p - j
    return out


def _vert_invpow_derivs(q, y, order):
    base = 1.0 + y
    out = []
    coef = 1.0
    for j in range(order + 1):
        out.append(coef * base ** (-q - j))
        coef *= -q - j
    return out


@dataclass(frozen=True)
class _Factor:
    kind: int
    params: tuple


def _factor_derivs_radial(factor, t, order):
    if factor.kind == RADIAL_POLY:
        return _poly_derivs(factor.params, t, order)
    if factor.kind == RADIAL_POWER:
        return _power_derivs(factor.params[0], t, order)
    return _exp_derivs(factor.params[0], t, order)


def _factor_derivs_vertical(factor, y, order):
    if factor.kind == VERT_POWER:
        return _vert_power_derivs(factor.params[0], y, order)
    if factor.kind == VERT_EXPDECAY:
        return _exp_derivs(factor.params[0], y, order)
    return _vert_invpow_derivs(factor.params[0], y, order)


@dataclass(frozen=True)
class RadialWeightProfile:
    """Product of primitive radial factors phi(t) on [0, T)."""

    factors: tuple

    @classmethod
    def polynomial(cls, coeffs):
        coeffs = tuple(float(c) for c in coeffs)
        if not coeffs:
            raise ParseError("polynomial weight needs at least one coefficient")
        prof = cls((_Factor(RADIAL_POLY, coeffs),))
        prof._check_positive()
        return prof

    @classmethod
    def power(cls, p):
        if p <= 0:
            raise ParseError("power weight exponent must be positive")
        return cls((_Factor(RADIAL_POWER, (float(p),)),))

    @classmethod
    def exponential(cls, beta):
        if beta <= 0:
            raise ParseError("exponential weight rate must be positive")
        return cls((_Factor(RADIAL_EXP, (float(beta),)),))

    def __mul__(self, other):
        if not isinstance(other, RadialWeightProfile):
            return NotImplemented
        return RadialWeightProfile(self.factors + other.factors)

    @property
    def support_radius(self):
        if all(f.kind == RADIAL_EXP for f in self.factors):
            return math.inf
        return 1.0

    def _check_positive(self):
        for t in chebyshev_grid(0.0, 1.0, _POSITIVITY_GRID_SIZE):
            if self._value_unchecked(t) <= 0.0:
                raise ParseError(f"weight is not positive at t={t:.6f}")

    def _value_unchecked(self, t):
        v = 1.0
        for f in self.factors:
            v *= _factor_derivs_radial(f, t, 0)[0]
        return v

    def derivatives(self, t, order=MAX_DERIVATIVE_ORDER):
        """phi(t), phi'(t), ... up to the requested order, all closed form."""
        if order > MAX_DERIVATIVE_ORDER:
            raise UnsupportedOrder(f"order {order} > {MAX_DERIVATIVE_ORDER}")
        if t < 0.0 or t >= self.support_radius:
            raise OutOfSupport(f"t={t} outside [0, {self.support_radius})")
        return self._derivatives_unchecked(t, order)

    def _derivatives_unchecked(self, t, order):
        acc = _factor_derivs_radial(self.factors[0], t, order)
        for f in self.factors[1:]:
            acc = _leibniz(acc, _factor_derivs_radial(f, t, order), order)
        return acc

    def value(self, t):
        return self.derivatives(t, 0)[0]

    def log_ratio_derivs(self, t):
        """(phi'/phi, (t phi'/phi)') at t, from closed-form derivatives."""
        phi, d1, d2 = self.derivatives(t, 2)[:3]
        lr = d1 / phi
        return lr, (d1 + t * d2) / phi - t * lr * lr

    def descriptor(self):
        """Flattened (codes, offsets, params) consumed by the numeric core."""
        codes, offs, params = [], [], []
        for f in self.factors:
            codes.append(f.kind)
            offs.append(len(params))
            if f.kind == RADIAL_POLY:
                params.append(float(len(f.params)))
                params.extend(f.params)
            else:
                params.extend(f.params)
        return tuple(codes), tuple(offs), tuple(params)


@dataclass(frozen=True)
class VerticalWeightProfile:
    """Product of primitive vertical factors rho(y) on (0, inf)."""

    factors: tuple

    @classmethod
    def power(cls, p):
        if p < 0:
            raise ParseError("vertical power exponent must be >= 0")
        return cls((_Factor(VERT_POWER, (float(p),)),))

    @classmethod
    def exponential_decay(cls, rate=1.0):
        if rate <= 0:
            raise ParseError("decay rate must be positive")
        return cls((_Factor(VERT_EXPDECAY, (float(rate),)),))

    @classmethod
    def inverse_power(cls, q):
        if q <= 0:
            raise ParseError("inverse-power exponent must be positive")
        return cls((_Factor(VERT_INVPOW, (float(q),)),))

    def __mul__(self, other):
        if not isinstance(other, VerticalWeightProfile):
            return NotImplemented
        return VerticalWeightProfile(self.factors + other.factors)

    @property
    def admissible(self):
        """True when the exp(ty)-moments diverge for every t > 0.

        Exponential decay is the one supported family that fails this; it is
        still accepted for kernel computation, with a warning flag upstream.
        """
        return all(f.kind != VERT_EXPDECAY for f in self.factors)

    def derivatives(self, y, order=2):
        if order > MAX_DERIVATIVE_ORDER:
            raise UnsupportedOrder(f"order {order} > {MAX_DERIVATIVE_ORDER}")
        if y <= 0.0:
            raise OutOfSupport(f"y={y} outside (0, inf)")
        acc = _factor_derivs_vertical(self.factors[0], y, order)
        for f in self.factors[1:]:
            acc = _leibniz(acc, _factor_derivs_vertical(f, y, order), order)
        return acc

    def value(self, y):
        return self.derivatives(y, 0)[0]

    def log_derivs(self, y):
        """(rho'/rho, (rho'/rho)') at y."""
        rho, d1, d2 = self.derivatives(y, 2)
        lr = d1 / rho
        return lr, d2 / rho - lr * lr

    def power_decay_exponents(self):
        """(p, c) when rho(y) = y^p e^{-c y}, else None (no Laplace closed form)."""
        p = c = 0.0
        for f in self.factors:
            if f.kind == VERT_POWER:
                p += f.params[0]
            elif f.kind == VERT_EXPDECAY:
                c += f.params[0]
            else:
                return None
        return p, c

    def descriptor(self):
        codes, offs, params = [], [], []
        for f in self.factors:
            codes.append(f.kind)
            offs.append(len(params))
            params.extend(f.params)
        return tuple(codes), tuple(offs), tuple(params)


def eval_with_derivatives(profile, t, order):
    """Closed-form value and derivatives [phi(t), phi'(t), ...] of a profile."""
    if order > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrder(f"order {order} > {MAX_DERIVATIVE_ORDER}")
    return profile.derivatives(t, order)


@dataclass(frozen=True)
class DefiningReport:
    is_defining: bool
    boundary_value: float
    boundary_slope: float


def check_defining(profile):
    """Does phi vanish to precisely first order at t = 1?"""
    if profile.support_radius != 1.0:
        raise OutOfSupport("defining check applies to weights supported on [0, 1)")
    val, slope = profile._derivatives_unchecked(1.0, 1)[:2]
    return DefiningReport(
        is_defining=abs(val) <= 1e-12 and slope < -1e-12,
        boundary_value=val,
        boundary_slope=slope,
    )


def default_radial_grid(profile, n=_DEFAULT_GRID_SIZE):
    hi = 1.0 - _PSH_COLLAR if profile.support_radius == 1.0 else _DEFAULT_INFINITE_SPAN
    return chebyshev_grid(0.0, hi, n)


def default_vertical_grid(n=_DEFAULT_GRID_SIZE):
    return chebyshev_grid(0.0, _DEFAULT_INFINITE_SPAN, n)


def check_radial_psh(profile, grid=None):
    """Sampled necessary condition (t phi'/phi)' < 0 on the grid.

    Equivalent to log(1/phi(|z|^2)) being strictly plurisubharmonic; a grid
    check, not a proof.  The default grid stops a small collar short of t = 1
    where phi -> 0 makes the sign numerically fragile.
    """
    if grid is None:
        grid = default_radial_grid(profile)
    for t in grid:
        _, curve = profile.log_ratio_derivs(t)
        if not curve < 0.0:
            return False
    return True


def check_vertical_hypotheses(profile, grid=None):
    """Sampled check of rho' > 0 and (rho'/rho)' < 0 on (0, inf)."""
    if grid is None:
        grid = default_vertical_grid()
    for y in grid:
        d1 = profile.derivatives(y, 1)[1]
        lr1 = profile.log_derivs(y)[1]
        if not (d1 > 0.0 and lr1 < 0.0):
            return False
    return True


def _parse_factor(token):
    name, _, arg = token.partition(":")
    name = name.strip()
    try:
        if name == "poly":
            return RadialWeightProfile.polynomial(
                [float(c) for c in arg.split(",")] if arg else []
            )
        if name == "power":
            return RadialWeightProfile.power(float(arg))
        if name == "exp":
            return RadialWeightProfile.exponential(float(arg))
        if name == "vert-power":
            return VerticalWeightProfile.power(float(arg))
        if name == "vert-expdecay":
            if arg:
                raise ParseError("vert-expdecay takes no parameter")
            return VerticalWeightProfile.exponential_decay()
        if name == "vert-invpow":
            return VerticalWeightProfile.inverse_power(float(arg))
    except ValueError as exc:
        raise ParseError(f"bad parameter in weight token {token!r}: {exc}") from None
    raise ParseError(f"unknown weight family {name!r}")


def parse_weight(text):
    """Parse the weight mini-grammar, e.g. 'poly:1,0,-1' or 'vert-power:1*vert-invpow:1'."""
    tokens = [tok for tok in text.strip().split("*") if tok]
    if not tokens:
        raise ParseError("empty weight specification")
    profile = _parse_factor(tokens[0])
    for tok in tokens[1:]:
        nxt = _parse_factor(tok)
        if type(nxt) is not type(profile):
            raise ParseError("cannot mix radial and vertical factors in one weight")
        profile = profile * nxt
    return profile


def render_weight(profile):
    """Inverse of parse_weight (up to float formatting)."""
    parts = []
    radial = isinstance(profile, RadialWeightProfile)
    for f in profile.factors:
        if radial:
            if f.kind == RADIAL_POLY:
                parts.append("poly:" + ",".join(repr(c) for c in f.params))
            elif f.kind == RADIAL_POWER:
                parts.append(f"power:{f.params[0]!r}")
            else:
                parts.append(f"exp:{f.params[0]!r}")
        else:
            if f.kind == VERT_POWER:
                parts.append(f"vert-power:{f.params[0]!r}")
            elif f.kind == VERT_EXPDECAY:
                parts.append("vert-expdecay")
            else:
                parts.append(f"vert-invpow:{f.params[0]!r}")
    return "*".join(parts)
