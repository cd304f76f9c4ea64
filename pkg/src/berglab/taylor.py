"""Small forward-mode Taylor (jet) arithmetic and function combinators.

The endpoint expansion engine needs exact derivatives of F and 1/S' to
moderate order; these are propagated through sums, products, quotients,
exp/log, and powers rather than ever differencing numerically.
"""

import math

from .errors import DerivativeUnavailable


class Jet:
    """Taylor coefficients a_0..a_N of a function at a fixed point."""

    __slots__ = ("coef",)

    def __init__(self, coef):
        self.coef = tuple(coef)

    @property
    def order(self):
        return len(self.coef) - 1

    @classmethod
    def from_derivatives(cls, derivs):
        return cls(d / math.factorial(i) for i, d in enumerate(derivs))

    def derivative_list(self):
        return [a * math.factorial(i) for i, a in enumerate(self.coef)]

    def truncate(self, order):
        return Jet(self.coef[: order + 1])

    def deriv(self):
        if self.order == 0:
            return Jet((0.0,))
        return Jet((i + 1) * self.coef[i + 1] for i in range(self.order))

    def _align(self, other):
        if not isinstance(other, Jet):
            other = Jet((float(other),))
        # constants (order 0) broadcast; otherwise truncate to the shorter jet
        if self.order == 0 and other.order > 0:
            a = Jet((self.coef[0],) + (0.0,) * other.order)
            return a, other
        if other.order == 0 and self.order > 0:
            b = Jet((other.coef[0],) + (0.0,) * self.order)
            return self, b
        n = min(self.order, other.order)
        return self.truncate(n), other.truncate(n)

    def __add__(self, other):
        a, b = self._align(other)
        return Jet(x + y for x, y in zip(a.coef, b.coef))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-x for x in self.coef)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -float(other))

    def __rsub__(self, other):
        return (-self) + float(other)

    def __mul__(self, other):
        a, b = self._align(other)
        n = a.order
        out = [0.0] * (n + 1)
        for i, x in enumerate(a.coef):
            if x == 0.0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += x * b.coef[j]
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._align(other)
        if b.coef[0] == 0.0:
            raise ZeroDivisionError("jet division by a function vanishing at the point")
        n = a.order
        out = [a.coef[0] / b.coef[0]]
        for k in range(1, n + 1):
            s = a.coef[k]
            for i in range(1, k + 1):
                s -= b.coef[i] * out[k - i] if i <= b.order else 0.0
            out.append(s / b.coef[0])
        return Jet(out)

    def __rtruediv__(self, other):
        return Jet((float(other),) + (0.0,) * self.order) / self

    def exp(self):
        out = [math.exp(self.coef[0])]
        for k in range(1, self.order + 1):
            s = 0.0
            for i in range(1, k + 1):
                s += i * self.coef[i] * out[k - i]
            out.append(s / k)
        return Jet(out)

    def log(self):
        if self.coef[0] <= 0.0:
            raise ValueError("jet log needs a positive value at the point")
        out = [math.log(self.coef[0])]
        for k in range(1, self.order + 1):
            s = k * self.coef[k]
            for i in range(1, k):
                s -= i * out[i] * self.coef[k - i]
            out.append(s / (k * self.coef[0]))
        return Jet(out)

    def __pow__(self, p):
        if isinstance(p, int) and p >= 0:
            out = Jet((1.0,) + (0.0,) * self.order)
            for _ in range(p):
                out = out * self
            return out
        return (self.log() * float(p)).exp()


class Smooth:
    """Differentiable function object: combinators over jet factories."""

    __slots__ = ("_jet_at",)

    def __init__(self, jet_at):
        self._jet_at = jet_at

    @classmethod
    def x(cls):
        return cls(lambda x, order: Jet((x, 1.0) + (0.0,) * max(0, order - 1)) if order else Jet((x,)))

    @classmethod
    def const(cls, c):
        return cls(lambda x, order: Jet((float(c),) + (0.0,) * order))

    def jet(self, x, order):
        return self._jet_at(x, order)

    def derivatives(self, x, order):
        """[f(x), f'(x), ..., f^(order)(x)]"""
        return self.jet(x, order).derivative_list()

    def __call__(self, x):
        return self.jet(x, 0).coef[0]

    @staticmethod
    def _lift(other):
        if isinstance(other, Smooth):
            return other
        if isinstance(other, (int, float)):
            return Smooth.const(other)
        raise DerivativeUnavailable(f"cannot combine with {type(other).__name__}")

    def _zip(self, other, op):
        other = self._lift(other)
        return Smooth(lambda x, order: op(self.jet(x, order), other.jet(x, order)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._zip(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, p):
        return Smooth(lambda x, order: self.jet(x, order) ** p)

    def exp(self):
        return Smooth(lambda x, order: self.jet(x, order).exp())

    def log(self):
        return Smooth(lambda x, order: self.jet(x, order).log())


def polynomial(coeffs):
    """Smooth polynomial sum(c_j x^j)."""
    coeffs = tuple(float(c) for c in coeffs)

    def jet_at(x, order):
        base = Jet((x, 1.0) + (0.0,) * max(0, order - 1)) if order else Jet((x,))
        out = Jet((0.0,) + (0.0,) * order)
        for c in reversed(coeffs):
            out = out * base + c
        return out

    return Smooth(jet_at)


def jet_from_provider(obj, x, order):
    """Jet from any object exposing derivatives(x, order)."""
    try:
        derivs = obj.derivatives(x, order)
    except AttributeError:
        raise DerivativeUnavailable(
            f"{type(obj).__name__} does not provide derivatives(x, order)"
        ) from None
    if len(derivs) < order + 1:
        raise DerivativeUnavailable(
            f"{type(obj).__name__} supplied only {len(derivs) - 1} derivative orders"
        )
    return Jet.from_derivatives(derivs[: order + 1])
