"""Truncated power-series (jet) arithmetic in one and two variables.

A jet stores the Taylor coefficients of a real-analytic function at a base
point::

    f(x0 + u) = c[0] + c[1] u + c[2] u**2 + ... + c[K] u**K + O(u**K+1)

so ``c[k] = f⁽ᵏ⁾(x0)/k!``.  All operations (+, -, *, /, exp, log, pow, trig)
are closed at fixed truncation order K and exact up to rounding: this is
Taylor-mode differentiation, the workhorse behind every derivative taken in
this package.  High orders (the inducibility scans go past order 30) make
finite differences hopeless, which is why nothing here ever differentiates
numerically.

Two precisions are supported: float64 and numpy's extended longdouble, chosen
per jet via ``dtype``.  Coefficient cancellation grows with order, so scans
can be re-run in extended precision to confirm a marginal sign.

``Jet2`` is the bivariate analog on a rectangular truncation window, used by
the curvature module for Reinhardt potentials.  Rectangular truncation is
closed under products: coefficient (i, j) of a product only needs factors'
coefficients with indices ≤ (i, j).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import JetOverflow

DEFAULT_ORDER_CAP = 64

_DTYPES = {"double": np.float64, "extended": np.longdouble}


def resolve_dtype(precision):
    """Map 'double'/'extended' (or a numpy dtype) to a numpy float type."""
    if precision is None:
        return np.float64
    if isinstance(precision, str):
        try:
            return _DTYPES[precision]
        except KeyError:
            raise ValueError(f"unknown precision {precision!r}; use 'double' or 'extended'")
    return np.dtype(precision).type


class Jet:
    """Univariate truncated power series with float coefficients.

    Parameters
    ----------
    coef : array-like
        Taylor coefficients c[0..K] at the base point.
    base_point : float
        Where the expansion is centered (bookkeeping only; arithmetic is in
        the local variable u = x - base_point).
    """

    __slots__ = ("coef", "base_point")

    def __init__(self, coef, base_point=0.0):
        self.coef = np.atleast_1d(np.asarray(coef))
        if self.coef.ndim != 1:
            raise ValueError("jet coefficients must be one-dimensional")
        self.base_point = float(base_point)

    # -- constructors ------------------------------------------------------

    @classmethod
    def variable(cls, value, order, dtype=np.float64):
        """Jet of the identity x at base point ``value``: [value, 1, 0, ...]."""
        c = np.zeros(order + 1, dtype=dtype)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return cls(c, base_point=value)

    @classmethod
    def constant(cls, value, order, dtype=np.float64, base_point=0.0):
        c = np.zeros(order + 1, dtype=dtype)
        c[0] = value
        return cls(c, base_point=base_point)

    # -- basic structure ---------------------------------------------------

    @property
    def order(self):
        return len(self.coef) - 1

    @property
    def dtype(self):
        return self.coef.dtype

    def __len__(self):
        return len(self.coef)

    def __getitem__(self, k):
        return self.coef[k]

    def __repr__(self):
        return f"Jet(order={self.order}, base={self.base_point}, coef={self.coef!r})"

    def derivative(self, k):
        """k-th derivative value at the base point: c[k] * k!."""
        return self.coef[k] * math.factorial(k)

    def derivatives(self):
        """All derivatives f⁽ᵏ⁾(base), k = 0..order."""
        fact = np.cumprod(np.concatenate(([1.0], np.arange(1, self.order + 1))))
        return self.coef * fact.astype(self.coef.dtype)

    def __call__(self, du):
        """Evaluate the truncated series at base_point + du (Horner)."""
        acc = self.coef[-1]
        for c in self.coef[-2::-1]:
            acc = acc * du + c
        return acc

    def truncated(self, order):
        if order >= self.order:
            return self
        return Jet(self.coef[: order + 1].copy(), self.base_point)

    def check_finite(self):
        if not np.all(np.isfinite(self.coef)):
            raise JetOverflow(
                "non-finite jet coefficients; retry with extended precision"
            )
        return self

    # -- ring operations ---------------------------------------------------

    def _align(self, other):
        if isinstance(other, Jet):
            k = min(self.order, other.order)
            return self.coef[: k + 1], other.coef[: k + 1]
        return None

    def __add__(self, other):
        pair = self._align(other)
        if pair is not None:
            a, b = pair
            return Jet(a + b, self.base_point)
        c = self.coef.copy()
        c[0] = c[0] + other
        return Jet(c, self.base_point)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coef, self.base_point)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._align(other)
        if pair is not None:
            a, b = pair
            n = len(a)
            out = np.zeros(n, dtype=np.result_type(a, b))
            for k in range(n):
                out[k] = np.dot(a[: k + 1], b[k::-1])
            return Jet(out, self.base_point)
        return Jet(self.coef * other, self.base_point)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._align(other)
        if pair is not None:
            a, b = pair
            if b[0] == 0:
                raise ZeroDivisionError("jet division needs nonzero constant term")
            n = len(a)
            out = np.zeros(n, dtype=np.result_type(a, b))
            for k in range(n):
                out[k] = (a[k] - np.dot(out[:k], b[k:0:-1])) / b[0]
            return Jet(out, self.base_point)
        return Jet(self.coef / other, self.base_point)

    def __rtruediv__(self, other):
        return Jet.constant(other, self.order, self.dtype, self.base_point) / self

    def __pow__(self, p):
        if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
            p = int(p)
            if p == 0:
                return Jet.constant(1.0, self.order, self.dtype, self.base_point)
            if p > 0 and self.coef[0] == 0:
                # positive integer power of a jet with zero constant term
                out = self
                for _ in range(p - 1):
                    out = out * self
                return out
        return self.pow(p)

    # -- analytic functions ------------------------------------------------

    def exp(self):
        a = self.coef
        n = len(a)
        out = np.zeros(n, dtype=a.dtype)
        out[0] = np.exp(a[0])
        j = np.arange(1, n)
        ja = j * a[1:]
        for k in range(1, n):
            out[k] = np.dot(ja[:k], out[k - 1 :: -1][:k]) / k
        return Jet(out, self.base_point)

    def log(self):
        a = self.coef
        if a[0] <= 0:
            raise ValueError("jet log needs positive constant term")
        n = len(a)
        out = np.zeros(n, dtype=a.dtype)
        out[0] = np.log(a[0])
        for k in range(1, n):
            j = np.arange(1, k)
            s = np.dot(j * out[1:k], a[k - 1 : 0 : -1]) / k if k > 1 else 0.0
            out[k] = (a[k] - s) / a[0]
        return Jet(out, self.base_point)

    def pow(self, p):
        """Real power via the standard recurrence (needs c0 > 0 or c0 != 0 with integer p)."""
        a = self.coef
        if a[0] == 0:
            raise ValueError("jet pow needs nonzero constant term")
        n = len(a)
        out = np.zeros(n, dtype=a.dtype)
        out[0] = a[0] ** a.dtype.type(p)
        for k in range(1, n):
            j = np.arange(1, k + 1)
            w = (p + 1) * j - k
            out[k] = np.dot(w * a[1 : k + 1], out[k - 1 :: -1][:k]) / (k * a[0])
        return Jet(out, self.base_point)

    def sqrt(self):
        return self.pow(0.5)

    def _sincos(self):
        a = self.coef
        n = len(a)
        s = np.zeros(n, dtype=a.dtype)
        c = np.zeros(n, dtype=a.dtype)
        s[0] = np.sin(a[0])
        c[0] = np.cos(a[0])
        j = np.arange(1, n)
        ja = j * a[1:]
        for k in range(1, n):
            s[k] = np.dot(ja[:k], c[k - 1 :: -1][:k]) / k
            c[k] = -np.dot(ja[:k], s[k - 1 :: -1][:k]) / k
        return Jet(s, self.base_point), Jet(c, self.base_point)

    def sin(self):
        return self._sincos()[0]

    def cos(self):
        return self._sincos()[1]

    def tan(self):
        s, c = self._sincos()
        return s / c


class Jet2:
    """Bivariate jet on a rectangular truncation window.

    ``coef[i, j]`` multiplies u^i v^j where (u, v) are local coordinates at
    the base point.  Orders are (coef.shape[0]-1, coef.shape[1]-1).
    """

    __slots__ = ("coef", "base_point")

    def __init__(self, coef, base_point=(0.0, 0.0)):
        self.coef = np.asarray(coef, dtype=np.float64)
        if self.coef.ndim != 2:
            raise ValueError("Jet2 coefficients must be a 2-D array")
        self.base_point = (float(base_point[0]), float(base_point[1]))

    @classmethod
    def variable(cls, axis, value, orders, base_point=None):
        c = np.zeros((orders[0] + 1, orders[1] + 1))
        c[0, 0] = value
        if axis == 0 and orders[0] >= 1:
            c[1, 0] = 1.0
        elif axis == 1 and orders[1] >= 1:
            c[0, 1] = 1.0
        return cls(c, base_point or (0.0, 0.0))

    @classmethod
    def constant(cls, value, orders, base_point=(0.0, 0.0)):
        c = np.zeros((orders[0] + 1, orders[1] + 1))
        c[0, 0] = value
        return cls(c, base_point)

    @property
    def orders(self):
        return (self.coef.shape[0] - 1, self.coef.shape[1] - 1)

    def value(self):
        return self.coef[0, 0]

    def partial(self, i, j):
        """∂^{i+j} f / ∂x^i ∂y^j at the base point."""
        if i >= self.coef.shape[0] or j >= self.coef.shape[1]:
            raise IndexError("requested partial beyond truncation window")
        return self.coef[i, j] * math.factorial(i) * math.factorial(j)

    def dx(self):
        """Jet of ∂f/∂x (window shrinks by one row)."""
        n = self.coef.shape[0]
        c = self.coef[1:, :] * np.arange(1, n)[:, None]
        return Jet2(c, self.base_point)

    def dy(self):
        m = self.coef.shape[1]
        c = self.coef[:, 1:] * np.arange(1, m)[None, :]
        return Jet2(c, self.base_point)

    def _align(self, other):
        if isinstance(other, Jet2):
            n = min(self.coef.shape[0], other.coef.shape[0])
            m = min(self.coef.shape[1], other.coef.shape[1])
            return self.coef[:n, :m], other.coef[:n, :m]
        return None

    def __add__(self, other):
        pair = self._align(other)
        if pair is not None:
            a, b = pair
            return Jet2(a + b, self.base_point)
        c = self.coef.copy()
        c[0, 0] += other
        return Jet2(c, self.base_point)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.coef, self.base_point)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet2) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._align(other)
        if pair is not None:
            a, b = pair
            n, m = a.shape
            out = np.zeros((n, m))
            for i in range(n):
                for j in range(m):
                    if a[i, j] != 0.0:
                        out[i:, j:] += a[i, j] * b[: n - i, : m - j]
            return Jet2(out, self.base_point)
        return Jet2(self.coef * other, self.base_point)

    __rmul__ = __mul__

    def reciprocal(self):
        b = self.coef
        if b[0, 0] == 0:
            raise ZeroDivisionError("Jet2 reciprocal needs nonzero constant term")
        n, m = b.shape
        out = np.zeros((n, m))
        out[0, 0] = 1.0 / b[0, 0]
        for i in range(n):
            for j in range(m):
                if i == 0 and j == 0:
                    continue
                acc = 0.0
                for k in range(i + 1):
                    for l in range(j + 1):
                        if k == 0 and l == 0:
                            continue
                        acc += b[k, l] * out[i - k, j - l]
                out[i, j] = -acc / b[0, 0]
        return Jet2(out, self.base_point)

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return Jet2(self.coef / other, self.base_point)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def exp(self):
        s = self.coef
        n, m = s.shape
        out = np.zeros((n, m))
        out[0, 0] = np.exp(s[0, 0])
        sy = np.zeros((n, m))
        sy[:, : m - 1] = s[:, 1:] * np.arange(1, m)[None, :]
        sx = np.zeros((n, m))
        sx[: n - 1, :] = s[1:, :] * np.arange(1, n)[:, None]
        # row 0 from the y-recursion E_y = E * S_y, rows >= 1 from E_x = E * S_x
        for j in range(1, m):
            acc = 0.0
            for l in range(j):
                acc += out[0, l] * sy[0, j - 1 - l]
            out[0, j] = acc / j
        for i in range(1, n):
            for j in range(m):
                acc = 0.0
                for k in range(i):
                    for l in range(j + 1):
                        acc += out[k, l] * sx[i - 1 - k, j - l]
                out[i, j] = acc / i
        return Jet2(out, self.base_point)

    def log(self):
        if self.coef[0, 0] <= 0:
            raise ValueError("Jet2 log needs positive constant term")
        r = self.reciprocal()
        gx = (self.dx() * r).coef
        gy = (self.dy() * r).coef
        n, m = self.coef.shape
        out = np.zeros((n, m))
        out[0, 0] = np.log(self.coef[0, 0])
        for j in range(1, m):
            out[0, j] = gy[0, j - 1] / j
        for i in range(1, n):
            for j in range(m):
                out[i, j] = gx[i - 1, j] / i if i - 1 < gx.shape[0] else 0.0
        return Jet2(out, self.base_point)

    def pow(self, p):
        return (self.log() * p).exp()

    def cos(self):
        # rarely needed in 2-D; via exp of i*x is overkill, use series on (self - c0)
        c0 = self.coef[0, 0]
        d = self - c0
        n, m = self.coef.shape
        out = Jet2.constant(0.0, (n - 1, m - 1), self.base_point)
        term = Jet2.constant(1.0, (n - 1, m - 1), self.base_point)
        kmax = n + m
        for k in range(kmax + 1):
            if k % 2 == 0:
                coefficient = np.cos(c0) * (-1) ** (k // 2)
            else:
                coefficient = -np.sin(c0) * (-1) ** ((k - 1) // 2)
            out = out + term * (coefficient / math.factorial(k))
            term = term * d
        return out
