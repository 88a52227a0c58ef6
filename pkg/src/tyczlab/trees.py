"""Closed-form expression trees for potentials.

Catalog potentials are stored as small composition trees (log, exp, pow,
rational operations) over one or two variables.  A tree evaluates uniformly
on floats, numpy arrays, and jets, so the same object yields vectorized
values for quadrature and exact Taylor jets for differentiation.  ``diff``
produces a new tree, which keeps quadrature weights (f', (rf')', det G)
analytic rather than numeric.

Trees serialize to/from a small JSON vocabulary, the wire format for custom
potentials.
"""

from __future__ import annotations

import math

import numpy as np

from .jets import Jet, Jet2

_JET_TYPES = (Jet, Jet2)


def _exp(x):
    return x.exp() if isinstance(x, _JET_TYPES) else np.exp(x)


def _log(x):
    return x.log() if isinstance(x, _JET_TYPES) else np.log(x)


def _cos(x):
    return x.cos() if isinstance(x, _JET_TYPES) else np.cos(x)


def _sin(x):
    return x.sin() if isinstance(x, _JET_TYPES) else np.sin(x)


def _pow(x, p):
    if isinstance(x, _JET_TYPES):
        return x ** p if isinstance(x, Jet) else x.pow(p)
    return np.power(x, p)


class Expr:
    """Immutable expression node over variables x0 (and optionally x1)."""

    op = "?"

    def __call__(self, *args):
        raise NotImplementedError

    def diff(self, var=0):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<expr {self.op}>"


class Const(Expr):
    op = "const"

    def __init__(self, value):
        self.value = float(value)

    def __call__(self, *args):
        return self.value

    def diff(self, var=0):
        return Const(0.0)

    def to_json(self):
        return {"op": "const", "value": self.value}


class Var(Expr):
    op = "var"

    def __init__(self, index=0):
        self.index = int(index)

    def __call__(self, *args):
        return args[self.index]

    def diff(self, var=0):
        return Const(1.0 if var == self.index else 0.0)

    def to_json(self):
        return {"op": "var", "index": self.index}


def _is_const(e, v=None):
    return isinstance(e, Const) and (v is None or e.value == v)


class Add(Expr):
    op = "add"

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, *args):
        return self.a(*args) + self.b(*args)

    def diff(self, var=0):
        return add(self.a.diff(var), self.b.diff(var))

    def to_json(self):
        return {"op": "add", "args": [self.a.to_json(), self.b.to_json()]}


class Sub(Expr):
    op = "sub"

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, *args):
        return self.a(*args) - self.b(*args)

    def diff(self, var=0):
        return sub(self.a.diff(var), self.b.diff(var))

    def to_json(self):
        return {"op": "sub", "args": [self.a.to_json(), self.b.to_json()]}


class Mul(Expr):
    op = "mul"

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, *args):
        return self.a(*args) * self.b(*args)

    def diff(self, var=0):
        return add(mul(self.a.diff(var), self.b), mul(self.a, self.b.diff(var)))

    def to_json(self):
        return {"op": "mul", "args": [self.a.to_json(), self.b.to_json()]}


class Div(Expr):
    op = "div"

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, *args):
        return self.a(*args) / self.b(*args)

    def diff(self, var=0):
        num = sub(mul(self.a.diff(var), self.b), mul(self.a, self.b.diff(var)))
        return Div(num, mul(self.b, self.b))

    def to_json(self):
        return {"op": "div", "args": [self.a.to_json(), self.b.to_json()]}


class Neg(Expr):
    op = "neg"

    def __init__(self, a):
        self.a = a

    def __call__(self, *args):
        return -self.a(*args)

    def diff(self, var=0):
        return neg(self.a.diff(var))

    def to_json(self):
        return {"op": "neg", "args": [self.a.to_json()]}


class Pow(Expr):
    """a(x) raised to a *constant* real exponent."""

    op = "pow"

    def __init__(self, a, exponent):
        self.a = a
        self.exponent = float(exponent)

    def __call__(self, *args):
        return _pow(self.a(*args), self.exponent)

    def diff(self, var=0):
        p = self.exponent
        if p == 0:
            return Const(0.0)
        return mul(Const(p), mul(Pow(self.a, p - 1.0), self.a.diff(var)))

    def to_json(self):
        return {"op": "pow", "args": [self.a.to_json()], "exponent": self.exponent}


class Log(Expr):
    op = "log"

    def __init__(self, a):
        self.a = a

    def __call__(self, *args):
        return _log(self.a(*args))

    def diff(self, var=0):
        return Div(self.a.diff(var), self.a)

    def to_json(self):
        return {"op": "log", "args": [self.a.to_json()]}


class ExpNode(Expr):
    op = "exp"

    def __init__(self, a):
        self.a = a

    def __call__(self, *args):
        return _exp(self.a(*args))

    def diff(self, var=0):
        return mul(self.a.diff(var), self)

    def to_json(self):
        return {"op": "exp", "args": [self.a.to_json()]}


class CosNode(Expr):
    op = "cos"

    def __init__(self, a):
        self.a = a

    def __call__(self, *args):
        return _cos(self.a(*args))

    def diff(self, var=0):
        return neg(mul(self.a.diff(var), SinNode(self.a)))

    def to_json(self):
        return {"op": "cos", "args": [self.a.to_json()]}


class SinNode(Expr):
    op = "sin"

    def __init__(self, a):
        self.a = a

    def __call__(self, *args):
        return _sin(self.a(*args))

    def diff(self, var=0):
        return mul(self.a.diff(var), CosNode(self.a))

    def to_json(self):
        return {"op": "sin", "args": [self.a.to_json()]}


# -- smart constructors (light constant folding keeps diff trees small) ----


def const(v):
    return Const(v)


def var(i=0):
    return Var(i)


def add(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Add(a, b)


def sub(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    return Sub(a, b)


def mul(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Mul(a, b)


def neg(a):
    if _is_const(a):
        return Const(-a.value)
    return Neg(a)


def div(a, b):
    if _is_const(a, 0.0):
        return Const(0.0)
    if _is_const(b, 1.0):
        return a
    return Div(a, b)


def powc(a, p):
    if p == 1.0:
        return a
    if p == 0.0:
        return Const(1.0)
    return Pow(a, p)


def log(a):
    return Log(a)


def exp(a):
    return ExpNode(a)


def cos(a):
    return CosNode(a)


def sin(a):
    return SinNode(a)


_NODE_TYPES = {
    "const": Const,
    "var": Var,
    "add": Add,
    "sub": Sub,
    "mul": Mul,
    "div": Div,
    "neg": Neg,
    "pow": Pow,
    "log": Log,
    "exp": ExpNode,
    "cos": CosNode,
    "sin": SinNode,
}


def expr_from_json(d):
    """Rebuild an expression tree from its JSON description."""
    op = d["op"]
    if op == "const":
        return Const(d["value"])
    if op == "var":
        return Var(d.get("index", 0))
    args = [expr_from_json(x) for x in d.get("args", [])]
    if op == "pow":
        return Pow(args[0], d["exponent"])
    cls = _NODE_TYPES.get(op)
    if cls is None:
        raise ValueError(f"unknown expression op {op!r}")
    return cls(*args)


def poly1(coeffs, x=None):
    """Tree for sum_k coeffs[k] * x^k (ascending)."""
    x = x if x is not None else Var(0)
    out = Const(coeffs[0])
    xk = None
    for k, c in enumerate(coeffs[1:], start=1):
        xk = x if k == 1 else mul(xk, x)
        if c != 0:
            out = add(out, mul(Const(c), xk))
    return out


def eval_jet1(tree, r0, order, dtype=np.float64, scaled=False):
    """Jet of a one-variable tree at r0.

    With ``scaled=True`` the local variable is u in r = r0(1+u); coefficient
    k is then r0^k f⁽ᵏ⁾(r0)/k!, which stays bounded for log-type potentials
    at tiny r0 (the plain coefficients overflow past order ~30 there).
    """
    c = np.zeros(order + 1, dtype=dtype)
    c[0] = r0
    if order >= 1:
        c[1] = r0 if scaled else 1.0
    return tree(Jet(c, base_point=r0))


def eval_jet2(tree, x0, orders):
    """Bivariate jet of a two-variable tree at x0 = (x1, x2)."""
    u = Jet2.variable(0, x0[0], orders, base_point=x0)
    v = Jet2.variable(1, x0[1], orders, base_point=x0)
    return tree(u, v)


def radial_jet2(fjet, orders, base_point):
    """2-D jet at (r, 0) of Φ(x1,x2) = f(x1+x2) from the 1-D jet of f at r.

    Coefficient (i, j) of f(x1+x2) is C(i+j, i) * c[i+j].
    """
    n1, n2 = orders[0] + 1, orders[1] + 1
    if fjet.order < orders[0] + orders[1]:
        raise ValueError("univariate jet order too small for requested window")
    out = np.zeros((n1, n2))
    for i in range(n1):
        for j in range(n2):
            out[i, j] = float(fjet.coef[i + j]) * math.comb(i + j, i)
    return Jet2(out, base_point)
