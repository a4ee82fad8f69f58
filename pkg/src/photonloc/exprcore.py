"""Expression trees over the momentum variables p1, p2, p3.

Nodes are hash-consed: building the same tree twice returns the same object,
so identity is structural equality and shared subtrees are evaluated and
differentiated once.  Besides the three coordinates there are two radical
leaves, ``r = |p|`` and ``rho = sqrt(p1**2 + p2**2)``; every spherical
quantity (cos theta = p3/r, sin theta = rho/r, cot theta = p3/rho, ...) is a
rational expression in these, which keeps differentiation closed.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ScalarExpr", "SingularPointError", "SamplePlan",
    "const", "var", "p1", "p2", "p3", "r", "rho", "exp", "I",
    "diff", "evaluate", "evaluate_many", "conjugate", "substitute_neg",
    "sample_points", "as_expr",
]


class SingularPointError(ArithmeticError):
    """Division by a vanishing radical (the origin or the p3 axis)."""

    def __init__(self, point, radical: str):
        self.point = tuple(float(x) for x in point)
        self.radical = radical
        super().__init__(f"singular point {self.point}: {radical} = 0 in a denominator")


_TABLE: dict[tuple, "ScalarExpr"] = {}


def _intern(cls, *key):
    k = (cls, *key)
    node = _TABLE.get(k)
    if node is None:
        node = object.__new__(cls)
        node._set(*key)
        node._d = None
        node._conj = None
        node._neg = None
        _TABLE[k] = node
    return node


class ScalarExpr:
    """Immutable complex-valued expression in p = (p1, p2, p3)."""

    __slots__ = ("_d", "_conj", "_neg")
    __array_ufunc__ = None  # numpy scalars defer to the reflected operators
    children: tuple = ()

    def __add__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else add(self, o)

    def __radd__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else add(o, self)

    def __sub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else sub(self, o)

    def __rsub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else sub(o, self)

    def __mul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else mul(self, o)

    def __rmul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else mul(o, self)

    def __truediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else div(self, o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else div(o, self)

    def __neg__(self):
        return mul(const(-1), self)

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            raise TypeError("only integer powers are supported")
        return power(self, int(n))

    def __repr__(self):
        return f"ScalarExpr({self})"

    def __str__(self):
        return _render(self, 0)

    @property
    def is_zero(self) -> bool:
        return isinstance(self, Const) and self.value == 0


class Const(ScalarExpr):
    __slots__ = ("value",)

    def _set(self, value):
        self.value = value


class Var(ScalarExpr):
    __slots__ = ("axis",)

    def _set(self, axis):
        self.axis = axis


class Radius(ScalarExpr):
    """r = |p|."""

    __slots__ = ()

    def _set(self):
        pass


class AxisRadius(ScalarExpr):
    """rho = distance from the p3 axis."""

    __slots__ = ()

    def _set(self):
        pass


class _Binary(ScalarExpr):
    __slots__ = ("a", "b")
    symbol = "?"

    def _set(self, a, b):
        self.a = a
        self.b = b

    @property
    def children(self):
        return (self.a, self.b)


class Add(_Binary):
    __slots__ = ()
    symbol = "+"


class Sub(_Binary):
    __slots__ = ()
    symbol = "-"


class Mul(_Binary):
    __slots__ = ()
    symbol = "*"


class Div(_Binary):
    __slots__ = ()
    symbol = "/"


class Pow(ScalarExpr):
    __slots__ = ("base", "n")

    def _set(self, base, n):
        self.base = base
        self.n = n

    @property
    def children(self):
        return (self.base,)


class Exp(ScalarExpr):
    __slots__ = ("arg",)

    def _set(self, arg):
        self.arg = arg

    @property
    def children(self):
        return (self.arg,)


# -- constructors with constant folding --------------------------------------

def const(value) -> ScalarExpr:
    c = complex(value)
    if c == 0:
        c = 0j  # merge signed zeros
    return _intern(Const, c)


def var(axis: int) -> ScalarExpr:
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    return _intern(Var, axis)


def _coerce(x):
    if isinstance(x, ScalarExpr):
        return x
    if isinstance(x, numbers.Number):
        return const(x)
    return None


def as_expr(x) -> ScalarExpr:
    if isinstance(x, ScalarExpr):
        return x
    if isinstance(x, numbers.Number):
        return const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to ScalarExpr")


def _c(x):
    return x.value if isinstance(x, Const) else None


def add(a, b):
    ca, cb = _c(a), _c(b)
    if ca is not None and cb is not None:
        return const(ca + cb)
    if ca == 0:
        return b
    if cb == 0:
        return a
    return _intern(Add, a, b)


def sub(a, b):
    ca, cb = _c(a), _c(b)
    if ca is not None and cb is not None:
        return const(ca - cb)
    if a is b:
        return ZERO
    if cb == 0:
        return a
    if ca == 0:
        return mul(const(-1), b)
    return _intern(Sub, a, b)


def mul(a, b):
    ca, cb = _c(a), _c(b)
    if ca is not None and cb is not None:
        return const(ca * cb)
    if ca == 0 or cb == 0:
        return ZERO
    if ca == 1:
        return b
    if cb == 1:
        return a
    if cb is not None:
        a, b, ca, cb = b, a, cb, ca
    if ca is not None and isinstance(b, Mul) and isinstance(b.a, Const):
        return mul(const(ca * b.a.value), b.b)
    if ca is not None and isinstance(b, Div):
        return div(mul(a, b.a), b.b)
    return _intern(Mul, a, b)


def div(a, b):
    ca, cb = _c(a), _c(b)
    if cb == 0:
        raise ZeroDivisionError("division by the constant zero")
    if ca == 0:
        return ZERO
    if ca is not None and cb is not None:
        return const(ca / cb)
    if cb == 1:
        return a
    if a is b:
        return ONE
    return _intern(Div, a, b)


def power(base, n: int):
    if n == 0:
        return ONE
    if n == 1:
        return base
    cb = _c(base)
    if cb is not None:
        return const(cb ** n)
    if isinstance(base, Pow):
        return power(base.base, base.n * n)
    return _intern(Pow, base, n)


def exp(arg) -> ScalarExpr:
    arg = as_expr(arg)
    ca = _c(arg)
    if ca is not None:
        return const(np.exp(ca))
    return _intern(Exp, arg)


ZERO = const(0)
ONE = const(1)
I = const(1j)
p1, p2, p3 = var(1), var(2), var(3)
r = _intern(Radius)
rho = _intern(AxisRadius)


# -- structural transforms ----------------------------------------------------

def diff(e: ScalarExpr, i: int) -> ScalarExpr:
    """Exact partial derivative of ``e`` with respect to p_i (i = 1, 2, 3)."""
    if i not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {i}")
    if e._d is None:
        e._d = [None, None, None]
    d = e._d[i - 1]
    if d is None:
        d = _diff(e, i)
        e._d[i - 1] = d
    return d


def _diff(e, i):
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.axis == i else ZERO
    if isinstance(e, Radius):
        return div(var(i), r)
    if isinstance(e, AxisRadius):
        return ZERO if i == 3 else div(var(i), rho)
    if isinstance(e, Add):
        return add(diff(e.a, i), diff(e.b, i))
    if isinstance(e, Sub):
        return sub(diff(e.a, i), diff(e.b, i))
    if isinstance(e, Mul):
        return add(mul(diff(e.a, i), e.b), mul(e.a, diff(e.b, i)))
    if isinstance(e, Div):
        da, db = diff(e.a, i), diff(e.b, i)
        return sub(div(da, e.b), div(mul(e.a, db), power(e.b, 2)))
    if isinstance(e, Pow):
        return mul(mul(const(e.n), power(e.base, e.n - 1)), diff(e.base, i))
    if isinstance(e, Exp):
        return mul(e, diff(e.arg, i))
    raise TypeError(type(e))


def _rebuild(e, f):
    if isinstance(e, Add):
        return add(f(e.a), f(e.b))
    if isinstance(e, Sub):
        return sub(f(e.a), f(e.b))
    if isinstance(e, Mul):
        return mul(f(e.a), f(e.b))
    if isinstance(e, Div):
        return div(f(e.a), f(e.b))
    if isinstance(e, Pow):
        return power(f(e.base), e.n)
    if isinstance(e, Exp):
        return exp(f(e.arg))
    return e


def conjugate(e: ScalarExpr) -> ScalarExpr:
    """Complex conjugate, pushed down to the constants (variables are real)."""
    if e._conj is None:
        if isinstance(e, Const):
            e._conj = const(e.value.conjugate())
        else:
            e._conj = _rebuild(e, conjugate)
    return e._conj


def substitute_neg(e: ScalarExpr) -> ScalarExpr:
    """The substitution p -> -p.  Both radicals are even."""
    if e._neg is None:
        if isinstance(e, Var):
            e._neg = mul(const(-1), e)
        else:
            e._neg = _rebuild(e, substitute_neg)
    return e._neg


# -- numeric evaluation -------------------------------------------------------

def _postorder(roots):
    seen = set()
    order = []
    stack = [(e, False) for e in reversed(roots)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for ch in node.children:
            if ch not in seen:
                stack.append((ch, False))
    return order


def _singular(points, mask, den):
    k = int(np.flatnonzero(mask)[0])
    pt = points[k]
    if not np.any(pt):
        name = "r"
    elif pt[0] == 0 and pt[1] == 0:
        name = "rho"
    else:
        name = f"denominator {den}"
    return SingularPointError(pt, name)


def evaluate_many(exprs: Sequence[ScalarExpr], points, with_scale: bool = False):
    """Evaluate several expressions at an (N, 3) array of points.

    Returns a complex array of shape ``(len(exprs), N)``.  With
    ``with_scale`` also returns a real array of the same shape bounding the
    magnitudes of the individual terms that were combined into each value;
    a value much smaller than its scale is the product of cancellation.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    x = pts.T
    radius = np.sqrt(x[0] ** 2 + x[1] ** 2 + x[2] ** 2)
    axis_radius = np.hypot(x[0], x[1])
    val: dict = {}
    mag: dict = {}
    with np.errstate(all="ignore"):
        for node in _postorder(list(exprs)):
            if isinstance(node, Const):
                v = np.full(x.shape[1], node.value, dtype=complex)
                m = np.abs(v)
            elif isinstance(node, Var):
                v = x[node.axis - 1].astype(complex)
                m = np.abs(x[node.axis - 1])
            elif isinstance(node, Radius):
                v = radius.astype(complex)
                m = radius
            elif isinstance(node, AxisRadius):
                v = axis_radius.astype(complex)
                m = axis_radius
            elif isinstance(node, Pow):
                b = val[node.base]
                if node.n < 0 and np.any(b == 0):
                    raise _singular(pts, b == 0, node.base)
                v = b ** node.n
                if with_scale:
                    mb = mag[node.base]
                    if node.n > 0:
                        m = mb ** node.n
                    else:
                        m = mb ** -node.n / np.abs(b) ** (-2 * node.n)
            elif isinstance(node, Exp):
                v = np.exp(val[node.arg])
                if with_scale:
                    m = np.abs(v) * np.maximum(1.0, mag[node.arg])
            else:
                a, b = val[node.a], val[node.b]
                if isinstance(node, Add):
                    v = a + b
                elif isinstance(node, Sub):
                    v = a - b
                elif isinstance(node, Mul):
                    v = a * b
                else:
                    if np.any(b == 0):
                        raise _singular(pts, b == 0, node.b)
                    v = a / b
                if with_scale:
                    ma, mb = mag[node.a], mag[node.b]
                    if isinstance(node, (Add, Sub)):
                        m = ma + mb
                    elif isinstance(node, Mul):
                        m = ma * mb
                    else:
                        ab = np.abs(b)
                        m = ma / ab + np.abs(v) * mb / ab
            val[node] = v
            if with_scale:
                mag[node] = m
    values = np.array([val[e] for e in exprs]).reshape(len(exprs), x.shape[1])
    if not with_scale:
        return values
    scales = np.array([mag[e] for e in exprs]).reshape(len(exprs), x.shape[1])
    return values, scales


def evaluate(e: ScalarExpr, point) -> complex:
    """Value of ``e`` at a single real point."""
    return complex(evaluate_many([e], np.asarray(point, dtype=float)[None, :])[0, 0])


# -- rendering ----------------------------------------------------------------

def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_const(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0:
        return _fmt_real(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return _fmt_real(im) + "i"
    sign = "+" if im > 0 else "-"
    return f"({_fmt_real(re)}{sign}{_fmt_real(abs(im))}i)"


_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2}


def _signed(s: str) -> str:
    # a leading minus would otherwise read as an operator on what precedes it
    return f"({s})" if s.startswith("-") else s


def _render(e, prec):
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Var):
        return f"p{e.axis}"
    if isinstance(e, Radius):
        return "r"
    if isinstance(e, AxisRadius):
        return "rho"
    if isinstance(e, Pow):
        base = _render(e.base, 3)
        base = f"({base})" if isinstance(e.base, Pow) else _signed(base)
        return f"{base}^{e.n}" if e.n > 0 else f"{base}^({e.n})"
    if isinstance(e, Exp):
        return f"exp({_render(e.arg, 0)})"
    if isinstance(e, Mul) and isinstance(e.a, Const) and e.a.value == -1:
        s = "-" + _signed(_render(e.b, 2))
        return f"({s})" if prec > 2 else s
    p = _PREC[type(e)]
    right = p + 1 if isinstance(e, (Sub, Div)) else p
    s = f"{_render(e.a, p)} {e.symbol} {_signed(_render(e.b, right))}"
    return f"({s})" if p < prec else s


# -- sampling -----------------------------------------------------------------

@dataclass(frozen=True)
class SamplePlan:
    """Where identities get tested: a spherical shell minus a cone around the p3 axis."""

    seed: int = 0
    count: int = 64
    shell: tuple[float, float] = (0.5, 2.0)
    axis_margin: float = 0.1

    def __post_init__(self):
        lo, hi = self.shell
        if not 0 < lo <= hi:
            raise ValueError(f"shell must satisfy 0 < r_min <= r_max, got {self.shell}")
        if not 0 < self.axis_margin < 1:
            raise ValueError(f"axis_margin must lie in (0, 1), got {self.axis_margin}")
        if self.count < 0:
            raise ValueError("count must be non-negative")


def sample_points(plan: SamplePlan) -> np.ndarray:
    """Deterministic (count, 3) array with r in the shell and rho >= axis_margin * r."""
    rng = np.random.default_rng(plan.seed)
    n = plan.count
    cmax = np.sqrt(1.0 - plan.axis_margin ** 2)
    cos_t = rng.uniform(-cmax, cmax, n)
    phi = rng.uniform(0.0, 2 * np.pi, n)
    radius = rng.uniform(plan.shell[0], plan.shell[1], n)
    sin_t = np.sqrt(1.0 - cos_t ** 2)
    pts = np.stack([radius * sin_t * np.cos(phi), radius * sin_t * np.sin(phi), radius * cos_t], axis=1)
    return pts.reshape(n, 3)


def vector(components: Iterable) -> tuple[ScalarExpr, ScalarExpr, ScalarExpr]:
    out = tuple(as_expr(c) for c in components)
    if len(out) != 3:
        raise ValueError("expected three components")
    return out
