"""First-order differential operators on 3-component momentum-space functions.

An operator acts as ``(O f)(p) = A(p) f(p) + sum_i b_i(p) df/dp_i`` with a 3x3
matrix ``A`` and scalar derivative coefficients ``b``.  Scalar ``b`` keeps the
class closed under commutators: the second-order terms cancel identically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import exprcore as ex
from .exprcore import ScalarExpr, as_expr, conjugate, diff, substitute_neg

__all__ = [
    "MatFn", "WaveFn", "LinOp", "ZeroTest", "Witness",
    "OperatorClosureError", "SecondOrderError",
    "apply", "commutator", "compose", "formal_adjoint", "unitary_conjugate",
    "parity_conjugate", "antiunitary_conjugate", "op_is_zero", "zero_test",
    "check_unitary", "check_involution",
]

Matrix = tuple[tuple[ScalarExpr, ...], ...]


class OperatorClosureError(ValueError):
    """An operation would leave the first-order, scalar-derivative class."""


class SecondOrderError(OperatorClosureError):
    """Both factors of a product carry derivative parts."""


def _mat(rows) -> Matrix:
    m = tuple(tuple(as_expr(x) for x in row) for row in rows)
    if len(m) != 3 or any(len(row) != 3 for row in m):
        raise ValueError("expected a 3x3 matrix")
    return m


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(_sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def _sum(terms: Iterable[ScalarExpr]) -> ScalarExpr:
    total = ex.ZERO
    for t in terms:
        total = total + t
    return total


@dataclass(frozen=True)
class MatFn:
    """A p-dependent 3x3 matrix (U, spin matrices, parity twists)."""

    entries: Matrix

    def __post_init__(self):
        object.__setattr__(self, "entries", _mat(self.entries))

    @classmethod
    def identity(cls) -> "MatFn":
        return cls([[1 if i == j else 0 for j in range(3)] for i in range(3)])

    @classmethod
    def zeros(cls) -> "MatFn":
        return cls([[0] * 3 for _ in range(3)])

    @classmethod
    def from_columns(cls, cols) -> "MatFn":
        return cls([[cols[j][i] for j in range(3)] for i in range(3)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if isinstance(other, MatFn):
            return MatFn(_matmul(self.entries, other.entries))
        return NotImplemented

    def __add__(self, other: "MatFn") -> "MatFn":
        return MatFn([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatFn") -> "MatFn":
        return MatFn([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def scale(self, c) -> "MatFn":
        c = as_expr(c)
        return MatFn([[c * a for a in row] for row in self.entries])

    __rmul__ = scale

    @property
    def T(self) -> "MatFn":
        return MatFn([[self.entries[j][i] for j in range(3)] for i in range(3)])

    @property
    def H(self) -> "MatFn":
        """Conjugate transpose."""
        return MatFn([[conjugate(self.entries[j][i]) for j in range(3)] for i in range(3)])

    def map(self, fn) -> "MatFn":
        return MatFn([[fn(a) for a in row] for row in self.entries])

    def diff(self, i: int) -> "MatFn":
        return self.map(lambda a: diff(a, i))

    def column(self, j: int) -> "WaveFn":
        return WaveFn([self.entries[k][j] for k in range(3)])

    def dot(self, f: "WaveFn") -> "WaveFn":
        return WaveFn([_sum(self.entries[i][k] * f[k] for k in range(3)) for i in range(3)])

    def labelled(self, name: str = "M"):
        return [(f"{name}[{i + 1},{j + 1}]", self.entries[i][j]) for i in range(3) for j in range(3)]

    def __call__(self, point) -> np.ndarray:
        flat = [a for row in self.entries for a in row]
        return ex.evaluate_many(flat, np.asarray(point, float)[None, :])[:, 0].reshape(3, 3)


@dataclass(frozen=True)
class WaveFn:
    """A 3-component test function f(p).

    ``damping`` records the Gaussian width ``a`` of an overall ``exp(-a r^2)``
    factor; quadrature refuses functions without one.
    """

    components: tuple[ScalarExpr, ScalarExpr, ScalarExpr]
    damping: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", ex.vector(self.components))

    def __getitem__(self, i: int) -> ScalarExpr:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: "WaveFn") -> "WaveFn":
        return WaveFn([a + b for a, b in zip(self, other)], _common_damping(self, other))

    def __sub__(self, other: "WaveFn") -> "WaveFn":
        return WaveFn([a - b for a, b in zip(self, other)], _common_damping(self, other))

    def scale(self, c) -> "WaveFn":
        c = as_expr(c)
        return WaveFn([c * a for a in self], self.damping)

    def dot(self, other) -> ScalarExpr:
        """Bilinear (no conjugation) dot product with a vector of expressions."""
        return _sum(a * as_expr(b) for a, b in zip(self, other))

    def cross(self, other) -> "WaveFn":
        """``other x self``: the vector product with ``other`` on the left."""
        o = [as_expr(x) for x in other]
        f = self.components
        return WaveFn([o[1] * f[2] - o[2] * f[1], o[2] * f[0] - o[0] * f[2], o[0] * f[1] - o[1] * f[0]],
                      self.damping)

    def labelled(self, name: str = "f"):
        return [(f"{name}[{i + 1}]", c) for i, c in enumerate(self.components)]

    def __call__(self, points) -> np.ndarray:
        """Values at (N, 3) points, shape (N, 3)."""
        pts = np.asarray(points, float)
        single = pts.ndim == 1
        vals = ex.evaluate_many(self.components, pts.reshape(-1, 3)).T
        return vals[0] if single else vals


def _common_damping(f, g):
    if f.damping is None or g.damping is None:
        return None
    return min(f.damping, g.damping)


@dataclass(frozen=True)
class LinOp:
    """``A(p) + sum_i b_i(p) d/dp_i``, A a 3x3 expression matrix, b scalar."""

    A: Matrix
    b: tuple[ScalarExpr, ScalarExpr, ScalarExpr] = field(default=(ex.ZERO, ex.ZERO, ex.ZERO))

    def __post_init__(self):
        A = self.A.entries if isinstance(self.A, MatFn) else self.A
        object.__setattr__(self, "A", _mat(A))
        object.__setattr__(self, "b", ex.vector(self.b))

    @classmethod
    def zero(cls) -> "LinOp":
        return cls(MatFn.zeros().entries)

    @classmethod
    def scalar(cls, c) -> "LinOp":
        """Multiplication by a scalar function (times the identity matrix)."""
        c = as_expr(c)
        return cls(MatFn.identity().scale(c).entries)

    @classmethod
    def matrix(cls, m: MatFn) -> "LinOp":
        return cls(m.entries)

    @classmethod
    def derivative(cls, coeffs) -> "LinOp":
        return cls(MatFn.zeros().entries, coeffs)

    @property
    def mat(self) -> MatFn:
        return MatFn(self.A)

    @property
    def is_multiplicative(self) -> bool:
        return all(c.is_zero for c in self.b)

    @property
    def scalar_part(self) -> ScalarExpr | None:
        """The scalar c if A is structurally c times the identity, else None."""
        d = self.A[0][0]
        for i in range(3):
            for j in range(3):
                if i == j and self.A[i][j] is not d:
                    return None
                if i != j and not self.A[i][j].is_zero:
                    return None
        return d

    def __add__(self, other: "LinOp") -> "LinOp":
        return LinOp((self.mat + other.mat).entries, [a + b for a, b in zip(self.b, other.b)])

    def __sub__(self, other: "LinOp") -> "LinOp":
        return LinOp((self.mat - other.mat).entries, [a - b for a, b in zip(self.b, other.b)])

    def __neg__(self) -> "LinOp":
        return self.scale(-1)

    def scale(self, c) -> "LinOp":
        """Left multiplication by a scalar function (or number)."""
        c = as_expr(c)
        return LinOp(self.mat.scale(c).entries, [c * x for x in self.b])

    def __mul__(self, c) -> "LinOp":
        if isinstance(c, LinOp):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return compose(self, other)

    def labelled(self):
        return self.mat.labelled("A") + [(f"b[{i + 1}]", c) for i, c in enumerate(self.b)]

    def show(self) -> str:
        lines = ["A ="]
        for row in self.A:
            lines.append("  [ " + " | ".join(str(e) for e in row) + " ]")
        for i, c in enumerate(self.b):
            lines.append(f"b{i + 1} = {c}")
        return "\n".join(lines)


def apply(op: LinOp, f: WaveFn) -> WaveFn:
    """``A f + sum_i b_i df/dp_i``, exactly."""
    out = []
    for i in range(3):
        terms = [op.A[i][k] * f[k] for k in range(3)]
        terms += [op.b[k] * diff(f[i], k + 1) for k in range(3)]
        out.append(_sum(terms))
    return WaveFn(out, f.damping)


def commutator(o1: LinOp, o2: LinOp) -> LinOp:
    A1, A2 = o1.mat, o2.mat
    m = A1 @ A2 - A2 @ A1
    for k in range(3):
        if not o1.b[k].is_zero:
            m = m + A2.diff(k + 1).scale(o1.b[k])
        if not o2.b[k].is_zero:
            m = m - A1.diff(k + 1).scale(o2.b[k])
    b = [
        _sum(o1.b[k] * diff(o2.b[j], k + 1) - o2.b[k] * diff(o1.b[j], k + 1) for k in range(3))
        for j in range(3)
    ]
    return LinOp(m.entries, b)


def compose(o1: LinOp, o2: LinOp) -> LinOp:
    """The product ``o1 o2``; at least one factor must be multiplicative.

    The multiplicative factor must be a scalar function when the other one
    differentiates, otherwise the derivative coefficients would be matrices.
    """
    if not o1.is_multiplicative and not o2.is_multiplicative:
        raise SecondOrderError("both operators carry derivative parts; the product is second order")
    A1, A2 = o1.mat, o2.mat
    if o1.is_multiplicative:
        if o2.is_multiplicative:
            return LinOp((A1 @ A2).entries)
        c = o1.scalar_part
        if c is None:
            raise OperatorClosureError("matrix-valued multiplier in front of a derivative")
        return LinOp((A1 @ A2).entries, [c * x for x in o2.b])
    c = o2.scalar_part
    if c is None:
        raise OperatorClosureError("derivative acting on a matrix-valued multiplier")
    m = A1 @ A2
    for k in range(3):
        if not o1.b[k].is_zero:
            m = m + A2.diff(k + 1).scale(o1.b[k])
    return LinOp(m.entries, [x * c for x in o1.b])


def formal_adjoint(op: LinOp) -> LinOp:
    """Adjoint for the flat scalar product sum_i int f_i^* g_i d^3p (integration by parts)."""
    div_b = _sum(diff(conjugate(op.b[k]), k + 1) for k in range(3))
    m = op.mat.H - MatFn.identity().scale(div_b)
    return LinOp(m.entries, [-conjugate(x) for x in op.b])


def unitary_conjugate(V: MatFn, op: LinOp) -> LinOp:
    """``V op V^dagger`` for a multiplicative unitary V."""
    Vh = V.H
    m = V @ op.mat @ Vh
    for k in range(3):
        if not op.b[k].is_zero:
            m = m + (V @ Vh.diff(k + 1)).scale(op.b[k])
    return LinOp(m.entries, op.b)


def _neg(m: MatFn) -> MatFn:
    return m.map(substitute_neg)


def parity_conjugate(V: MatFn, op: LinOp) -> LinOp:
    """``Pi_V op Pi_V`` with ``(Pi_V f)(p) = V(p) f(-p)``.

    Requires ``V(p) V(-p) = 1``; the derivative part then stays scalar.
    """
    Vm = _neg(V)
    m = V @ _neg(op.mat) @ Vm
    for k in range(3):
        if not op.b[k].is_zero:
            bk = substitute_neg(op.b[k])
            m = m + (V @ _neg(V.diff(k + 1))).scale(bk)
    return LinOp(m.entries, [-substitute_neg(x) for x in op.b])


def antiunitary_conjugate(V: MatFn, op: LinOp) -> LinOp:
    """``Theta_V op Theta_V`` with ``(Theta_V f)(p) = V(p) f*(-p)``.

    Requires ``V(p) conj(V(-p)) = 1``.
    """
    cn = lambda e: conjugate(substitute_neg(e))  # noqa: E731
    Vc = V.map(cn)
    m = V @ op.mat.map(cn) @ Vc
    for k in range(3):
        if not op.b[k].is_zero:
            m = m + (V @ V.diff(k + 1).map(cn)).scale(cn(op.b[k]))
    return LinOp(m.entries, [-cn(x) for x in op.b])


# -- zero testing -------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    point: tuple[float, float, float] | None
    entry: str
    value: complex

    def as_dict(self) -> dict:
        return {
            "point": None if self.point is None else [float(x) for x in self.point],
            "entry": self.entry,
            "value": [float(self.value.real), float(self.value.imag)],
        }


@dataclass(frozen=True)
class ZeroTest:
    passed: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.passed


def zero_test(labelled: Sequence[tuple[str, ScalarExpr]], points, tol: float = 1e-9) -> ZeroTest:
    """Check ``|value| <= tol * (1 + scale)`` for every expression at every point.

    ``scale`` bounds the magnitudes of the terms that were summed into the
    value, so rounding residue from cancellation passes while a genuine
    nonzero fails.  The first violation in (point, entry) order is returned.
    """
    labels = [lab for lab, _ in labelled]
    exprs = [e for _, e in labelled]
    pts = np.asarray(points, float).reshape(-1, 3)
    if not exprs or len(pts) == 0:
        return ZeroTest(True)
    vals, scales = ex.evaluate_many(exprs, pts, with_scale=True)
    bad = np.abs(vals) > tol * (1.0 + scales)
    if not bad.any():
        return ZeroTest(True)
    n, k = divmod(int(np.flatnonzero(bad.T)[0]), len(exprs))
    return ZeroTest(False, Witness(tuple(float(x) for x in pts[n]), labels[k], complex(vals[k, n])))


def op_is_zero(op: LinOp, points, tol: float = 1e-9) -> ZeroTest:
    return zero_test(op.labelled(), points, tol)


def check_unitary(V: MatFn, points, tol: float = 1e-9) -> ZeroTest:
    return zero_test((V @ V.H - MatFn.identity()).labelled("VV^H-1"), points, tol)


def check_involution(V: MatFn, points, tol: float = 1e-9, antiunitary: bool = False) -> ZeroTest:
    other = V.map(lambda e: conjugate(substitute_neg(e))) if antiunitary else _neg(V)
    return zero_test((V @ other - MatFn.identity()).labelled("V(p)V(-p)-1"), points, tol)
