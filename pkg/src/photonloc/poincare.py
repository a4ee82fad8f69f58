"""Generators, helicity and position operators for momentum-space photon states.

Units hbar = c = 1, metric (+,-,-,-), p0 = |p|.  Four generator sets are
built:

``original``  P, M = L + S, N = K + n
``lk``        P, L, K (orbital parts only; helicity zero)
``hat``       P, U L U^T, U K U^T (spinless triplet)
``tilde``     P, U M U^T, U N U^T

U is the real orthogonal matrix whose columns are the spherical unit vectors
(theta-hat, phi-hat, p/|p|).  For ``hat`` and ``tilde`` parity and time
reversal are the transported involutions U Pi U^T and U Theta U^T, which act
as ``f(p) -> V(p) f(-p)`` (resp. ``f*(-p)``) with the twist

    V(p) = U(p) U^T(-p) = e1 e1^T - e2 e2^T - e3 e3^T,

using e1(-p) = e1(p), e2(-p) = -e2(p), e3(-p) = -e3(p).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import exprcore as ex
from .exprcore import I, p1, p2, p3, r, rho
from .operators import (
    LinOp, MatFn, WaveFn, compose, unitary_conjugate, zero_test,
)

__all__ = [
    "EPS", "Representation", "spin_matrices", "u_matrix", "polarization_basis",
    "momentum", "flat_position", "orbital_angular_momentum", "orbital_boost",
    "spin_boost", "rotations", "boosts", "helicity_original", "pryce_x",
    "hawton_q", "hawton_q_fixed_s3", "hawton_q_conjugated", "representation", "helicity",
    "pauli_lubanski", "subspace_membership", "catalog_wavefns", "random_wavefn",
    "operator_catalog", "wavefn_catalog", "show",
]

P = (p1, p2, p3)
PI = tuple(x / r for x in P)


def _levi_civita():
    eps = np.zeros((3, 3, 3), dtype=int)
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i, j, k] = 1
        eps[i, k, j] = -1
    return eps


EPS = _levi_civita()


def cross_components(a, b):
    """(a x b)_i = eps_ijk a_j b_k for anything supporting * and +/-."""
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


@lru_cache(maxsize=None)
def spin_matrices() -> tuple[MatFn, MatFn, MatFn]:
    """Spin-1 matrices (S_k)_ij = -i eps_kij."""
    return (
        MatFn([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
        MatFn([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]]),
        MatFn([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
    )


@lru_cache(maxsize=None)
def polarization_basis() -> tuple[WaveFn, WaveFn, WaveFn]:
    """theta-hat, phi-hat, p/|p| written with the radicals r and rho."""
    e1 = WaveFn([p3 * p1 / (r * rho), p3 * p2 / (r * rho), -rho / r])
    e2 = WaveFn([-p2 / rho, p1 / rho, 0])
    e3 = WaveFn(PI)
    return e1, e2, e3


@lru_cache(maxsize=None)
def u_matrix() -> MatFn:
    return MatFn.from_columns([tuple(e) for e in polarization_basis()])


@lru_cache(maxsize=None)
def parity_twist() -> MatFn:
    U = u_matrix()
    return U @ U.map(ex.substitute_neg).T


# -- generators ----------------------------------------------------------------

@lru_cache(maxsize=None)
def momentum() -> tuple[LinOp, LinOp, LinOp, LinOp]:
    """P^0, P^1, P^2, P^3 as multiplication operators."""
    return (LinOp.scalar(r),) + tuple(LinOp.scalar(x) for x in P)


def _axis(i, c):
    b = [0, 0, 0]
    b[i] = c
    return b


@lru_cache(maxsize=None)
def flat_position() -> tuple[LinOp, LinOp, LinOp]:
    """Q^i = i d/dp_i."""
    return tuple(LinOp.derivative(_axis(i, I)) for i in range(3))


@lru_cache(maxsize=None)
def orbital_angular_momentum() -> tuple[LinOp, LinOp, LinOp]:
    """L = -i p x d/dp."""
    out = []
    for i in range(3):
        b = [ex.ZERO] * 3
        for j in range(3):
            for k in range(3):
                if EPS[i, j, k]:
                    b[k] = b[k] + (-1j * EPS[i, j, k]) * P[j]
        out.append(LinOp.derivative(b))
    return tuple(out)


@lru_cache(maxsize=None)
def orbital_boost() -> tuple[LinOp, LinOp, LinOp]:
    """K = i (p0 d/dp + pi / 2)."""
    return tuple(LinOp(MatFn.identity().scale(0.5j * PI[i]), _axis(i, I * r)) for i in range(3))


def _spin_ops():
    return tuple(LinOp.matrix(s) for s in spin_matrices())


@lru_cache(maxsize=None)
def spin_boost() -> tuple[LinOp, LinOp, LinOp]:
    """n = pi x S."""
    S = spin_matrices()
    out = []
    for i in range(3):
        m = MatFn.zeros()
        for j in range(3):
            for k in range(3):
                if EPS[i, j, k]:
                    m = m + S[k].scale(EPS[i, j, k] * PI[j])
        out.append(LinOp.matrix(m))
    return tuple(out)


@lru_cache(maxsize=None)
def rotations() -> tuple[LinOp, LinOp, LinOp]:
    """M = L + S."""
    return tuple(l + s for l, s in zip(orbital_angular_momentum(), _spin_ops()))


@lru_cache(maxsize=None)
def boosts() -> tuple[LinOp, LinOp, LinOp]:
    """N = K + n."""
    return tuple(k + n for k, n in zip(orbital_boost(), spin_boost()))


@lru_cache(maxsize=None)
def helicity_original() -> LinOp:
    """Lambda = pi . S, acting as f -> -i pi x f."""
    S = spin_matrices()
    return LinOp.matrix(S[0].scale(PI[0]) + S[1].scale(PI[1]) + S[2].scale(PI[2]))


@lru_cache(maxsize=None)
def pryce_x() -> tuple[LinOp, LinOp, LinOp]:
    """X_P^i = i d/dp_i + eps_ijk p_j S_k / p0^2."""
    S = spin_matrices()
    out = []
    for i, q in enumerate(flat_position()):
        m = MatFn.zeros()
        for j in range(3):
            for k in range(3):
                if EPS[i, j, k]:
                    m = m + S[k].scale(EPS[i, j, k] * P[j] / r ** 2)
        out.append(q + LinOp.matrix(m))
    return tuple(out)


def _hawton(spin3: MatFn) -> tuple[LinOp, LinOp, LinOp]:
    S = spin_matrices()
    e2 = polarization_basis()[1]
    cot = p3 / rho
    pxS = cross_components(P, S)
    out = []
    for i, q in enumerate(flat_position()):
        m = pxS[i].scale(1 / r ** 2) - spin3.scale(cot / r * e2[i])
        out.append(q + LinOp.matrix(m))
    return tuple(out)


@lru_cache(maxsize=None)
def hawton_q() -> tuple[LinOp, LinOp, LinOp]:
    """Closed form i d/dp + (p x S)/p0^2 - (cot theta / p0) e2 S3~, written out directly.

    S3~ = U S3 U^T is the third spin matrix of the rotated frame; since the
    third column of U is pi and det U = 1 it equals pi . S.
    """
    return _hawton(helicity_original().mat)


@lru_cache(maxsize=None)
def hawton_q_fixed_s3() -> tuple[LinOp, LinOp, LinOp]:
    """Same display with the fixed matrix S3; differs from U Q U^T in components 1, 2."""
    return _hawton(spin_matrices()[2])


@lru_cache(maxsize=None)
def hawton_q_conjugated() -> tuple[LinOp, LinOp, LinOp]:
    """U Q U^T, built by conjugation."""
    U = u_matrix()
    return tuple(unitary_conjugate(U, q) for q in flat_position())


# -- representations -----------------------------------------------------------

@dataclass(frozen=True)
class Representation:
    name: str
    P: tuple[LinOp, LinOp, LinOp, LinOp]
    J: tuple[LinOp, LinOp, LinOp]
    B: tuple[LinOp, LinOp, LinOp]
    parity_twist: MatFn
    timerev_twist: MatFn
    helicity: LinOp

    @property
    def generators(self) -> list[tuple[str, LinOp]]:
        out = [(f"P{mu}", g) for mu, g in enumerate(self.P)]
        out += [(f"J{i + 1}", g) for i, g in enumerate(self.J)]
        out += [(f"B{i + 1}", g) for i, g in enumerate(self.B)]
        return out

    @property
    def helicity_is_zero(self) -> bool:
        return all(e.is_zero for _, e in self.helicity.labelled())


REPRESENTATIONS = ("original", "lk", "hat", "tilde")


@lru_cache(maxsize=None)
def representation(name: str) -> Representation:
    ident = MatFn.identity()
    if name == "original":
        return Representation(name, momentum(), rotations(), boosts(), ident, ident, helicity_original())
    if name == "lk":
        return Representation(name, momentum(), orbital_angular_momentum(), orbital_boost(),
                              ident, ident, LinOp.zero())
    U, V = u_matrix(), parity_twist()
    if name == "hat":
        J = tuple(unitary_conjugate(U, g) for g in orbital_angular_momentum())
        B = tuple(unitary_conjugate(U, g) for g in orbital_boost())
        return Representation(name, momentum(), J, B, V, V, LinOp.zero())
    if name == "tilde":
        J = tuple(unitary_conjugate(U, g) for g in rotations())
        B = tuple(unitary_conjugate(U, g) for g in boosts())
        return Representation(name, momentum(), J, B, V, V, unitary_conjugate(U, helicity_original()))
    raise KeyError(f"unknown representation {name!r}; expected one of {REPRESENTATIONS}")


def helicity(rep: Representation | str) -> LinOp:
    if isinstance(rep, str):
        rep = representation(rep)
    return rep.helicity


def pauli_lubanski(rep: Representation | str) -> tuple[LinOp, LinOp, LinOp, LinOp]:
    """W^0 = P . J and W = P^0 J + P x B.

    The ``+`` matches the boost sign fixed by [B^i, P^j] = i delta_ij P^0;
    with it W vanishes for (L, K) and equals Lambda P for (M, N).
    """
    if isinstance(rep, str):
        rep = representation(rep)
    P, J, B = rep.P, rep.J, rep.B
    w0 = compose(P[1], J[0]) + compose(P[2], J[1]) + compose(P[3], J[2])
    ws = []
    for i in range(3):
        w = compose(P[0], J[i])
        for j in range(3):
            for k in range(3):
                if EPS[i, j, k]:
                    w = w + compose(P[j + 1], B[k]).scale(EPS[i, j, k])
        ws.append(w)
    return (w0, *ws)


def pauli_lubanski_minus(rep: Representation | str) -> tuple[LinOp, LinOp, LinOp, LinOp]:
    """The variant W = P^0 J - P x B, kept to document that it does not vanish for (L, K)."""
    if isinstance(rep, str):
        rep = representation(rep)
    w = pauli_lubanski(rep)
    P, B = rep.P, rep.B
    out = [w[0]]
    for i in range(3):
        extra = LinOp.zero()
        for j in range(3):
            for k in range(3):
                if EPS[i, j, k]:
                    extra = extra + compose(P[j + 1], B[k]).scale(2 * EPS[i, j, k])
        out.append(w[i + 1] - extra)
    return tuple(out)


def subspace_membership(f: WaveFn, points, tol: float = 1e-9) -> str:
    """'transverse' if p . f = 0, 'longitudinal' if p x f = 0, else 'mixed'."""
    if zero_test([("p.f", f.dot(P))], points, tol):
        return "transverse"
    if zero_test(f.cross(P).labelled("pxf"), points, tol):
        return "longitudinal"
    return "mixed"


# -- test functions ------------------------------------------------------------

@lru_cache(maxsize=None)
def catalog_wavefns() -> dict[str, tuple[WaveFn, str]]:
    """Named Gaussian-damped test functions with their subspace class."""
    g = ex.exp(-r ** 2)
    e1, e2, _ = polarization_basis()
    return {
        "gauss": (WaveFn([g, 0, 0], 1.0), "mixed"),
        "radial-gauss": (WaveFn([g * x for x in P], 1.0), "longitudinal"),
        "radial-vortex": (WaveFn([g * (1 + 1j * p1 - p3 ** 2) * x for x in P], 1.0), "longitudinal"),
        "e1-transverse": (WaveFn(e1.scale(g).components, 1.0), "transverse"),
        "e2-transverse": (WaveFn(e2.scale(g).components, 1.0), "transverse"),
        "curl-transverse": (WaveFn([g * p2 * (1 + 0.5j * p3), -g * p1 * (1 + 0.5j * p3), 0], 1.0), "transverse"),
        "mixed-poly": (WaveFn([g * (1 + p2), 1j * g * p1 * p3, g * (0.3 - p1)], 1.0), "mixed"),
    }


def random_wavefn(rng: np.random.Generator, damping: float = 1.0) -> WaveFn:
    """Gaussian-damped function with random complex low-order polynomial coefficients.

    One term carries ``p1/rho`` so that the radicals are exercised.
    """
    g = ex.exp(-damping * r ** 2)
    monomials = [ex.ONE, p1, p2, p3, p1 * p2, p3 * p3, p1 / rho]
    comps = []
    for _ in range(3):
        c = rng.normal(size=len(monomials)) + 1j * rng.normal(size=len(monomials))
        poly = ex.ZERO
        for coef, mono in zip(c, monomials):
            poly = poly + complex(np.round(coef, 6)) * mono
        comps.append(g * poly)
    return WaveFn(comps, damping)


# -- named catalog -------------------------------------------------------------

def _indexed(prefix, ops, start=1):
    return {f"{prefix}{i + start}": (op,) for i, op in enumerate(ops)}


@lru_cache(maxsize=None)
def operator_catalog() -> dict[str, tuple[LinOp, ...]]:
    """Every named operator; groups (e.g. 'pryce') map to all components."""
    cat: dict[str, tuple[LinOp, ...]] = {}
    cat.update({f"S{i + 1}": (LinOp.matrix(s),) for i, s in enumerate(spin_matrices())})
    cat.update(_indexed("P", momentum(), start=0))
    for prefix, ops in [("Q", flat_position()), ("L", orbital_angular_momentum()), ("K", orbital_boost()),
                        ("n", spin_boost()), ("M", rotations()), ("N", boosts())]:
        cat.update(_indexed(prefix, ops))
        cat[prefix] = ops
    lam = helicity_original()
    cat["helicity"] = (lam,)
    cat["helicity-sq"] = (compose(lam, lam),)
    cat["helicity-tilde"] = (helicity("tilde"),)
    cat.update(_indexed("pryce-", pryce_x()))
    cat["pryce"] = pryce_x()
    cat.update(_indexed("hawton-", hawton_q()))
    cat["hawton-closed-form"] = hawton_q()
    cat["hawton-conjugated"] = hawton_q_conjugated()
    cat["U"] = (LinOp.matrix(u_matrix()),)
    cat["parity-twist"] = (LinOp.matrix(parity_twist()),)
    for i, e in enumerate(polarization_basis()):
        cat[f"e{i + 1}-tilde"] = (LinOp.matrix(MatFn.from_columns([tuple(e), (0, 0, 0), (0, 0, 0)])),)
    for name in ("hat", "tilde"):
        rep = representation(name)
        cat.update(_indexed(f"J{name}-", rep.J))
        cat.update(_indexed(f"B{name}-", rep.B))
    for name in REPRESENTATIONS:
        cat[f"W-{name}"] = pauli_lubanski(name)
    return cat


def wavefn_catalog() -> dict[str, WaveFn]:
    return {name: f for name, (f, _) in catalog_wavefns().items()}


def show(name: str) -> str:
    cat = operator_catalog()
    if name not in cat:
        raise KeyError(f"unknown operator {name!r}; catalog: {', '.join(sorted(cat))}")
    ops = cat[name]
    if len(ops) == 1:
        return f"{name}\n{ops[0].show()}"
    blocks = [f"{name}[{i}]\n{op.show()}" for i, op in enumerate(ops, start=1 if not name.startswith("W") else 0)]
    return "\n\n".join(blocks)
