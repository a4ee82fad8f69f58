#!/usr/bin/env python3
"""
Poincare brackets in four generator sets, and what the Pauli-Lubanski vector
says about each of them.

Run:  python3 demos/lie_algebra.py
"""
import numpy as np

from photonloc import poincare as pc
from photonloc import verifier as v
from photonloc.exprcore import SamplePlan, sample_points
from photonloc.operators import commutator, compose, op_is_zero

points = sample_points(SamplePlan(seed=0, count=64))

# All four sets close into the same algebra: (M, N) with spin, the spinless
# (L, K), and the two sets obtained by conjugating with U.
for rep in pc.REPRESENTATIONS:
    rows = v.check_lie_algebra(rep)
    print(f"{rep:<9}", "  ".join(f"{r.condition} {r.status}" for r in rows))

# The algebra alone does not see spin.  W does.
print()
for rep in pc.REPRESENTATIONS:
    W = pc.pauli_lubanski(rep)
    zero = all(op_is_zero(w, points) for w in W)
    lam_p = all(op_is_zero(w - compose(pc.helicity(rep), p), points) for w, p in zip(W, pc.momentum()))
    print(f"{rep:<9} W = 0: {str(zero):<6} W = Lambda P: {lam_p}")

# Helicity commutes with everything in the original set, so Lambda^2 splits
# the space into a transverse and a longitudinal part, each invariant.
lam = pc.helicity_original()
print()
print("[Lambda, G] = 0 for all ten generators:",
      all(op_is_zero(commutator(lam, g), points) for _, g in pc.representation("original").generators))

# A single bracket evaluated by hand at one point, for orientation.
L = pc.orbital_angular_momentum()
c = commutator(L[0], L[1]) - L[2].scale(1j)
print("[L1, L2] - i L3 at (1, 2, 3):")
print(np.round(c.mat((1.0, 2.0, 3.0)), 12))
