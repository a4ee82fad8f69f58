#!/usr/bin/env python3
"""
Hawton's operator Qhat = U Q U^T, checked against each generator set.

Its components commute and it keeps the transverse subspace, but no single
representation makes it satisfy every condition while keeping helicity.

Run:  python3 demos/hawton_failures.py
"""
import numpy as np

from photonloc import poincare as pc
from photonloc import verifier as v
from photonloc.exprcore import SamplePlan, sample_points
from photonloc.operators import op_is_zero

points = sample_points(SamplePlan(seed=0, count=64))

# Two independent constructions of Qhat agree.
same = all(op_is_zero(a - b, points) for a, b in zip(pc.hawton_q(), pc.hawton_q_conjugated()))
print("closed form == U Q U^T:", same)

# Reading S3 in the closed form as the fixed matrix breaks the agreement in
# the first two components; the transported S3 (= pi . S) is what works.
lit = pc.hawton_q_fixed_s3()
print("with the fixed S3:      ", [bool(op_is_zero(a - b, points)) for a, b in zip(lit, pc.hawton_q_conjugated())])

for rep in ("original", "hat", "tilde"):
    print(f"\n-- {rep}")
    for r in v.check_position_conditions("hawton", rep):
        line = f"{r.condition:<14} {r.status:<13} expected {r.expected}"
        if r.witness is not None and r.status == v.FAIL:
            line += f"   {r.witness.entry} = {r.witness.value:.4g}"
        print(line)

# (a) rotation covariance fails in the original representation, seen on the
# simplest possible function (exp(-r^2), 0, 0).
print()
for r in v.check_rotation_witness():
    print(f"{r.condition:<28} {r.status:<6} {r.notes}")

# (b) the hat representation passes everything, but it has no spin.
W = pc.pauli_lubanski("hat")
print("\nhat: W identically zero:", all(op_is_zero(w, points) for w in W))

# (c) the tilde representation keeps helicity, and Qhat stops commuting with
# its projector; the obstruction is just [Q, Lambda^2] carried over by U.
rows = {r.condition: r for r in v.check_hawton_identities()}
for key in ("[Q^i,Lambda^2] != 0", "[Qhat^i,Lambda~^2] != 0", "[Qhat^i,Lambda~^2] = U[Q^i,Lambda^2]U^T"):
    print(f"{key:<42} {rows[key].status}")

w = rows["[Qhat^i,Lambda~^2] != 0"].witness
print("witness point", np.round(w.point, 4), w.entry, f"{w.value:.4g}")
