#!/usr/bin/env python3
"""
The Pryce operator: covariant under rotations and translations, parity odd,
time-reversal even, commutes with the helicity projector.  Its components do
not commute with each other.

Run:  python3 demos/pryce_operator.py
"""
from photonloc import poincare as pc
from photonloc import verifier as v
from photonloc.operators import commutator

print(pc.show("pryce-1"))
print()

for r in v.check_position_conditions("pryce", "original"):
    line = f"{r.condition:<14} {r.status}"
    if r.witness is not None:
        w = r.witness
        line += f"   witness {w.entry} = {w.value:.6g} at {tuple(round(x, 4) for x in w.point)}"
    print(line)

# [X1, X2] is a multiplication operator: it only involves p and S.
X = pc.pryce_x()
c = commutator(X[0], X[1])
print()
print("[X1, X2] purely multiplicative:", c.is_multiplicative)
print(c.show())

# Formal self-adjointness is a pointwise identity; the quadrature check is
# an independent estimate of <g, X f> - <X g, f> on two damped test functions.
print()
for r in v.check_adjoints():
    if "X_P" in r.condition:
        print(f"{r.condition:<18} {r.status}   {r.notes}")
