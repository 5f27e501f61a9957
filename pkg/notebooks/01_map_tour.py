"""
A tour of the map
=================

Build the map for K = 1.5, delta = 0.05, look at where points land and what
the map does to them, and check the distortion piece by piece.
"""

import cmath

from qrjulia import LocalPoint, beltrami, classify, evaluate, params_new
from qrjulia.coding import word_str

p = params_new(1.5, 0.05)
print(f"lambda = {p.lam:.10f}, t0 = {p.t0:.10f}, alpha = {p.alpha}")

###############################################################################
# Regions
# -------
# Far from +-1 the map is lambda (z^2 - 1).  Two thin annuli blend it into
# the Cantor machinery that lives inside D(+-1, delta).

for z in (2, 1 + 0.075j, -1.075, 1.03, 1.0, 1 + 1e-4):
    r = classify(z, p)
    print(f"{z!s:>14}  {r.tag:14} word={word_str(r.word) or '-':4} level={r.level}")

###############################################################################
# Values
# ------
# f(1.03) lands back at level 0, outside the holes.

print(evaluate(2, p), 3 * p.lam)
print(evaluate(1.03, p))

# Deep points are kept in local coordinates.  A center a_u goes to a_tau(u).
q = LocalPoint.center((1, -1, -1, 1))
print(evaluate(q, p))

###############################################################################
# Distortion
# ----------
# |mu| is zero where the map is conformal, (K-1)/(K+1) = 0.2 on the radial
# stretches, and small on the blending annuli.

for z in (2, 1.03, 1 + 0.075j, 1 + 0.099 * cmath.exp(2j)):
    print(f"{z!s:>30}  |mu| = {abs(beltrami(z, p)):.6f}")
