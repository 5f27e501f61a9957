"""
Backward orbits and the mass distribution principle
===================================================

Pull a point back through the map, spread mass evenly over the preimages,
and look at how much mass small disks can carry.
"""

import math

from qrjulia.geometry import Gauge, PowerGauge
from qrjulia.pullback import (arc_fraction, build_tree, expected_components, explicit_instance,
                              lemma4_check, level_count_check, mass_distribution,
                              quadratic_instance)
from qrjulia.qrmap import params_new

###############################################################################
# z^2 first: the preimages of 1 are roots of unity, so the measure is known.

sq = quadratic_instance(0)
tree = build_tree(sq, 1 + 0j, 14)
print(tree.counts)
print(level_count_check(tree, 2).passed)
rep = mass_distribution(tree, PowerGauge(1.0), radii=[0.1], centers=20)
print("mu(D(x, 0.1)) =", rep.table[0][2], " arc fraction =", arc_fraction(0.1))
print("0 is exceptional:", lemma4_check(sq, 0j), "point(s) in f^-6(0)")
print("components over D(0, 0.1):", expected_components(sq, 0, 0.1))

###############################################################################
# Now the quasiregular map, with h(t) = (log 1/t)^(-log 2/log K).

p = params_new(1.5, 0.05)
inst = explicit_instance(p)
tree = build_tree(inst, -1 + 0j, 10)
g = Gauge(2, p.K)
for m in (6, 8, 10):
    rep = mass_distribution(tree, g, level=m)
    print(f"m={m:2d}  N_m={tree.counts[m]:5d}  C_est={rep.C_est:.4f}")

# the ratio mu/h along the radii 10^-1 .. 10^-30 for one center
rows = [r for r in mass_distribution(tree, g, centers=1).table]
for _, x, mu, ratio in rows[::6]:
    print(f"r=1e-{round(x / math.log(10)):02d}  mu={mu:.5f}  mu/h={ratio:.3f}")
