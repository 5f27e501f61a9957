"""
Gauge sums over the canonical covers
====================================

The 2^n disks D(a_u, s_n) cover the Cantor set.  Summing the logarithmic
gauge over them gives a bounded sequence, while any power t^s sums to zero:
the set has dimension 0 yet positive measure for h.
"""

from qrjulia.hausdorff import boxdim_sequence, cover_report, limit_value
from qrjulia.qrmap import params_new

p = params_new(1.5, 0.05)
rep = cover_report(p, 40)
for n, x, sd, sc, d in rep.rows[::5]:
    print(f"n={n:2d}  -log 2s_n={x:14.6g}  S={sc:.10f}  dim_est={d:.3e}")
print("limit", limit_value(p), "monotone:", rep.is_monotone())

###############################################################################
# The sums settle fast for large K and slowly for K close to 1, since the
# correction term decays like K^-n.

for K in (1.2, 1.5, 1.8):
    q = params_new(K, 0.05)
    r = cover_report(q, 40)
    print(K, r.rows[-1][3], limit_value(q))

###############################################################################
# Box-counting style estimates n log 2 / -log(2 s_n) tend to zero.

print([round(d, 5) for _, d in boxdim_sequence(p, 12)])
