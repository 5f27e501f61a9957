"""
Escape times
============

Every point outside the Cantor set eventually leaves D(0, 4) and never comes
back, so an escape-time picture shows a blank plane except on a set of area
zero.
"""

from pathlib import Path

import numpy as np

from qrjulia import cantor_point, params_new
from qrjulia.dynamics import escape_time, pgm_bytes, render_grid

p = params_new(1.5, 0.05)

###############################################################################
# Orbits of Cantor centers climb the address tree one letter per step, hit 0
# once the word is used up, and escape on the next step.

for u in [(1,), (1, -1), (-1, 1, 1, -1)]:
    rec = escape_time(cantor_point(u, p.scales, local=True), p, 20)
    print(u, [r.tag for r in rec.trace], "escaped at", rec.step)

# a long prefix stays put for as many steps as it has letters
rec = escape_time(cantor_point((1,) * 20, p.scales, local=True), p, 20)
print("length-20 prefix bounded for", rec.bounded_steps, "steps")

###############################################################################
# The plane at 256 x 256.  Nearly every pixel escapes on step 1.

img = render_grid(p, px=256, width=8.0, workers=4)
vals, counts = np.unique(img, return_counts=True)
print(dict(zip(vals.tolist(), counts.tolist())))
Path("bo_256.pgm").write_bytes(pgm_bytes(img))

# zoom onto the hole around +1
img = render_grid(p, center=1 + 0j, width=0.25, px=256)
print("zoom: escape times", sorted(set(img.ravel().tolist())))
