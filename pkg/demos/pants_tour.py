"""Geometry and foliation energy of single pairs of pants as the cuffs shrink.

    python3 demos/pants_tour.py

The energy grows like 1/L while staying under K_pants * (3/L); the ratio
tends to 2*pi/K_pants.
"""

import math

from cantortree import constants
from cantortree.foliation import pants_dirichlet
from cantortree.hyptrig import front_geometry

g = front_geometry(0.1, 0.05, 0.2)
print("front hexagon of (0.1, 0.05, 0.2):")
for key in ("p", "q", "o12", "o13", "o23", "a1", "b1p", "b1q"):
    print(f"   {key:4s} = {getattr(g, key):.12g}")

print("\n     L        energy      bound     ratio")
for k in range(1, 8):
    L = 10.0**-k
    e = pants_dirichlet(L, L, L)
    print(f"  1e-{k}  {e.numeric:11.5g}  {e.analytic_bound:9.5g}  {e.numeric / e.analytic_bound:.6f}")
print(f"  limit ratio 2*pi/K_pants = {2 * math.pi / constants.K_PANTS:.6f}")
