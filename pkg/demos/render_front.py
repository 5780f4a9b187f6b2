"""Draw the lifted front of a power-profile Cantor tree (r = 1.5) to depth 6.

    python3 demos/render_front.py [out.svg]

Writes two pictures: the raw lift, whose root axis runs from i to
i*e^{oP}, and the inverted view, which folds the whole tree into the unit
half-disk.
"""

import sys
from pathlib import Path

from cantortree.render import IDENTITY, INVERT, arcs_bbox, emit_svg, lift_front
from cantortree.surface import PowerProfile, build_tree

out = Path(sys.argv[1] if len(sys.argv) > 1 else "front_r1.5.svg")
tree = build_tree(PowerProfile(1.5, 1.0, 1.0), 7)

for view, suffix in ((INVERT, ""), (IDENTITY, "_raw")):
    arcs = lift_front(tree, 6, view=view)
    path = out.with_name(out.stem + suffix + out.suffix)
    emit_svg(arcs, path)
    x0, x1, y0, y1 = arcs_bbox(arcs)
    print(f"{path}: {len(arcs)} arcs, x in [{x0:.4g}, {x1:.4g}], y in [{y0:.4g}, {y1:.4g}]")

root = next(a for a in lift_front(tree, 0) if a.name == "oP")
print(f"root axis from {root.endpoints[0]} to {root.endpoints[1]}")
