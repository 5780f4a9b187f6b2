"""Walk through the energy certificate for a few cuff-length profiles.

    python3 demos/verdict_walkthrough.py

For each profile: the level energies, the calibrated constant K with
E_n <= K n^{-r}, the tail bound past the truncation depth and the verdict.
"""

from cantortree.analysis import dirichlet_certificate
from cantortree.surface import ConstantProfile, PowerProfile, build_tree

cases = [
    ("power r=2", PowerProfile(2.0, 1, 1), 20, 0),
    ("power r=1.5, jitter 0.1", PowerProfile(1.5, 1, 1, jitter=0.1, seed=1), 14, 0),
    ("power r=2, blooming C=1", PowerProfile(2.0, 1, 1), 20, 1),
    ("power r=1", PowerProfile(1.0, 1, 1), 20, 0),
    ("constant length 1", ConstantProfile(1.0), 12, 0),
]

for label, profile, depth, genus_cap in cases:
    tree = build_tree(profile, depth, strict=False)
    rep = dirichlet_certificate(tree, genus_cap=genus_cap)
    print(f"== {label} (depth {depth})")
    for rec in rep.per_level[:: max(1, depth // 5)]:
        print(f"   level {rec['n']:2d}: energy {rec['energy']:.4e}")
    if rep.tail_bound is not None:
        print(f"   K = {rep.K_calibrated:.4g}, partial sum {rep.partial_sums[-1]:.4g}, "
              f"tail <= {rep.tail_bound:.4g}, total <= {rep.total_bound:.4g}")
    print(f"   verdict: {rep.verdict.value}" + (f" ({rep.reason})" if rep.reason else ""))
