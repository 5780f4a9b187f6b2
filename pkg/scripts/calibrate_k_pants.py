"""Pilot sweep that fixes K_PANTS in src/cantortree/constants.py.

    python scripts/calibrate_k_pants.py
"""

import numpy as np

from cantortree.constants import SAFETY_FACTOR
from cantortree.foliation import pants_energy_ratio

SEED = 20240601
COUNT = 1000
LO, HI = 1e-6, 0.5


def main():
    rng = np.random.default_rng(SEED)
    triples = np.exp(rng.uniform(np.log(LO), np.log(HI), (COUNT, 3)))
    ratios = np.array([pants_energy_ratio(*t) for t in triples])
    worst = triples[np.argmax(ratios)]
    print(f"max ratio  {ratios.max():.12g} at {worst.tolist()}")
    print(f"K_PANTS =  {SAFETY_FACTOR * ratios.max():.12g}")


if __name__ == "__main__":
    main()
