"""Frozen calibration constants.

Regenerate with ``python scripts/calibrate_k_pants.py``.
"""

import math

# sum_{n>=1} 1/n^2
T = math.pi**2 / 6

# 1.25 x max of numeric pants energy / (1/l1 + 1/l2 + 1/l3) over the pilot
# sweep: 1000 triples, log-uniform in [1e-6, 0.5], seed 20240601.
# The max ratio there is 12.5673872286, close to the 4*pi asymptote.
K_PANTS = 15.7092340358

SAFETY_FACTOR = 1.25
