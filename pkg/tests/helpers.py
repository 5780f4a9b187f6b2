"""Brute-force references shared by several test modules."""

import math

import numpy as np
from scipy import integrate


def brute_quad_energy(p_len, o_len, epsrel=1e-10):
    """Energy of v = y/d(x) on 0 <= y <= d(x), 0 <= x <= o_len, by scipy.dblquad
    of the raw squared gradient (no closed-form inner integral)."""
    tp = math.tanh(p_len)

    def d(x):
        return math.atanh(tp * math.cosh(x))

    def integrand(y, x):
        t = tp * math.cosh(x)
        dx = math.atanh(t)
        ddx = tp * math.sinh(x) / (1 - t * t)
        return (y * ddx / dx**2) ** 2 + 1 / dx**2

    value, err = integrate.dblquad(integrand, 0.0, o_len, 0.0, d, epsabs=0.0, epsrel=epsrel)
    return value


def log_uniform_triples(seed, count, lo, hi):
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(math.log(lo), math.log(hi), (count, 3)))


# one (criterion, passed, detail) tuple per acceptance check, printed at session end
ACCEPTANCE = []
