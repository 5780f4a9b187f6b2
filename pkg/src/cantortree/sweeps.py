"""Randomized and grid sweeps of the inequalities the construction relies on.

Every sweep takes a ``numpy.random.Generator`` (or a grid size) and returns a
plain dict, so reports are reproducible byte for byte from the seed.
"""

import numpy as np

from .hyptrig import aux_inequalities, b1_bound, front_geometry, relative_length_margin, trig_gap
from .qc import beltrami_estimate, dilatation, k0_bound

MARGIN_FLOOR = -1e-12
LEVELS = tuple(range(1, 21))
C2_VALUES = (0.5, 1.0, 2.0)
ASINH_ONE_DIGITS = 0.88137


def log_uniform(rng, lo, hi, size):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def relative_length_sweep(rng, count, levels=LEVELS, c2_values=C2_VALUES):
    """Relative-length bounds for children no longer than ``C2/(n+1)^2``.

    Children are log-uniform over four decades below the cap, the split cuff
    log-uniform in ``[1e-6, 2]``.
    """
    cases = []
    for n in levels:
        for c2 in c2_values:
            cap = c2 / (n + 1) ** 2
            l1 = log_uniform(rng, 1e-6, 2.0, count)
            l2 = log_uniform(rng, cap * 1e-4, cap, count)
            l3 = log_uniform(rng, cap * 1e-4, cap, count)
            margin = np.atleast_1d(relative_length_margin(l1, l2, l3, c2, n))
            cases.append({"n": n, "C2": c2, "min_margin": float(margin.min())})
    worst = min(c["min_margin"] for c in cases)
    return {"samples_per_case": count, "cases": cases, "min_margin": worst,
            "pass": worst >= MARGIN_FLOOR}


def quad_p_sweep(rng, count, B=2.0):
    """The four estimates on quadrilateral P over log-uniform triples in ``[1e-6, 1]``."""
    b1 = np.empty(count)
    bound_ok = np.empty(count, bool)
    denom = np.empty(count)
    lin = np.empty(count)
    ratio_ok = np.empty(count, bool)
    ratio_margin = np.full(count, np.inf)
    lengths = log_uniform(rng, 1e-6, 1.0, (count, 3))
    for k, (l1, l2, l3) in enumerate(lengths):
        aux = aux_inequalities(l1, l2, l3, B)
        b1[k] = aux.b1
        bound_ok[k] = aux.b1_bound_ok
        denom[k] = aux.denom_bound_c
        lin[k] = aux.atanh_linear_c
        ratio_ok[k] = aux.p_vs_l1_ok
        if np.cosh(l3 / 2) <= 2:
            ratio_margin[k] = aux.p_vs_l1_ratio - aux.p_vs_l1_floor
    d_emp = float(b1.max())
    denom_cap = float(np.cosh(d_emp) ** 2)
    limit = float(b1_bound(1e-6))
    return {
        "samples": count,
        "B": B,
        "max_b1": d_emp,
        "b1_bound_ok": bool(bound_ok.all()),
        "max_denom_c": float(denom.max()),
        "denom_cap_cosh2_D": denom_cap,
        "denom_ok": bool(denom.max() <= denom_cap * (1 + 1e-12)),
        "max_atanh_linear_c": float(lin.max()),
        "p_vs_l1_ok": bool(ratio_ok.all()),
        "min_p_vs_l1_margin": float(ratio_margin.min()) if np.isfinite(ratio_margin).any() else None,
        "b1_bound_limit_at_1e-6": limit,
        "limit_ok": abs(limit - ASINH_ONE_DIGITS) < 1e-4,
        "pass": bool(bound_ok.all() and ratio_ok.all() and denom.max() <= denom_cap * (1 + 1e-12)
                     and abs(limit - ASINH_ONE_DIGITS) < 1e-4),
    }


def trig_sweep(nx=100, na=101):
    """Sign of ``sinh x/(A + cosh x) - tanh(x/(2A))`` against ``A - 1``."""
    xs = np.linspace(0.1 / nx, 0.1, nx)
    As = np.geomspace(0.1, 10.0, na)
    X, A = np.meshgrid(xs, As)
    gap = trig_gap(X, A)
    at_one = A == 1.0
    signs_ok = np.where(at_one, np.abs(gap) < 1e-14, np.sign(gap) == np.sign(A - 1.0))
    return {"grid": [nx, na], "mismatches": int((~signs_ok).sum()),
            "max_abs_gap_at_A_1": float(np.abs(gap[at_one]).max()) if at_one.any() else None,
            "pass": bool(signs_ok.all())}


def dilatation_sweep(nx=21, ny=41, D=None, h=1e-6):
    """Quoted dilatation against ``cosh(-y)`` and against a finite-difference
    Beltrami estimate on a grid ``0 <= x <= 2``, ``-D <= y <= -1e-3``."""
    if D is None:
        D = float(front_geometry(1.0, 1.0, 1.0).b1p)
    xs = np.linspace(0.0, 2.0, nx)
    ys = -np.geomspace(1e-3, D, ny)
    X, Y = np.meshgrid(xs, ys)
    K = dilatation(X, Y)
    rel = np.abs(K - np.cosh(-Y)) / np.cosh(-Y)
    fd = np.array([[beltrami_estimate(x, y, h)[1] for x in xs] for y in ys])
    fd_err = np.abs(fd - K)
    k0 = k0_bound(D)
    return {
        "grid": [nx, ny], "D": D,
        "max_rel_dev_cosh": float(rel.max()),
        "max_fd_mismatch": float(fd_err.max()),
        "k0": float(k0),
        "bounded_by_k0": bool(np.all(K <= k0 * (1 + 1e-12))),
        "pass": bool(rel.max() < 1e-12 and fd_err.max() < 1e-5 and np.all(K <= k0 * (1 + 1e-12))),
    }


def lemma_report(seed=0, count=10_000):
    """All sweeps under one seed; ``count`` samples per randomized case."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    report = {
        "seed": seed,
        "count": count,
        "margin_floor": MARGIN_FLOOR,
        "relative_length": relative_length_sweep(rng, count),
        "quad_p_estimates": quad_p_sweep(rng, count),
        "trig_inequality": trig_sweep(),
        "dilatation": dilatation_sweep(),
    }
    report["pass"] = all(report[k]["pass"] for k in ("relative_length", "quad_p_estimates", "trig_inequality", "dilatation"))
    return report
