"""Right-angled pentagon, hexagon and Lambert-quadrilateral trigonometry.

Every function here is vectorized: cuff lengths may be floats or numpy
arrays of a common broadcast shape, and 0-d results come back as floats.

Conventions for a pair of pants with cuffs ``l1, l2, l3``: the front
right-angled hexagon has alternate sides ``l1/2, l2/2, l3/2`` joined by the
orthogeodesics ``o12, o23, o13``.  The orthogeodesic ``a1`` from the first
cuff to ``o23`` cuts the hexagon into the pentagon containing the arc ``p``
(next to ``o12`` and the second cuff) and the one containing ``q``.  The
perpendicular ``b1`` dropped from ``a1 ∩ o23`` onto ``o12`` splits the
``p``-pentagon into the Lambert quadrilaterals P (axis ``oP``) and R (axis
``oR``); ``b1q`` does the same for the ``q``-pentagon (Q and S).
"""

from dataclasses import dataclass, fields

import numpy as np

from .errors import ConsistencyError, DomainError, LengthError, PreconditionError

MIN_LENGTH = 1e-12
MAX_LENGTH = 50.0

# cosh(o12) is carried in log form past this size
LOG_SPACE_THRESHOLD = 1e8

ASINH_ONE = float(np.arcsinh(1.0))


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def check_lengths(*lengths):
    """Validate cuff lengths and return them as float arrays."""
    out = []
    for value in lengths:
        arr = np.asarray(value, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise LengthError("cuff lengths must be finite")
        if np.any(arr < MIN_LENGTH) or np.any(arr > MAX_LENGTH):
            raise LengthError(
                f"cuff lengths must lie in [{MIN_LENGTH:g}, {MAX_LENGTH:g}], got "
                f"min={arr.min():.6g}, max={arr.max():.6g}"
            )
        out.append(arr)
    return out


@dataclass(frozen=True)
class PantsTriple:
    """Cuff lengths of one geodesic pair of pants.

    ``l1`` is the cuff being split into ``p`` and ``q``; ``l2`` sits on the
    ``p`` side and ``l3`` on the ``q`` side.
    """

    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        check_lengths(self.l1, self.l2, self.l3)

    def __iter__(self):
        return iter((self.l1, self.l2, self.l3))

    def swapped(self):
        return PantsTriple(self.l1, self.l3, self.l2)


def acosh_stable(z):
    """acosh(z) for z >= 1 with a series near 1."""
    z = np.asarray(z, dtype=float)
    u = z - 1.0
    if np.any(u < 0):
        raise DomainError("acosh argument below 1")
    small = u < 1e-8
    with np.errstate(invalid="ignore"):
        direct = np.log(z + np.sqrt((z - 1.0) * (z + 1.0)))
    series = np.sqrt(2.0 * u) * (1.0 - u / 12.0)
    return _scalar(np.where(small, series, direct))


def acosh_from_log(log_z):
    """acosh(exp(log_z)) without forming exp(log_z) when it is large."""
    log_z = np.asarray(log_z, dtype=float)
    big = log_z > 1.0
    safe = np.where(big, log_z, 1.0)
    large = safe + np.log1p(np.sqrt(-np.expm1(-2.0 * safe)))
    small = acosh_stable(np.exp(np.where(big, 0.0, log_z)))
    return _scalar(np.where(big, large, small))


def log_cosh_o12(l1, l2, l3):
    """log cosh of the orthogeodesic between the first two cuffs."""
    l1, l2, l3 = check_lengths(l1, l2, l3)
    h1, h2, h3 = l1 / 2, l2 / 2, l3 / 2
    value = (
        np.log(np.cosh(h3) + np.cosh(h1) * np.cosh(h2))
        - np.log(np.sinh(h1))
        - np.log(np.sinh(h2))
    )
    return _scalar(value)


def cosh_o12(l1, l2, l3):
    """cosh of the orthogeodesic o12, by the right-angled hexagon formula.

    ``cosh(l3/2) / (sinh(l1/2) sinh(l2/2)) + coth(l1/2) coth(l2/2)``, evaluated
    as ``(cosh(l3/2) + cosh(l1/2)cosh(l2/2)) / (sinh(l1/2) sinh(l2/2))`` in log
    space.
    """
    log_c = np.asarray(log_cosh_o12(l1, l2, l3))
    if np.any(log_c > np.log(np.finfo(float).max)):
        raise OverflowError("cosh(o12) exceeds the float range; use log_cosh_o12")
    return _scalar(np.exp(log_c))


def o12_length(l1, l2, l3):
    return acosh_from_log(log_cosh_o12(l1, l2, l3))


def arc_p(l1, l2, l3):
    """Length of the arc p of the first cuff inside the p-pentagon.

    Closed form ``atanh(sinh(l1/2) / (cosh(l3/2)/cosh(l2/2) + cosh(l1/2)))``,
    rewritten as ``½ log1p(2 sinh(l1/2) / (A + e^{-l1/2}))`` with
    ``A = cosh(l3/2)/cosh(l2/2)`` so it stays accurate for long and short
    cuffs alike.  The arc q is ``arc_p(l1, l3, l2)``; for ``l2 == l3`` the
    value is exactly ``l1/4``.
    """
    l1, l2, l3 = check_lengths(l1, l2, l3)
    x = l1 / 2
    ratio = np.cosh(l3 / 2) / np.cosh(l2 / 2)
    p = 0.5 * np.log1p(2.0 * np.sinh(x) / (ratio + np.exp(-x)))
    # equal children: the closed form collapses to l1/4
    return _scalar(np.where(l2 == l3, l1 / 4, p))


def pentagon_residual(l1, l2, l3):
    """tanh(p) cosh(o12) tanh(l2/2) - 1, which vanishes identically."""
    p = np.asarray(arc_p(l1, l2, l3))
    log_c = np.asarray(log_cosh_o12(l1, l2, l3))
    l2 = np.asarray(l2, dtype=float)
    log_prod = np.log(np.tanh(p)) + log_c + np.log(np.tanh(l2 / 2))
    return _scalar(np.expm1(log_prod))


@dataclass(frozen=True)
class FrontGeometry:
    """Arc lengths of the front hexagon's quadrilateral decomposition.

    ``arc2``/``arc3`` are the cuff sides of R and S, i.e. the front halves
    ``l2/2`` and ``l3/2``.  ``s`` is the piece of ``o23`` between the second
    cuff and ``a1``; ``s3`` the piece between ``a1`` and the third cuff.
    """

    l1: float
    l2: float
    l3: float
    p: float
    q: float
    a1: float
    b1p: float
    b1q: float
    oP: float
    oR: float
    oQ: float
    oS: float
    s: float
    s3: float
    o12: float
    o13: float
    o23: float
    log_cosh_o12: float
    log_cosh_o13: float
    arc2: float
    arc3: float

    def as_dict(self):
        return {f.name: _scalar(getattr(self, f.name)) for f in fields(self)}


def _pentagon_side(l1, l2, l3, p):
    """a1, s and b1 for the pentagon holding p (second cuff l2)."""
    h2 = l2 / 2
    a1 = np.arcsinh(np.cosh(h2) / np.sinh(p))
    s = np.arcsinh(np.cosh(p) / np.sinh(h2))
    b1 = np.arcsinh(np.sinh(p) * np.cosh(a1))
    b1_alt = np.arcsinh(np.sinh(h2) * np.cosh(s))
    rel = np.abs(b1 - b1_alt) / b1
    if np.any(rel > 1e-8):
        raise ConsistencyError(
            f"Lambert b1 formulas disagree (max rel {np.max(rel):.3g}); "
            "switch to a high-precision evaluation"
        )
    o_axis = acosh_stable(np.tanh(b1) / np.tanh(p))
    return a1, s, b1, np.asarray(o_axis)


def front_geometry(l1, l2, l3):
    """Derived lengths of the front hexagon of the pants ``(l1, l2, l3)``."""
    l1, l2, l3 = check_lengths(l1, l2, l3)
    p = np.asarray(arc_p(l1, l2, l3))
    q = np.asarray(arc_p(l1, l3, l2))
    a1, s, b1p, oP = _pentagon_side(l1, l2, l3, p)
    a1q, s3, b1q, oQ = _pentagon_side(l1, l3, l2, q)
    if np.any(np.abs(a1 - a1q) > 1e-8 * a1):
        raise ConsistencyError("the two pentagons disagree on the length of a1")
    lc12 = np.asarray(log_cosh_o12(l1, l2, l3))
    lc13 = np.asarray(log_cosh_o12(l1, l3, l2))
    o12 = np.asarray(acosh_from_log(lc12))
    o13 = np.asarray(acosh_from_log(lc13))
    o23 = np.asarray(o12_length(l2, l3, l1))
    return FrontGeometry(
        l1=_scalar(l1), l2=_scalar(l2), l3=_scalar(l3),
        p=_scalar(p), q=_scalar(q), a1=_scalar(a1),
        b1p=_scalar(b1p), b1q=_scalar(b1q),
        oP=_scalar(oP), oR=_scalar(o12 - oP),
        oQ=_scalar(oQ), oS=_scalar(o13 - oQ),
        s=_scalar(s), s3=_scalar(s3),
        o12=_scalar(o12), o13=_scalar(o13), o23=_scalar(o23),
        log_cosh_o12=_scalar(lc12), log_cosh_o13=_scalar(lc13),
        arc2=_scalar(l2 / 2), arc3=_scalar(l3 / 2),
    )


def d_h(x, p):
    """Length of the perpendicular at axis position x in a Lambert quadrilateral.

    ``atanh(cosh(x) tanh(p))`` where p is the side at x = 0.
    """
    x = np.asarray(x, dtype=float)
    t = np.cosh(x) * np.tanh(np.asarray(p, dtype=float))
    if np.any(t >= 1.0) or np.any(x < 0):
        raise DomainError("tanh(p)cosh(x) must stay below 1 (and x >= 0)")
    return _scalar(np.arctanh(t))


def relative_lengths(l1, l2, l3):
    """Relative lengths ``(2p/l1, 2q/l1)`` of the two arcs of the first cuff."""
    l1, l2, l3 = check_lengths(l1, l2, l3)
    p = arc_p(l1, l2, l3)
    q = arc_p(l1, l3, l2)
    return _scalar(2 * p / l1), _scalar(2 * q / l1)


def relative_length_bounds(C2, n):
    """The interval ``[½e^{-C2/(n+1)²}, ½e^{C2/(n+1)²}]``."""
    b = C2 / (n + 1) ** 2
    return 0.5 * np.exp(-b), 0.5 * np.exp(b)


def relative_length_margin(l1, l2, l3, C2, n):
    """Distance of both relative lengths to the nearer end of their bound.

    Nonnegative exactly when the two-sided bound holds.  Requires
    ``max(l2, l3) <= C2/(n+1)**2``.
    """
    l1, l2, l3 = check_lengths(l1, l2, l3)
    if C2 <= 0 or n < 1:
        raise PreconditionError("need C2 > 0 and n >= 1")
    if np.any(np.maximum(l2, l3) > C2 / (n + 1) ** 2):
        raise PreconditionError(f"max(l2, l3) exceeds C2/(n+1)^2 = {C2 / (n + 1) ** 2:.6g}")
    lo, hi = relative_length_bounds(C2, n)
    rel0, rel1 = (np.asarray(v) for v in relative_lengths(l1, l2, l3))
    margin = np.minimum.reduce([rel0 - lo, hi - rel0, rel1 - lo, hi - rel1])
    return _scalar(margin)


def b1_bound(A):
    """``asinh(sinh(A) cosh(asinh(coth(A))))``, the upper bound for b1."""
    A = np.asarray(A, dtype=float)
    return _scalar(np.arcsinh(np.sinh(A) * np.cosh(np.arcsinh(1.0 / np.tanh(A)))))


@dataclass(frozen=True)
class AuxInequalities:
    b1: float
    b1_bound: float
    b1_bound_ok: bool
    denom_bound_c: float
    atanh_linear_c: float
    p_vs_l1_ratio: float
    p_vs_l1_floor: float
    p_vs_l1_ok: bool


def aux_inequalities(l1, l2, l3, B, samples=65):
    """Constants of the four estimates used on the quadrilateral P.

    ``denom_bound_c`` and ``atanh_linear_c`` are maxima over ``samples``
    points of ``[0, oP]``.  The floor for ``p/l1`` is 1/4 when ``l3 <= l2``
    and ``cosh(l2/2) / (4 cosh(l3/2))`` otherwise; it is only asserted when
    ``cosh(l3/2) <= 2``.
    """
    if max(l1, l2) > B:
        raise PreconditionError("max(l1, l2) exceeds B")
    g = front_geometry(l1, l2, l3)
    A = max(l2 / 2, g.p)
    bound = b1_bound(A)
    x = np.linspace(0.0, g.oP, samples)
    t = np.tanh(g.p) * np.cosh(x)
    t = np.minimum(t, np.tanh(g.b1p))
    denom_c = float(np.max(1.0 / (1.0 - t * t)))
    lin_c = float(np.max(np.arctanh(t) / t))
    ratio = g.p / l1
    floor = 0.25 if l3 <= l2 else np.cosh(l2 / 2) / (4 * np.cosh(l3 / 2))
    ok = True if np.cosh(l3 / 2) > 2 else ratio >= floor - 1e-12
    return AuxInequalities(
        b1=g.b1p,
        b1_bound=bound,
        b1_bound_ok=bool(g.b1p <= bound * (1 + 1e-12)),
        denom_bound_c=denom_c,
        atanh_linear_c=lin_c,
        p_vs_l1_ratio=ratio,
        p_vs_l1_floor=float(floor),
        p_vs_l1_ok=bool(ok),
    )


def trig_gap(x, A):
    """``sinh(x)/(A + cosh(x)) - tanh(x/(2A))``; zero when A = 1."""
    x = np.asarray(x, dtype=float)
    A = np.asarray(A, dtype=float)
    return _scalar(np.sinh(x) / (A + np.cosh(x)) - np.tanh(x / (2 * A)))
