"""The horizontal foliation of a flattened Lambert quadrilateral and its energy.

A quadrilateral with cuff side ``p_len`` and axis ``o_len`` is flattened to
the region ``0 <= x <= o_len, 0 <= y <= d_h(x)`` (the reflection of the
below-axis picture; the Dirichlet integral does not see the reflection).
The foliation is given by ``v = y / d_h(x)``: the axis is the leaf
``v = 0`` and the far side the leaf ``v = 1``.
"""

from dataclasses import dataclass

import numpy as np

from . import constants
from .errors import DomainError
from .hyptrig import check_lengths, front_geometry
from .qc import k0_bound
from .quadrature import gauss_kronrod

QUAD_RTOL = 1e-8
QUAD_ATOL = 1e-14


@dataclass(frozen=True)
class QuadFoliation:
    p_len: float
    o_len: float
    mass: float = 1.0

    def __post_init__(self):
        if not (self.p_len > 0 and self.o_len >= 0):
            raise DomainError("need p_len > 0 and o_len >= 0")
        if not 0 < self.mass <= 1:
            raise DomainError("mass must lie in (0, 1]")
        if np.tanh(self.p_len) * np.cosh(self.o_len) >= 1:
            raise DomainError("tanh(p_len) cosh(o_len) >= 1: the quadrilateral does not close")

    def depth(self, x):
        """d_h(x) for the seed p_len."""
        return np.arctanh(np.cosh(x) * np.tanh(self.p_len))

    @property
    def far_side(self):
        return float(self.depth(self.o_len))


@dataclass(frozen=True)
class EnergyEstimate:
    numeric: float
    analytic_bound: float
    quad_error: float

    def scaled(self, factor):
        """Estimate for the foliation multiplied by ``sqrt(factor)``."""
        return EnergyEstimate(self.numeric * factor, self.analytic_bound * factor,
                              self.quad_error * factor)

    def __add__(self, other):
        return EnergyEstimate(self.numeric + other.numeric,
                              self.analytic_bound + other.analytic_bound,
                              self.quad_error + other.quad_error)


def _check_region(x, y, f):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(x > f.o_len):
        raise DomainError("x outside [0, o_len]")
    d = f.depth(x)
    # relative slack absorbs the rounding of y = c * d_h(x)
    if np.any(y < 0) or np.any(y > d * (1 + 1e-12)):
        raise DomainError("y outside [0, d_h(x)]")
    return x, y, d


def v_value(x, y, f):
    """Value ``mass * y / d_h(x)`` of the (scaled) foliation function."""
    x, y, d = _check_region(x, y, f)
    v = f.mass * y / d
    return float(v) if np.ndim(v) == 0 else v


def v_gradient(x, y, f):
    """Squared partial derivatives ``(v_x**2, v_y**2)`` of ``v = y/d_h(x)``.

    ``v_x**2 = y**2 d_h^-4 (1 - t**2)^-2 tanh(p)**2 sinh(x)**2`` and
    ``v_y**2 = d_h^-2`` with ``t = tanh(p) cosh(x)``, times ``mass**2``.
    """
    x, y, d = _check_region(x, y, f)
    tp = np.tanh(f.p_len)
    t = tp * np.cosh(x)
    gx2 = y**2 * d**-4.0 * (1 - t * t) ** -2.0 * tp**2 * np.sinh(x) ** 2
    gy2 = d**-2.0
    m2 = f.mass**2
    gx2, gy2 = m2 * gx2, m2 * gy2
    if np.ndim(gx2) == 0:
        return float(gx2), float(gy2)
    return gx2, gy2


def _inv_atanh_minus_inv(t):
    """1/atanh(t) - 1/t, by series for small t."""
    small = t < 1e-3
    ts = np.where(small, t, 0.0)
    series = -ts / 3 - 4 * ts**3 / 45 - 44 * ts**5 / 945
    tl = np.where(small, 0.5, t)
    at = np.arctanh(tl)
    direct = (tl - at) / (tl * at)
    return np.where(small, series, direct)


def _reduced_integrand(p_len):
    tp = np.tanh(p_len)

    def integrand(x):
        t = tp * np.cosh(x)
        d = np.arctanh(t)
        dprime = tp * np.sinh(x) / (1 - t * t)
        # y-integral of v_x^2 is d'^2 / (3 d); the 1/d part of v_y^2 is
        # handled in closed form, only its smooth remainder is integrated
        return dprime**2 / (3 * d) + _inv_atanh_minus_inv(t)

    return integrand


def quad_analytic_bound(p_len, o_len):
    """Closed-form majorant of the unit-mass energy of one quadrilateral.

    With ``t = tanh(p)cosh(x) <= tanh(b)`` (``b`` the far side), ``atanh t >= t``
    and ``1/(1-t^2) <= cosh^2 b`` give
    ``E <= cosh(b)^4 tanh(p) sinh(o) / 3 + pi / (2 tanh(p))``.
    """
    b = np.arctanh(np.tanh(p_len) * np.cosh(o_len))
    tp = np.tanh(p_len)
    return float(np.cosh(b) ** 4 * tp * np.sinh(o_len) / 3 + np.pi / (2 * tp))


def quad_dirichlet(f, rtol=QUAD_RTOL):
    """Dirichlet energy of the foliation on one flattened quadrilateral.

    The inner ``y``-integral is done exactly, leaving
    ``∫_0^o [d'(x)^2 / (3 d(x)) + 1/d(x)] dx``.  The ``1/d`` term is split as
    ``1/t + (1/atanh t - 1/t)`` with ``t = tanh(p)cosh(x)``; the first piece
    integrates to ``gd(o)/tanh(p)`` and the rest goes to the adaptive rule.
    """
    tp = np.tanh(f.p_len)
    gd = 2 * np.arctan(np.tanh(f.o_len / 2))
    res = gauss_kronrod(_reduced_integrand(f.p_len), 0.0, f.o_len, rtol=rtol, atol=QUAD_ATOL)
    numeric = gd / tp + res.value
    m2 = f.mass**2
    return EnergyEstimate(
        numeric=float(m2 * numeric),
        analytic_bound=m2 * quad_analytic_bound(f.p_len, f.o_len),
        quad_error=float(m2 * res.error),
    )


def pants_quadrilaterals(l1, l2, l3):
    """The four foliated quadrilaterals ``{P, R, Q, S}`` of a pants front."""
    g = front_geometry(l1, l2, l3)
    return {
        "P": QuadFoliation(g.p, g.oP),
        "R": QuadFoliation(g.arc2, g.oR),
        "Q": QuadFoliation(g.q, g.oQ),
        "S": QuadFoliation(g.arc3, g.oS),
    }


@dataclass(frozen=True)
class PantsEnergy(EnergyEstimate):
    """Pants energy; ``parts`` keeps the four quadrilateral estimates."""

    parts: tuple = ()

    def part(self, name):
        return dict(self.parts)[name]


def pants_dirichlet(l1, l2, l3, rtol=QUAD_RTOL, k_pants=None):
    """Unit-mass energy of the foliation on the front of the pants.

    ``analytic_bound`` is ``K_pants (1/l1 + 1/l2 + 1/l3)`` with the frozen
    calibration constant.
    """
    check_lengths(l1, l2, l3)
    k_pants = constants.K_PANTS if k_pants is None else k_pants
    parts = tuple((name, quad_dirichlet(q, rtol)) for name, q in pants_quadrilaterals(l1, l2, l3).items())
    numeric = sum(e.numeric for _, e in parts)
    error = sum(e.quad_error for _, e in parts)
    return PantsEnergy(
        numeric=float(numeric),
        analytic_bound=float(k_pants * (1 / l1 + 1 / l2 + 1 / l3)),
        quad_error=float(error),
        parts=parts,
    )


def pants_energy_ratio(l1, l2, l3, rtol=QUAD_RTOL):
    """numeric / (1/l1 + 1/l2 + 1/l3); the quantity K_pants majorizes."""
    e = pants_dirichlet(l1, l2, l3, rtol)
    return e.numeric / (1 / l1 + 1 / l2 + 1 / l3)


def qc_comparison_factor(D):
    """Factor k0 moving flat-model energy bounds to the hyperbolic quadrilateral."""
    return k0_bound(D)
