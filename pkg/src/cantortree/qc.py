"""The flattening map of a lifted quadrilateral and its dilatation.

A lifted quadrilateral sits to the right of the imaginary axis, with its
axis on ``[i, e^{o} i]``.  The flattening ``f`` sends the point at
hyperbolic distance ``d`` from ``i e^x`` along the perpendicular geodesic to
``x - i d``; the inverse is ``g(x + iy) = e^x exp(i atan(csch(-y)))``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StepTooLarge


@dataclass(frozen=True)
class FlatPoint:
    x: float
    y: float

    def __post_init__(self):
        if self.y > 0:
            raise DomainError("flat points lie on or below the real axis")

    @property
    def z(self):
        return complex(self.x, self.y)


def _csch(d):
    """csch(d) for d > 0; extended precision near 0."""
    d = np.asarray(d, dtype=float)
    tiny = d < 1e-8
    ld = np.asarray(d, dtype=np.longdouble)
    ext = np.asarray(1 / np.sinh(np.where(tiny, ld, 1)), dtype=float)
    return np.where(tiny, ext, 1 / np.sinh(np.where(tiny, 1.0, d)))


def _quoted_dilatation(d):
    """``(1 + csch^2 d) / (coth d csch d)`` for d > 0."""
    c = _csch(d)
    coth = 1 / np.tanh(d)
    return (1 + c * c) / (coth * c)


def inverse_map_g(x, y):
    """Point of the upper half-plane over the flat point ``x + iy`` (``y <= 0``).

    ``|w| = e^x`` and ``arg w = atan(csch(-y))``; the axis ``y = 0`` goes to
    ``i e^x``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(y > 0):
        raise DomainError("inverse_map_g is defined for y <= 0")
    # atan(csch d) = pi/2 - atan(sinh d), finite at d = 0
    angle = np.pi / 2 - np.arctan(np.sinh(-y))
    w = np.exp(x) * np.exp(1j * angle)
    return complex(w) if w.ndim == 0 else w


def forward_map_f(w):
    """Flattening of a lifted point ``w`` (``Re w >= 0``, ``Im w > 0``)."""
    w = np.asarray(w, dtype=complex)
    if np.any(w.imag <= 0) or np.any(w.real < 0):
        raise DomainError("forward_map_f expects points right of the imaginary axis")
    z = np.log(np.abs(w)) - 1j * np.arcsinh(w.real / w.imag)
    return complex(z) if z.ndim == 0 else z


def dilatation(x, y):
    """Pointwise dilatation ``K(z)`` of g; equals ``cosh(-y)``.

    Evaluated by the quoted ``(1 + csch^2(-y)) / (coth(-y) csch(-y))`` and
    checked against ``cosh(-y)``.  On the axis the limit value 1 is
    returned.  ``x`` does not enter.
    """
    del x
    y = np.asarray(y, dtype=float)
    if np.any(y > 0):
        raise DomainError("dilatation is defined for y <= 0")
    d = -y
    on_axis = d == 0
    dd = np.where(on_axis, 1.0, d)
    k = _quoted_dilatation(dd)
    expected = np.cosh(dd)
    if np.any(np.abs(k - expected) > 1e-12 * expected):
        raise ArithmeticError("quoted dilatation formula drifted from cosh(-y)")
    k = np.where(on_axis, 1.0, k)
    return float(k) if k.ndim == 0 else k


def k0_bound(D):
    """``(1 + csch^2 D) / (coth D csch D)``, the sup of K over ``0 < -y <= D``."""
    D = np.asarray(D, dtype=float)
    if np.any(D <= 0):
        raise DomainError("D must be positive")
    k = _quoted_dilatation(D)
    return float(k) if k.ndim == 0 else k


def _g_scalar(x, y):
    return np.exp(x) * np.exp(1j * (np.pi / 2 - np.arctan(np.sinh(-y))))


def beltrami_estimate(x, y, h=1e-6):
    """|mu| of g at ``x + iy`` from central differences with step ``h``.

    Returns ``(mu_abs, implied_K)`` where ``implied_K = (1+|mu|)/(1-|mu|)``.
    """
    if y >= 0:
        raise DomainError("beltrami_estimate needs an interior point (y < 0)")
    if h >= -y:
        raise StepTooLarge(f"step {h:g} reaches the axis from y = {y:g}")
    gx = (_g_scalar(x + h, y) - _g_scalar(x - h, y)) / (2 * h)
    gy = (_g_scalar(x, y + h) - _g_scalar(x, y - h)) / (2 * h)
    dz = 0.5 * (gx - 1j * gy)
    dzbar = 0.5 * (gx + 1j * gy)
    mu = abs(dzbar) / abs(dz)
    return mu, (1 + mu) / (1 - mu)
