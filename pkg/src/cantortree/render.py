"""Lift the front of a truncated Cantor tree to the upper half-plane and draw it.

Placement uses frames: a frame is a matrix ``F`` in SL(2, R) and stands for
the unit tangent vector ``F_*(i, up)``.  Moving forward a distance ``t`` is
``F @ A(t)`` with ``A(t) = diag(e^{t/2}, e^{-t/2})`` and turning right is
``F @ rot(-pi/2)``.  The root pants starts at the identity frame, so its
axis ``o_P`` is the segment ``[i, e^{o_P} i]``.

Each front hexagon is walked clockwise (interior on the right):
``o12, alpha2/2, o23, alpha3/2, o13, alpha1/2``.  The child pants on
``alpha2`` starts where ``o12`` leaves through ``alpha2`` and the child on
``alpha3`` where ``o23`` leaves through ``alpha3``.  Each pants contributes
13 arcs: 4 axes ``oP, oR, oQ, oS``, 4 cuff arcs ``p, q, alpha2/2, alpha3/2``
and 5 orthogonals ``s, s3, a1, b1p, b1q``.
"""

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DepthTooLarge
from .hyptrig import front_geometry
from .surface import CuffAddress

RENDER_CAP = 8
ARCS_PER_PANTS = 13
ROLES = ("axis", "cuff_arc", "ortho_arc")

# composed frames reach entries near e^{total path length}; the working
# precision grows with render depth so ad - bc = 1 survives
BASE_DPS = 40
DPS_PER_LEVEL = 10


def _ctx(depth):
    ctx = mpmath.MPContext()
    ctx.dps = BASE_DPS + DPS_PER_LEVEL * (depth + 1)
    return ctx


def _mul(F, G):
    a, b, c, d = F
    e, f, g, h = G
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def advance(t, ctx=mpmath.mp):
    h = ctx.mpf(t) / 2
    return (ctx.exp(h), ctx.mpf(0), ctx.mpf(0), ctx.exp(-h))


def rotation(theta, ctx=mpmath.mp):
    """Counterclockwise rotation by ``theta`` about ``i``."""
    c, s = ctx.cos(ctx.mpf(theta) / 2), ctx.sin(ctx.mpf(theta) / 2)
    return (c, s, -s, c)


def _turn_right(ctx):
    return rotation(-ctx.pi / 2, ctx)


def apply(F, w, ctx=mpmath.mp):
    """``F(w)`` for ``w`` in the upper half-plane; the imaginary part is
    computed as ``Im w / |c w + d|^2`` so it stays positive."""
    a, b, c, d = F
    w = ctx.mpc(w)
    den = c * w + d
    num = a * w + b
    mod2 = den.real**2 + den.imag**2
    return ctx.mpc((num * ctx.conj(den)).real / mod2, w.imag / mod2)


_BELOW_PI = math.nextafter(math.pi, 0.0)
_ABOVE_ZERO = math.nextafter(0.0, 1.0)


@dataclass(frozen=True)
class HalfPlaneArc:
    """A geodesic segment of the upper half-plane.

    The endpoints ``(x0, y0)`` and ``(x1, y1)`` are stored as computed.
    Circular arcs also carry ``center``, ``radius`` and the end angles
    ``theta0, theta1`` (clipped into the open interval ``(0, pi)``); vertical
    arcs leave them as ``None``.
    """

    kind: str
    role: str
    name: str
    pants: str
    x0: float
    y0: float
    x1: float
    y1: float
    center: float | None = None
    radius: float | None = None
    theta0: float | None = None
    theta1: float | None = None

    @property
    def endpoints(self):
        return complex(self.x0, self.y0), complex(self.x1, self.y1)

    def bbox(self):
        """``(xmin, xmax, ymin, ymax)`` of the arc."""
        top = max(self.y0, self.y1)
        if self.kind == "circular":
            lo, hi = sorted((self.theta0, self.theta1))
            if lo <= math.pi / 2 <= hi:
                top = self.radius
        return min(self.x0, self.x1), max(self.x0, self.x1), min(self.y0, self.y1), top


def _clip_angle(t):
    return min(max(float(t), _ABOVE_ZERO), _BELOW_PI)


def segment(F, s0, s1, role, name, pants, ctx=mpmath.mp):
    """The image under ``F`` of ``[e^{s0} i, e^{s1} i]``."""
    a, b, c, d = F
    if c == 0:
        # F(iy) = a^2 iy + ab since d = 1/a; the identity gives e^s exactly
        scale = float(a * a)
        x = float(a * b)
        return HalfPlaneArc("vertical", role, name, pants,
                            x, scale * math.exp(s0), x, scale * math.exp(s1))
    z0 = apply(F, ctx.mpc(0, ctx.exp(s0)), ctx)
    z1 = apply(F, ctx.mpc(0, ctx.exp(s1)), ctx)
    # the geodesic through F(i R+) ends at F(0) = b/d and F(inf) = a/c
    e1 = a / c
    if d == 0:
        x = float(e1)
        return HalfPlaneArc("vertical", role, name, pants, x, float(z0.imag), x, float(z1.imag))
    e0 = b / d
    center, radius = (e0 + e1) / 2, abs(e1 - e0) / 2
    t0 = _clip_angle(ctx.atan2(z0.imag, z0.real - center))
    t1 = _clip_angle(ctx.atan2(z1.imag, z1.real - center))
    return HalfPlaneArc("circular", role, name, pants,
                        float(z0.real), float(z0.imag), float(z1.real), float(z1.imag),
                        center=float(center), radius=float(radius), theta0=t0, theta1=t1)


def _walk(F, g, ctx):
    """Frames met on the clockwise walk around the front hexagon."""
    right = _turn_right(ctx)

    def go(G, t):
        return _mul(G, advance(t, ctx))

    fr = {"o12": F}
    fr["alpha2"] = go(F, g.o12)
    fr["alpha2_side"] = _mul(fr["alpha2"], right)
    fr["o23"] = _mul(go(fr["alpha2_side"], g.l2 / 2), right)
    fr["alpha3"] = go(fr["o23"], g.o23)
    fr["alpha3_side"] = _mul(fr["alpha3"], right)
    fr["o13"] = _mul(go(fr["alpha3_side"], g.l3 / 2), right)
    fr["alpha1"] = go(fr["o13"], g.o13)
    fr["alpha1_side"] = _mul(fr["alpha1"], right)
    fr["closure"] = _mul(go(fr["alpha1_side"], g.l1 / 2), right)
    fr["a1"] = _mul(go(fr["alpha1_side"], g.q), right)
    fr["b1p"] = _mul(go(fr["o12"], g.oP), right)
    fr["b1q"] = _mul(go(fr["o13"], g.oS), right)
    return fr


def pants_arcs(F, g, label="", ctx=None):
    """The 13 arcs of one front hexagon placed by frame ``F``.

    Also returns the frames of the walk; ``closure`` equals ``-F`` up to
    rounding.
    """
    ctx = _ctx(0) if ctx is None else ctx
    F = tuple(ctx.mpf(v) for v in F)
    fr = _walk(F, g, ctx)
    layout = [
        ("o12", 0.0, g.oP, "axis", "oP"),
        ("o12", g.oP, g.o12, "axis", "oR"),
        ("o13", 0.0, g.oS, "axis", "oS"),
        ("o13", g.oS, g.o13, "axis", "oQ"),
        ("alpha2_side", 0.0, g.l2 / 2, "cuff_arc", "alpha2/2"),
        ("alpha3_side", 0.0, g.l3 / 2, "cuff_arc", "alpha3/2"),
        ("alpha1_side", 0.0, g.q, "cuff_arc", "q"),
        ("alpha1_side", g.q, g.l1 / 2, "cuff_arc", "p"),
        ("o23", 0.0, g.s, "ortho_arc", "s"),
        ("o23", g.s, g.o23, "ortho_arc", "s3"),
        ("a1", 0.0, g.a1, "ortho_arc", "a1"),
        ("b1p", 0.0, g.b1p, "ortho_arc", "b1p"),
        ("b1q", 0.0, g.b1q, "ortho_arc", "b1q"),
    ]
    arcs = [segment(fr[key], s0, s1, role, name, label, ctx) for key, s0, s1, role, name in layout]
    return arcs, fr


IDENTITY = (1, 0, 0, 1)
# z -> -1/z: alpha_0's lift (the unit semicircle) stays put and the tree,
# which lies outside it, is folded into the unit half-disk
INVERT = (0, -1, 1, 0)
# z -> (z - 1)/(z + 1): alpha_0's lift becomes the imaginary axis, so the two
# sides of the tree sit in the two quadrants
CAYLEY = (1, -1, 1, 1)


def lift_front(tree, depth=0, both_sides=False, view=IDENTITY):
    """Arcs of the lifted fronts of the pants on levels ``1 .. depth + 1``.

    ``depth = 0`` draws the root pants alone.  With ``both_sides`` the pants
    on the far side of alpha_0 are included too, entering where ``o13``
    leaves the root pants through alpha_0.  The count is
    ``13 * (2^{depth+1} - 1)`` per side.

    ``view`` is a real Mobius map ``(a, b, c, d)`` with ``ad - bc > 0``
    applied to the whole picture.  The default keeps the root axis on
    ``[i, e^{o_P} i]``; ``INVERT`` and ``CAYLEY`` give bounded pictures.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > RENDER_CAP:
        raise DepthTooLarge(f"render depth {depth} exceeds the cap {RENDER_CAP}")
    if depth + 1 > tree.depth:
        raise ValueError(f"render depth {depth} needs a tree of depth {depth + 1}")
    ctx = _ctx(depth)
    arcs = []

    def recurse(F, top, level_left):
        g = front_geometry(tree.length(top), tree.length(top.child(0)), tree.length(top.child(1)))
        new, fr = pants_arcs(F, g, str(top), ctx)
        arcs.extend(new)
        if level_left > 0:
            recurse(fr["alpha2"], top.child(0), level_left - 1)
            recurse(fr["alpha3"], top.child(1), level_left - 1)
        return fr

    a, b, c, d = (ctx.mpf(v) for v in view)
    det = a * d - b * c
    if det <= 0:
        raise ValueError("view must have positive determinant")
    root = tuple(v / ctx.sqrt(det) for v in (a, b, c, d))
    fr = recurse(root, CuffAddress(0, 0), depth)
    if both_sides:
        recurse(fr["alpha1"], CuffAddress(0, 1), depth)
    return arcs


def arcs_bbox(arcs):
    boxes = np.array([a.bbox() for a in arcs])
    return (float(boxes[:, 0].min()), float(boxes[:, 1].max()),
            float(boxes[:, 2].min()), float(boxes[:, 3].max()))


_STYLE = (
    ".axis{stroke:#000;stroke-width:1.2}"
    ".cuff_arc{stroke:#000;stroke-width:0.8}"
    ".ortho_arc{stroke:#777;stroke-width:0.5;stroke-dasharray:3 2}"
    "path,line{fill:none;vector-effect:non-scaling-stroke}"
)


def emit_svg(arcs, path, viewport=None, width=800, margin=0.02):
    """Write ``arcs`` to ``path`` as a standalone SVG 1.1 document.

    ``viewport`` is ``(xmin, xmax, ymin, ymax)`` in half-plane coordinates and
    defaults to the bounding box of the arcs plus a ``margin`` fraction.
    Vertical arcs become ``line`` elements and circular ones ``path``
    elements; the stroke class is the arc's role.
    Output is a pure function of the arguments.
    """
    arcs = list(arcs)
    if not arcs:
        raise ValueError("nothing to draw")
    if viewport is None:
        x0, x1, y0, y1 = arcs_bbox(arcs)
        dx, dy = (x1 - x0) or 1.0, (y1 - y0) or 1.0
        viewport = (x0 - margin * dx, x1 + margin * dx, max(0.0, y0 - margin * dy), y1 + margin * dy)
    x0, x1, y0, y1 = (float(v) for v in viewport)
    if not (x1 > x0 and y1 > y0):
        raise ValueError("empty viewport")
    scale = width / (x1 - x0)
    height = (y1 - y0) * scale

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        return (y1 - y) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.4f} {height:.4f}">',
        f"<style>{_STYLE}</style>",
    ]
    for a in arcs:
        z0, z1 = a.endpoints
        if a.kind == "vertical":
            lines.append(f'<line class="{a.role}" x1="{sx(a.x0):.4f}" y1="{sy(a.y0):.4f}" '
                         f'x2="{sx(a.x1):.4f}" y2="{sy(a.y1):.4f}"/>')
        else:
            r = a.radius * scale
            # increasing angle is counterclockwise on screen, i.e. sweep-flag 0
            sweep = 0 if a.theta1 > a.theta0 else 1
            lines.append(f'<path class="{a.role}" d="M {sx(z0.real):.4f} {sy(z0.imag):.4f} '
                         f'A {r:.4f} {r:.4f} 0 0 {sweep} {sx(z1.real):.4f} {sy(z1.imag):.4f}"/>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
