"""Cantor tree surfaces: cuff addresses, length profiles, transverse masses.

Level ``n`` has ``2^{n+1}`` cuffs, stored in a flat array whose index is
``j - 1``.  The two level-0 slots are the same cuff alpha_0 seen from its two
sides.  The level-``n`` pants (``n >= 1``) with top cuff at flat index ``i``
of level ``n-1`` has children ``2i`` (left, on the ``p`` side) and ``2i+1``
(right, on the ``q`` side) at level ``n``; there are ``2^n`` of them.
"""

import json
import math
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from . import constants
from .errors import InfeasibleProfile, LengthError, NonMonotone, PreconditionError, ProfileFormatError
from .hyptrig import check_lengths, relative_lengths
from .schemas import load_schema

WINDOW_RTOL = 1e-12


def level_size(n):
    return 2 ** (n + 1)


@dataclass(frozen=True)
class CuffAddress:
    """Address of the cuff alpha_n^j.

    ``side`` picks the half of the tree hanging off alpha_0 and ``path`` holds
    the ``n`` left/right bits below it, so ``j - 1 = side * 2^n + int(path)``.
    For ``n = 0`` the two sides are the two aliased slots of alpha_0.
    """

    n: int
    side: int = 0
    path: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("level must be nonnegative")
        if self.side not in (0, 1):
            raise ValueError("side must be 0 or 1")
        object.__setattr__(self, "path", tuple(int(b) for b in self.path))
        if len(self.path) != self.n or any(b not in (0, 1) for b in self.path):
            raise ValueError(f"path must be {self.n} bits")

    @classmethod
    def from_index(cls, n, j):
        if not 1 <= j <= level_size(n):
            raise ValueError(f"index j={j} outside [1, {level_size(n)}] at level {n}")
        side, rest = divmod(j - 1, 2**n)
        bits = tuple((rest >> (n - 1 - k)) & 1 for k in range(n))
        return cls(n, side, bits)

    @property
    def j(self):
        rest = 0
        for b in self.path:
            rest = 2 * rest + b
        return self.side * 2**self.n + rest + 1

    @property
    def flat(self):
        return self.j - 1

    def child(self, bit):
        return CuffAddress(self.n + 1, self.side, self.path + (bit,))

    def parent(self):
        if self.n == 0:
            raise ValueError("alpha_0 has no parent")
        return CuffAddress(self.n - 1, self.side, self.path[:-1])

    def __str__(self):
        return f"{self.n}:{self.j}"


# ---------------------------------------------------------------- profiles


def _window(n, r, C1, C2):
    return C1 * n**r / 2.0**n, C2 / n**2


def _log_window_gap(n, r, C1, C2):
    """log of lower/upper; the window at level n is empty when positive."""
    return math.log(C1) + (r + 2) * math.log(n) - n * math.log(2) - math.log(C2)


def window_onset(r, C1, C2):
    """First level from which the window ``[C1 n^r/2^n, C2/n^2]`` is never empty.

    ``n^{r+2}/2^n`` decreases for ``n >= (r+2)/ln 2``, so once the window is
    nonempty past that point it stays nonempty.
    """
    turn = (r + 2) / math.log(2)
    last_empty = 0
    n = 1
    while True:
        empty = _log_window_gap(n, r, C1, C2) > 0
        if empty:
            last_empty = n
        elif n >= turn:
            return last_empty + 1
        n += 1


class CuffProfile:
    """Common interface of the length profiles.

    ``level_lengths(n)`` returns either the full ``2^{n+1}`` array or, for
    profiles whose level ``n`` is constant, a length-1 array.
    """

    kind = "abstract"
    r = C1 = C2 = None
    max_depth = None
    homogeneous = False

    def level_lengths(self, n):
        raise NotImplementedError

    def clamped_levels(self, depth):
        return []

    def length_floor(self, n):
        """Lower bound for every level-n length, beyond any built depth."""
        return None

    def describe(self):
        raise NotImplementedError


class PowerProfile(CuffProfile):
    """Lengths ``C1 n^r / 2^n``, held under ``C2/n^2``.

    Some levels below the window onset ``n0`` have an empty interval
    ``[C1 n^r/2^n, C2/n^2]``; those are clamped to ``C2/n^2`` (unless
    ``clamp=False``, in which case building such a level raises
    ``InfeasibleProfile``).  The root cuff gets twice the level-1 length.

    ``jitter > 0`` perturbs lengths per cuff with a seeded uniform ``u``:
    asymptotic levels become ``min(lower (1 + jitter u), C2/n^2)`` and clamped
    levels ``(C2/n^2) / (1 + jitter u)``.  Both stay below ``C2/n^2``.
    """

    kind = "power"

    def __init__(self, r, C1, C2, jitter=0.0, seed=0, clamp=True):
        if not (r > 0 and C1 > 0 and C2 > 0):
            raise ValueError("power profiles need r, C1, C2 > 0")
        if not 0 <= jitter < 1:
            raise ValueError("jitter must lie in [0, 1)")
        self.r, self.C1, self.C2 = float(r), float(C1), float(C2)
        self.jitter, self.seed, self.clamp = float(jitter), int(seed), bool(clamp)
        self.homogeneous = self.jitter == 0
        self.onset = window_onset(self.r, self.C1, self.C2)
        self.empty_levels = tuple(n for n in range(1, self.onset)
                                  if _log_window_gap(n, self.r, self.C1, self.C2) > 0)

    def base(self, n):
        lower, upper = _window(n, self.r, self.C1, self.C2)
        return min(lower, upper)

    def level_lengths(self, n):
        if n == 0:
            return np.full(1 if self.homogeneous else 2, 2 * self.base(1))
        if n in self.empty_levels and not self.clamp:
            raise InfeasibleProfile(n)
        lower, upper = _window(n, self.r, self.C1, self.C2)
        if self.homogeneous:
            return np.array([self.base(n)])
        u = np.random.default_rng([self.seed, n]).random(level_size(n))
        if n in self.empty_levels:
            return upper / (1 + self.jitter * u)
        return np.minimum(lower * (1 + self.jitter * u), upper)

    def clamped_levels(self, depth):
        return [n for n in self.empty_levels if n <= depth]

    def length_floor(self, n):
        if n == 0:
            return 2 * self.base(1)
        lower, upper = _window(n, self.r, self.C1, self.C2)
        if n in self.empty_levels:
            return upper / (1 + self.jitter)
        return lower

    def describe(self):
        return {"kind": self.kind, "r": self.r, "C1": self.C1, "C2": self.C2,
                "jitter": self.jitter, "seed": self.seed, "clamp": self.clamp}


class ConstantProfile(CuffProfile):
    """Every cuff has length ``L``."""

    kind = "constant"
    homogeneous = True

    def __init__(self, L):
        check_lengths(L)
        self.L = float(L)

    def level_lengths(self, n):
        return np.array([self.L])

    def length_floor(self, n):
        return self.L

    def describe(self):
        return {"kind": self.kind, "L": self.L}


class TableProfile(CuffProfile):
    """Explicit lengths keyed by ``(n, j)``; ``r, C1, C2`` are optional claims.

    Every level from 0 to the deepest key must be complete.  A single level-0
    entry serves both aliased slots.
    """

    kind = "table"

    def __init__(self, lengths, r=None, C1=None, C2=None):
        self.r, self.C1, self.C2 = r, C1, C2
        table = {}
        for key, value in lengths.items():
            n, j = _parse_key(key)
            if not 1 <= j <= level_size(n):
                raise ProfileFormatError(f"index {n}:{j} out of range")
            table[(n, j)] = float(value)
        if not table:
            raise ProfileFormatError("empty length table")
        root = [table.get((0, 1)), table.get((0, 2))]
        root = [v for v in root if v is not None]
        if not root:
            raise ProfileFormatError("missing root cuff 0:1")
        if len(root) == 2 and root[0] != root[1]:
            raise ProfileFormatError("the two level-0 slots are the same cuff")
        table[(0, 1)] = table[(0, 2)] = root[0]
        self.max_depth = max(n for n, _ in table)
        self._levels = []
        for n in range(self.max_depth + 1):
            missing = [j for j in range(1, level_size(n) + 1) if (n, j) not in table]
            if missing:
                raise ProfileFormatError(f"level {n} is missing {len(missing)} cuffs, e.g. {n}:{missing[0]}")
            arr = np.array([table[(n, j)] for j in range(1, level_size(n) + 1)])
            check_lengths(arr)
            self._levels.append(arr)
        self.homogeneous = all(np.all(a == a[0]) for a in self._levels)

    def level_lengths(self, n):
        if n > self.max_depth:
            raise ValueError(f"table profile stops at level {self.max_depth}")
        arr = self._levels[n]
        return arr[:1].copy() if self.homogeneous else arr.copy()

    def describe(self):
        return {"kind": self.kind, "r": self.r, "C1": self.C1, "C2": self.C2,
                "depth": self.max_depth}


def _parse_key(key):
    if isinstance(key, tuple):
        return int(key[0]), int(key[1])
    try:
        n, j = str(key).split(":")
        return int(n), int(j)
    except ValueError as exc:
        raise ProfileFormatError(f"bad table key {key!r}; expected 'n:j'") from exc


def load_profile(source):
    """Parse a profile document (path, JSON text or dict).

    Returns ``(profile, depth)`` where ``depth`` is the document's depth field
    (or the table depth) and may be ``None``.
    """
    import jsonschema

    if isinstance(source, dict):
        doc = source
    else:
        text = str(source)
        try:
            if text.lstrip().startswith("{"):
                doc = json.loads(text)
            else:
                with open(text, encoding="utf-8") as fh:
                    doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ProfileFormatError(f"cannot read profile: {exc}") from exc
    try:
        jsonschema.validate(doc, load_schema("profile"))
    except jsonschema.ValidationError as exc:
        raise ProfileFormatError(f"profile does not match schema: {exc.message}") from exc
    kind = doc["kind"]
    try:
        if kind == "power":
            profile = PowerProfile(doc["r"], doc["C1"], doc["C2"], doc.get("jitter", 0.0),
                                   doc.get("seed", 0), doc.get("clamp", True))
        elif kind == "constant":
            profile = ConstantProfile(doc["L"])
        else:
            profile = TableProfile(doc["lengths"], doc.get("r"), doc.get("C1"), doc.get("C2"))
    except (ValueError, LengthError) as exc:
        if isinstance(exc, ProfileFormatError):
            raise
        raise ProfileFormatError(str(exc)) from exc
    depth = doc.get("depth", profile.max_depth)
    return profile, depth


# ------------------------------------------------------------- hypotheses


@dataclass
class LevelWindow:
    n: int
    lower: float
    upper: float
    min_length: float
    max_length: float
    in_window: bool
    clamped: bool


@dataclass
class HypothesisReport:
    """Which hypotheses of the non-parabolicity criterion hold, and where.

    ``window`` uses the user's constants; ``effective_C1`` is the largest
    ``C1`` for which every computed level sits above ``C1 n^r / 2^n``.
    """

    kind: str
    depth: int
    r: float | None
    C1: float | None
    C2: float | None
    r_ok: bool
    window: list
    window_onset: int | None
    clamped_levels: list
    window_ok: bool
    effective_C1: float | None
    effective_C2: float
    decreasing_ok: bool
    first_increase: str | None
    certificate_ok: bool = field(init=False)

    def __post_init__(self):
        self.certificate_ok = bool(self.r_ok and self.window_ok and self.decreasing_ok)

    def to_dict(self):
        return asdict(self)


def _first_increase(levels):
    """Address of the first cuff not shorter than its parent, or None."""
    for n in range(1, len(levels)):
        parent, child = levels[n - 1], levels[n]
        if parent.size == 1 and child.size == 1:
            bad = np.nonzero(child >= parent)[0]
        else:
            parent = np.broadcast_to(parent, (level_size(n - 1),))
            child = np.broadcast_to(child, (level_size(n),))
            bad = np.nonzero(child >= np.repeat(parent, 2))[0]
        if bad.size:
            return str(CuffAddress.from_index(n, int(bad[0]) + 1))
    return None


def _hypotheses_from_levels(profile, levels):
    depth = len(levels) - 1
    r, C1, C2 = profile.r, profile.C1, profile.C2
    have = r is not None and C1 is not None and C2 is not None
    clamped = profile.clamped_levels(depth)
    window = []
    eff_c1 = math.inf if r is not None else None
    eff_c2 = 0.0
    for n in range(1, depth + 1):
        lo_len, hi_len = float(levels[n].min()), float(levels[n].max())
        eff_c2 = max(eff_c2, hi_len * n**2)
        if r is not None:
            eff_c1 = min(eff_c1, lo_len * 2.0**n / n**r)
        if have:
            lower, upper = _window(n, r, C1, C2)
            inside = lower * (1 - WINDOW_RTOL) <= lo_len and hi_len <= upper * (1 + WINDOW_RTOL)
        else:
            lower = upper = float("nan")
            inside = False
        window.append(LevelWindow(n, lower, upper, lo_len, hi_len, bool(inside), n in clamped))
    onset = None
    if isinstance(profile, PowerProfile):
        onset = profile.onset
        # the clamped stretch below the onset can extend past the built depth
        for n in range(depth + 1, profile.onset):
            eff_c1 = min(eff_c1, profile.length_floor(n) * 2.0**n / n**r)
        window_ok = all(w.in_window for w in window if not w.clamped)
        if not profile.clamp and clamped:
            window_ok = False
    else:
        if have:
            onset = next((w.n for w in window if all(v.in_window for v in window[w.n - 1:])), None)
        window_ok = have and all(w.in_window for w in window)
    first_bad = _first_increase(levels)
    return HypothesisReport(
        kind=profile.kind, depth=depth, r=r, C1=C1, C2=C2,
        r_ok=bool(r is not None and r > 1),
        window=window, window_onset=onset, clamped_levels=clamped,
        window_ok=bool(window_ok),
        effective_C1=None if eff_c1 is None or math.isinf(eff_c1) else float(eff_c1),
        effective_C2=float(C2 if C2 is not None else eff_c2),
        decreasing_ok=first_bad is None, first_increase=first_bad,
    )


def _materialize(profile, depth):
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if profile.max_depth is not None and depth > profile.max_depth:
        raise ValueError(f"profile only defines levels up to {profile.max_depth}")
    levels = []
    for n in range(depth + 1):
        arr = np.asarray(profile.level_lengths(n), dtype=float)
        check_lengths(arr)
        levels.append(arr)
    return levels


def validate_hypotheses(profile, depth):
    """Hypothesis report for the first ``depth`` levels of ``profile``.

    Never raises on a failed hypothesis; a strict power profile whose window
    is empty is reported with ``window_ok = False``.
    """
    if isinstance(profile, PowerProfile) and not profile.clamp:
        relaxed = PowerProfile(profile.r, profile.C1, profile.C2, profile.jitter, profile.seed)
        report = _hypotheses_from_levels(relaxed, _materialize(relaxed, depth))
        report.window_ok = report.window_ok and not report.clamped_levels
        report.__post_init__()
        return report
    return _hypotheses_from_levels(profile, _materialize(profile, depth))


# -------------------------------------------------------------- the tree


@dataclass(frozen=True)
class TransverseMass:
    value: float
    lower: float
    upper: float
    preconditions_ok: bool

    @property
    def within_bounds(self):
        return self.lower <= self.value <= self.upper


def _readonly(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


class TreeSurface:
    """Cuff lengths of a Cantor tree truncated at level ``depth``.

    Immutable once built.  When the profile is level-homogeneous every level
    is stored as a length-1 array and all per-cuff queries broadcast.
    """

    def __init__(self, profile, levels, hypotheses):
        self.profile = profile
        self.depth = len(levels) - 1
        self.homogeneous = all(a.size == 1 for a in levels)
        self._levels = tuple(_readonly(a) for a in levels)
        self.hypotheses = hypotheses

    def lengths(self, n):
        """Stored level-n lengths (length 1 on the homogeneous path)."""
        self._check_level(n)
        return self._levels[n]

    def full_lengths(self, n):
        self._check_level(n)
        return np.broadcast_to(self._levels[n], (level_size(n),))

    def length(self, addr):
        arr = self.lengths(addr.n)
        return float(arr[0] if arr.size == 1 else arr[addr.flat])

    def pants(self, n):
        """``(top, left, right)`` cuff lengths of the level-n pants."""
        if not 1 <= n <= self.depth:
            raise ValueError(f"pants level {n} outside [1, {self.depth}]")
        top, kids = self._levels[n - 1], self._levels[n]
        if self.homogeneous:
            return top, kids, kids
        top = np.broadcast_to(top, (level_size(n - 1),))
        kids = np.broadcast_to(kids, (level_size(n),))
        return top, kids[0::2], kids[1::2]

    def relative_lengths(self, n):
        """Relative lengths ``(left, right)`` for the level-n pants."""
        top, left, right = self.pants(n)
        return relative_lengths(np.asarray(top), np.asarray(left), np.asarray(right))

    @cached_property
    def _masses(self):
        masses = [_readonly(np.ones(1 if self.homogeneous else 2))]
        for n in range(1, self.depth + 1):
            rel0, rel1 = (np.atleast_1d(v) for v in self.relative_lengths(n))
            m = masses[-1]
            if self.homogeneous:
                nxt = m * rel0
            else:
                nxt = np.column_stack([m * rel0, m * rel1]).ravel()
            masses.append(_readonly(nxt))
        return tuple(masses)

    def masses(self, n):
        """Transverse masses of the level-n cuffs (length 1 on the fast path)."""
        self._check_level(n)
        return self._masses[n]

    @cached_property
    def _precondition_levels(self):
        """Per level n >= 1: does every child satisfy length <= C2/n^2."""
        c2 = self.hypotheses.effective_C2
        return tuple(bool(self._levels[n].max() <= c2 / n**2 * (1 + WINDOW_RTOL))
                     for n in range(1, self.depth + 1))

    def n_pants(self, n):
        return 2**n

    def _check_level(self, n):
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside [0, {self.depth}]")


def build_tree(profile, depth, strict=True):
    """Materialize ``profile`` down to level ``depth``.

    With ``strict`` the tree must satisfy the hypotheses of the criterion:
    ``NonMonotone`` is raised when some cuff is not shorter than its parent,
    and ``InfeasibleProfile`` when a level falls outside the user's window
    without being a documented clamp.  ``strict=False`` builds anyway and the
    failures stay in ``tree.hypotheses``.
    """
    if isinstance(profile, PowerProfile) and not profile.clamp:
        empty = [n for n in profile.empty_levels if n <= depth]
        if empty:
            raise InfeasibleProfile(empty[0])
    levels = _materialize(profile, depth)
    report = _hypotheses_from_levels(profile, levels)
    if strict:
        if not report.decreasing_ok:
            raise NonMonotone(f"cuff {report.first_increase} is not shorter than its parent")
        if profile.r is not None and profile.C1 is not None and profile.C2 is not None:
            bad = next((w for w in report.window if not w.in_window and not w.clamped), None)
            if bad is not None:
                raise InfeasibleProfile(bad.n, f"level {bad.n} lengths leave the window "
                                               f"[{bad.lower:.6g}, {bad.upper:.6g}]")
    return TreeSurface(profile, levels, report)


def transverse_mass(tree, addr):
    """Product of relative lengths along the path from alpha_0 to ``addr``.

    Bounds are ``e^{-C2 T} / 2^n`` and ``e^{C2 T} / 2^n`` with ``T = pi^2/6``
    and ``C2`` the profile's (or, if it has none, the smallest ``C2`` with
    every level ``n`` under ``C2/n^2``).
    """
    if addr.n > tree.depth:
        raise ValueError(f"address level {addr.n} deeper than the tree ({tree.depth})")
    m = tree.masses(addr.n)
    value = float(m[0] if m.size == 1 else m[addr.flat])
    c2 = tree.hypotheses.effective_C2
    spread = math.exp(c2 * constants.T)
    scale = 2.0**-addr.n
    ok = all(tree._precondition_levels[: addr.n])
    return TransverseMass(value, scale / spread, scale * spread, ok)


def mass_upper_bound(C2, n):
    return math.exp(C2 * constants.T) / 2.0**n


def _level_chain_bound(C2, n, floor_top, floor_child, k_pants):
    """Plain per-level energy majorant from length floors and mass bounds."""
    m = mass_upper_bound(C2, n - 1)
    return 2.0**n * m * m * k_pants * (1 / floor_top + 2 / floor_child)


def blooming_factor(C):
    if C < 0 or int(C) != C:
        raise PreconditionError("genus cap must be a nonnegative integer")
    return 4 * int(C) + 1


def blooming_bound(C, profile, depth, k_pants=None):
    """Per-level energy majorants for levels ``1..depth`` with genus cap ``C``.

    The plain bound at level ``n`` is
    ``2^n (e^{C2 T}/2^{n-1})^2 K_pants (1/min l_{n-1} + 2/min l_n)``; genus
    attachments multiply the number of region pairs per pants by ``4C + 1``.
    """
    k_pants = constants.K_PANTS if k_pants is None else k_pants
    factor = blooming_factor(C)
    levels = _materialize(profile, depth)
    c2 = _hypotheses_from_levels(profile, levels).effective_C2
    return np.array([
        factor * _level_chain_bound(c2, n, levels[n - 1].min(), levels[n].min(), k_pants)
        for n in range(1, depth + 1)
    ])


def blooming_tail_bound(C, profile, N, k_pants=None):
    """Closed-form bound on the sum of the level majorants over ``n > N``.

    Only power profiles with ``r > 1`` extend past a finite table; anything
    else gives ``inf``.  Levels up to the window onset are summed explicitly
    from the length floors; beyond that the lower envelope ``C1 n^r/2^n``
    gives ``10 e^{2 C2 T} K_pants / (C1 (n-1)^r)`` per level, summed by the
    integral test.
    """
    if not isinstance(profile, PowerProfile) or profile.r <= 1:
        return math.inf
    k_pants = constants.K_PANTS if k_pants is None else k_pants
    factor = blooming_factor(C)
    c2, r = profile.C2, profile.r
    M = max(N, profile.onset)
    head = sum(_level_chain_bound(c2, n, profile.length_floor(n - 1), profile.length_floor(n), k_pants)
               for n in range(N + 1, M + 1))
    # sum_{m >= M} m^-r <= M^-r + M^(1-r)/(r-1)
    zeta_tail = M**-r + M ** (1 - r) / (r - 1)
    tail = 10 * math.exp(2 * c2 * constants.T) * k_pants / profile.C1 * zeta_tail
    return factor * (head + tail)
