"""Dirichlet energy of the scaled foliation over a truncated tree, and the verdict."""

import enum
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import constants
from .errors import CantorTreeError, QuadratureFailure
from .foliation import QUAD_RTOL, pants_dirichlet
from .surface import CuffAddress, _level_chain_bound, blooming_factor, blooming_tail_bound

THREADS_ENV = "CANTORTREE_THREADS"
CALIBRATION_START = 5
WEIGHTING = "entering-cuff mass squared"


class Verdict(str, enum.Enum):
    NOT_PARABOLIC = "NotParabolicCertificate"
    HYPOTHESIS_NOT_SATISFIED = "HypothesisNotSatisfied"
    INCONCLUSIVE = "Inconclusive"


class EscapeStatus(str, enum.Enum):
    ESCAPES = "escapes"
    TRUNCATED = "truncated"
    FAILS = "fails"


def _threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class LevelEnergy:
    n: int
    numeric: float
    majorant: float
    quad_error: float
    pants_evaluated: int


def level_energy(tree, n, genus_cap=0, rtol=QUAD_RTOL, k_pants=None):
    """Energy of the level-n pants, each weighted by its top cuff's mass squared.

    ``majorant`` is the analytic bound
    ``2^n (e^{C2 T}/2^{n-1})^2 K_pants (1/min l_{n-1} + 2/min l_n)``.  A genus
    cap ``C`` multiplies both numbers by ``4C + 1``.
    """
    k_pants = constants.K_PANTS if k_pants is None else k_pants
    factor = blooming_factor(genus_cap)
    top, left, right = tree.pants(n)
    top_mass = tree.masses(n - 1)
    if tree.homogeneous:
        e = pants_dirichlet(float(top[0]), float(left[0]), float(right[0]), rtol, k_pants)
        numeric = 2**n * top_mass[0] ** 2 * e.numeric
        error = 2**n * top_mass[0] ** 2 * e.quad_error
        evaluated = 1
    else:
        m2 = np.broadcast_to(top_mass, top.shape) ** 2
        triples = list(zip(top.tolist(), left.tolist(), right.tolist()))
        unique = list(dict.fromkeys(triples))

        def run(t):
            return pants_dirichlet(*t, rtol=rtol, k_pants=k_pants)

        workers = _threads()
        if workers > 1 and len(unique) > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = dict(zip(unique, pool.map(run, unique)))
        else:
            results = {t: run(t) for t in unique}
        numeric = float(np.sum(m2 * np.array([results[t].numeric for t in triples])))
        error = float(np.sum(m2 * np.array([results[t].quad_error for t in triples])))
        evaluated = len(unique)
    majorant = _level_chain_bound(tree.hypotheses.effective_C2, n, float(top.min()),
                                  float(min(left.min(), right.min())), k_pants)
    return LevelEnergy(n, float(factor * numeric), float(factor * majorant),
                       float(factor * error), evaluated)


def _finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


@dataclass
class LevelRecord:
    n: int
    energy: float
    quad_error: float
    chain_majorant: float
    calibrated_majorant: float | None


@dataclass
class DirichletReport:
    """Per-level energies, partial sums, tail bounds and the verdict.

    ``K_calibrated`` is an empirical stand-in for the existential constant of
    the convergence argument: 1.25 times the largest ``energy_n * n^r`` over
    levels 5..N.  ``chain_tail_bound`` needs no calibration beyond
    ``K_pants``; it is only available for power profiles.
    """

    profile: dict
    depth: int
    genus_cap: int
    region_factor: int
    weighting: str
    k_pants: float
    hypotheses: dict
    per_level: list
    partial_sums: list
    K_calibrated: float | None
    calibration_levels: list
    tail_bound: float | None
    chain_tail_bound: float | None
    total_bound: float | None
    checks: dict
    verdict: Verdict
    reason: str
    quadrature_rtol: float
    notes: list = field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True, allow_nan=False)


def _increments_decreasing(energies, start):
    tail = energies[start - 1:]
    return all(b < a for a, b in zip(tail, tail[1:]))


def dirichlet_certificate(tree, profile=None, genus_cap=0, rtol=QUAD_RTOL, k_pants=None):
    """Sum the level energies of ``tree`` and decide the verdict.

    The verdict is ``NotParabolicCertificate`` when every hypothesis holds
    and the partial sum plus the integral-test tail is finite,
    ``HypothesisNotSatisfied`` when a hypothesis fails, and ``Inconclusive``
    when a quadrature failed or the numbers contradict the analytic majorant.
    """
    profile = tree.profile if profile is None else profile
    k_pants = constants.K_PANTS if k_pants is None else k_pants
    hyp = tree.hypotheses
    r = profile.r
    factor = blooming_factor(genus_cap)
    N = tree.depth
    notes = []
    levels = []
    failure = None
    for n in range(1, N + 1):
        try:
            levels.append(level_energy(tree, n, genus_cap, rtol, k_pants))
        except (QuadratureFailure, CantorTreeError, ArithmeticError) as exc:
            failure = f"level {n}: {type(exc).__name__}: {exc}"
            break

    energies = [lv.numeric for lv in levels]
    partial = np.cumsum(energies).tolist()
    start = CALIBRATION_START if N >= CALIBRATION_START else 1
    k_cal = None
    if r is not None and len(levels) == N:
        k_cal = constants.SAFETY_FACTOR * max(energies[n - 1] * n**r for n in range(start, N + 1))
    if k_cal is not None and r > 1:
        tail = k_cal / ((r - 1) * N ** (r - 1))
    else:
        tail = math.inf
    chain_tail = blooming_tail_bound(genus_cap, profile, N, k_pants) if failure is None else math.inf

    records = [
        LevelRecord(lv.n, lv.numeric, lv.quad_error, lv.majorant,
                    None if k_cal is None else k_cal / lv.n**r)
        for lv in levels
    ]
    checks = {
        "partial_sums_nondecreasing": all(b >= a for a, b in zip(partial, partial[1:])),
        "increments_dominated": k_cal is not None and all(
            rec.energy <= rec.calibrated_majorant for rec in records if rec.n >= start),
        "increments_decreasing_from_5": len(levels) == N and _increments_decreasing(energies, start),
        "numeric_below_chain_majorant": all(rec.energy <= rec.chain_majorant for rec in records),
        "quadrature_ok": failure is None,
    }
    total = partial[-1] + tail if partial else math.inf

    if failure is not None:
        verdict, reason = Verdict.INCONCLUSIVE, f"quadrature failed at {failure}"
    elif not hyp.certificate_ok:
        verdict = Verdict.HYPOTHESIS_NOT_SATISFIED
        reason = _hypothesis_reason(hyp)
    elif not checks["numeric_below_chain_majorant"]:
        verdict, reason = Verdict.INCONCLUSIVE, "a level energy exceeds its analytic majorant"
    elif math.isfinite(total):
        verdict = Verdict.NOT_PARABOLIC
        reason = f"hypotheses hold and D <= {total:.6g} (partial sum + calibrated tail)"
    else:
        verdict, reason = Verdict.INCONCLUSIVE, "tail bound is not finite"

    if hyp.clamped_levels:
        notes.append(f"levels {hyp.clamped_levels} clamped to C2/n^2 (window empty); "
                     f"effective C1 = {hyp.effective_C1:.6g}")
    notes.append("K_calibrated is an empirical stand-in for the existential constant K")

    return DirichletReport(
        profile=profile.describe(), depth=N, genus_cap=int(genus_cap), region_factor=factor,
        weighting=WEIGHTING, k_pants=float(k_pants), hypotheses=to_jsonable(hyp.to_dict()),
        per_level=to_jsonable([asdict(rec) for rec in records]), partial_sums=partial,
        K_calibrated=_finite_or_none(k_cal), calibration_levels=[start, N],
        tail_bound=_finite_or_none(tail), chain_tail_bound=_finite_or_none(chain_tail),
        total_bound=_finite_or_none(total), checks=checks, verdict=verdict, reason=reason,
        quadrature_rtol=float(rtol), notes=notes,
    )


def _hypothesis_reason(hyp):
    failed = []
    if not hyp.r_ok:
        failed.append("r > 1" if hyp.r is not None else "r > 1 (no exponent given)")
    if not hyp.window_ok:
        failed.append("length window")
    if not hyp.decreasing_ok:
        failed.append(f"decreasing ends (first failure at {hyp.first_increase})")
    return "failed: " + ", ".join(failed)


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def leaf_escape_check(tree, addr):
    """Whether the leaves crossing cuff ``addr`` continue on both sides.

    Transverse measure must be conserved at every pants between alpha_0 and
    ``addr`` and at the pants just below it, so the measure entering a pants
    leaves through its two children.  Cuffs at the truncation depth report
    ``TRUNCATED``.
    """
    if not isinstance(addr, CuffAddress):
        addr = CuffAddress.from_index(*addr)
    if addr.n > tree.depth:
        raise ValueError(f"address level {addr.n} deeper than the tree ({tree.depth})")
    if addr.n == tree.depth:
        return EscapeStatus.TRUNCATED

    def mass(a):
        m = tree.masses(a.n)
        return float(m[0] if m.size == 1 else m[a.flat])

    def conserved(a):
        m, m0, m1 = mass(a), mass(a.child(0)), mass(a.child(1))
        return m > 0 and m0 > 0 and m1 > 0 and abs(m0 + m1 - m) <= 1e-12 * m

    chain = [addr]
    while chain[-1].n > 0:
        chain.append(chain[-1].parent())
    # the root's other side carries the other end of every leaf through alpha_0
    chain.append(CuffAddress(0, 1 - addr.side))
    return EscapeStatus.ESCAPES if all(conserved(a) for a in chain) else EscapeStatus.FAILS
