"""Independent high-precision reference values for the test suite.

Evaluates the closed forms directly with mpmath at 60 significant digits,
without importing cantortree, and writes the results (as decimal strings)
to tests/data/oracle_values.json.

    python3 scripts/oracle.py [--check]

With ``--check`` the frozen file is compared against a fresh evaluation
instead of being rewritten.
"""

import argparse
import json
import sys
from pathlib import Path

import mpmath as mp

DPS = 60
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracle_values.json"


def cosh_o12(l1, l2, l3):
    h1, h2, h3 = l1 / 2, l2 / 2, l3 / 2
    return mp.cosh(h3) / (mp.sinh(h1) * mp.sinh(h2)) + mp.coth(h1) * mp.coth(h2)


def arc_p(l1, l2, l3):
    return mp.atanh(mp.sinh(l1 / 2) / (mp.cosh(l3 / 2) / mp.cosh(l2 / 2) + mp.cosh(l1 / 2)))


def pentagon(l1, l2, l3):
    """Lengths around the p-pentagon, from the Lambert and pentagon relations."""
    p = arc_p(l1, l2, l3)
    a1 = mp.asinh(mp.cosh(l2 / 2) / mp.sinh(p))
    s = mp.asinh(mp.cosh(p) / mp.sinh(l2 / 2))
    b1 = mp.asinh(mp.sinh(p) * mp.cosh(a1))
    b1_alt = mp.asinh(mp.sinh(l2 / 2) * mp.cosh(s))
    assert abs(b1 - b1_alt) < mp.mpf(10) ** (-DPS + 10)
    o_axis = mp.acosh(mp.tanh(b1) / mp.tanh(p))
    return p, a1, s, b1, o_axis


def front_geometry(l1, l2, l3):
    p, a1, s, b1p, oP = pentagon(l1, l2, l3)
    q, _, s3, b1q, oQ = pentagon(l1, l3, l2)
    o12 = mp.acosh(cosh_o12(l1, l2, l3))
    o13 = mp.acosh(cosh_o12(l1, l3, l2))
    o23 = mp.acosh(cosh_o12(l2, l3, l1))
    return {
        "p": p, "q": q, "a1": a1, "b1p": b1p, "b1q": b1q,
        "oP": oP, "oR": o12 - oP, "oQ": oQ, "oS": o13 - oQ,
        "s": s, "s3": s3, "o12": o12, "o13": o13, "o23": o23,
        "log_cosh_o12": mp.log(cosh_o12(l1, l2, l3)),
        "log_cosh_o13": mp.log(cosh_o12(l1, l3, l2)),
        "arc2": l2 / 2, "arc3": l3 / 2,
    }


def d_h(x, p):
    return mp.atanh(mp.cosh(x) * mp.tanh(p))


def quad_energy_2d(p_len, o_len):
    """Brute-force double integral of |grad(y / d(x))|^2 over 0<=y<=d(x)."""

    def d(x):
        return d_h(x, p_len)

    def dprime(x):
        t = mp.cosh(x) * mp.tanh(p_len)
        return mp.tanh(p_len) * mp.sinh(x) / (1 - t * t)

    def inner(x):
        dx, ddx = d(x), dprime(x)
        return mp.quad(lambda y: (y * ddx / dx**2) ** 2 + 1 / dx**2, [0, dx])

    return mp.quad(inner, [0, o_len / 4, o_len])


def pants_energy(l1, l2, l3):
    g = front_geometry(l1, l2, l3)
    parts = {
        "P": quad_energy_2d(g["p"], g["oP"]),
        "R": quad_energy_2d(g["arc2"], g["oR"]),
        "Q": quad_energy_2d(g["q"], g["oQ"]),
        "S": quad_energy_2d(g["arc3"], g["oS"]),
    }
    parts["total"] = sum(parts.values())
    return parts


def g_map(x, y):
    """e^x exp(i atan(csch(-y)))."""
    return mp.exp(x) * mp.expj(mp.atan(mp.csch(-y)))


def quoted_k(d):
    return (1 + mp.csch(d) ** 2) / (mp.coth(d) * mp.csch(d))


def s(v):
    return mp.nstr(v, 40, strip_zeros=False)


def evaluate():
    mp.mp.dps = DPS
    tenth, twentieth, fifth = mp.mpf("0.1"), mp.mpf("0.05"), mp.mpf("0.2")
    k_grid = [mp.mpf(k) / 100 for k in range(1, 301)]
    k_dev = max(abs(quoted_k(d) - mp.cosh(d)) for d in k_grid)
    w = g_map(mp.mpf("0.5"), mp.mpf("-0.3"))
    out = {
        "_about": "reference values at 60 digits; regenerate with scripts/oracle.py",
        "cosh_o12_equal_0.1": s(cosh_o12(tenth, tenth, tenth)),
        "arc_p_0.1_0.05_0.2": s(arc_p(tenth, twentieth, fifth)),
        "front_geometry_0.1_0.05_0.2": {k: s(v) for k, v in front_geometry(tenth, twentieth, fifth).items()},
        "front_geometry_equal_0.1": {k: s(v) for k, v in front_geometry(tenth, tenth, tenth).items()},
        "d_h_x1_p0.025": s(d_h(mp.mpf(1), mp.mpf("0.025"))),
        "g_0.5_-0.3": [s(w.real), s(w.imag)],
        "cosh_1": s(mp.cosh(1)),
        "cosh_0.5": s(mp.cosh(mp.mpf("0.5"))),
        "cosh_0.88137": s(mp.cosh(mp.mpf("0.88137"))),
        "quoted_k_minus_cosh_max_abs_grid_0.01_3": s(k_dev),
        "asinh_1": s(mp.asinh(1)),
        "b1_bound_1e-6": s(mp.asinh(mp.sinh(mp.mpf("1e-6")) * mp.cosh(mp.asinh(mp.coth(mp.mpf("1e-6")))))),
        "energy_equal_0.1": {k: s(v) for k, v in pants_energy(tenth, tenth, tenth).items()},
        "energy_0.1_0.05_0.2": {k: s(v) for k, v in pants_energy(tenth, twentieth, fifth).items()},
    }
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the frozen file")
    args = ap.parse_args(argv)
    values = evaluate()
    text = json.dumps(values, indent=2, sort_keys=True) + "\n"
    if args.check:
        frozen = OUT.read_text(encoding="utf-8")
        if frozen != text:
            print("frozen oracle values differ from a fresh evaluation", file=sys.stderr)
            return 1
        print("oracle values match")
        return 0
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(text, encoding="utf-8")
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
