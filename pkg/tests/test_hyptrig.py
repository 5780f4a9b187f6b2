import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantortree.errors import ConsistencyError, DomainError, LengthError, PreconditionError
from cantortree.hyptrig import (
    ASINH_ONE,
    PantsTriple,
    acosh_from_log,
    acosh_stable,
    arc_p,
    aux_inequalities,
    b1_bound,
    check_lengths,
    cosh_o12,
    d_h,
    front_geometry,
    relative_length_margin,
    log_cosh_o12,
    o12_length,
    pentagon_residual,
    relative_length_bounds,
    relative_lengths,
    trig_gap,
)

log_length = st.floats(min_value=math.log(1e-6), max_value=math.log(2.0)).map(math.exp)
short = st.floats(min_value=math.log(1e-4), max_value=0.0).map(math.exp)


def rel(a, b):
    return abs(a - b) / abs(b)


class TestValidation:
    @pytest.mark.parametrize("bad", [0.0, -1.0, 1e-13, 51.0, math.inf, math.nan])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(LengthError):
            check_lengths(bad)

    def test_triple_validates(self):
        with pytest.raises(LengthError):
            PantsTriple(0.1, -0.1, 0.1)
        t = PantsTriple(0.1, 0.2, 0.3)
        assert tuple(t.swapped()) == (0.1, 0.3, 0.2)

    def test_limits_accepted(self):
        check_lengths(1e-12, 50.0)


class TestCoshO12:
    def test_equal_cuffs_oracle(self, oracle):
        assert rel(cosh_o12(0.1, 0.1, 0.1), oracle["cosh_o12_equal_0.1"]) < 1e-14
        assert cosh_o12(0.1, 0.1, 0.1) == pytest.approx(800.83, abs=5e-3)

    def test_long_cuffs_limit(self):
        # cosh(L/2)/sinh(L/2)^2 -> 0 and coth(L/2)^2 -> 1
        values = [cosh_o12(L, L, L) for L in (10.0, 20.0, 40.0)]
        assert values[0] > values[1] > values[2] > 1
        assert values[2] == pytest.approx(1.0, abs=1e-8)

    @given(log_length, log_length, log_length)
    def test_swap_first_two(self, a, b, c):
        assert rel(cosh_o12(a, b, c), cosh_o12(b, a, c)) < 1e-14

    def test_log_space_for_tiny_cuffs(self):
        lc = log_cosh_o12(1e-12, 1e-12, 1e-12)
        assert math.isfinite(lc) and lc > math.log(1e8)
        assert o12_length(1e-12, 1e-12, 1e-12) == pytest.approx(lc + math.log(2), rel=1e-14)

    def test_overflow_signalled(self):
        # 1/(sinh * sinh) is ~4e24 here: representable; force the log path check
        assert math.isfinite(cosh_o12(1e-12, 1e-12, 1e-12))
        with pytest.raises(LengthError):
            cosh_o12(1e-300, 1e-300, 1e-300)


class TestAcosh:
    def test_series_branch_near_one(self):
        for step in (1e-15, 1e-12, 1e-9):
            z = 1 + step
            u = z - 1
            assert rel(acosh_stable(z), math.sqrt(2 * u) * (1 - u / 12)) < 1e-12
        assert acosh_stable(1.0) == 0.0

    def test_matches_numpy_away_from_one(self):
        z = np.geomspace(1.001, 1e6, 50)
        assert np.allclose(acosh_stable(z), np.arccosh(z), rtol=1e-14)

    def test_from_log(self):
        for z in (1.5, 10.0, 1e10, 1e200):
            assert rel(acosh_from_log(math.log(z)), math.acosh(z)) < 1e-14

    def test_below_one(self):
        with pytest.raises(DomainError):
            acosh_stable(0.5)


class TestArcP:
    @given(log_length, log_length)
    def test_equal_children_give_quarter(self, l1, l):
        assert arc_p(l1, l, l) == l1 / 4

    def test_oracle(self, oracle):
        assert rel(arc_p(0.1, 0.05, 0.2), oracle["arc_p_0.1_0.05_0.2"]) < 1e-14

    @given(log_length, log_length, log_length)
    def test_pentagon_residual(self, a, b, c):
        assert abs(pentagon_residual(a, b, c)) < 1e-12

    def test_vectorized(self):
        l = np.array([0.1, 0.2, 0.3])
        assert np.asarray(arc_p(l, l, l)).shape == (3,)


class TestFrontGeometry:
    def test_symmetric(self, oracle):
        g = front_geometry(0.1, 0.1, 0.1)
        assert g.p == g.q == 0.025
        assert g.b1p == g.b1q
        assert rel(g.oP + g.oR, g.o12) < 1e-12
        for k, v in oracle["front_geometry_equal_0.1"].items():
            assert rel(getattr(g, k), v) < 1e-13, k

    def test_asymmetric_oracle(self, oracle):
        g = front_geometry(0.1, 0.05, 0.2)
        for k, v in oracle["front_geometry_0.1_0.05_0.2"].items():
            assert rel(getattr(g, k), v) < 1e-13, k

    @settings(max_examples=200)
    @given(log_length, log_length, log_length)
    def test_invariants(self, a, b, c):
        g = front_geometry(a, b, c)
        assert rel(g.p + g.q, a / 2) < 1e-12
        assert rel(g.oP + g.oR, g.o12) < 1e-12
        assert rel(g.oQ + g.oS, g.o13) < 1e-12
        assert rel(math.tanh(g.b1p), math.tanh(g.p) * math.cosh(g.oP)) < 1e-12
        assert rel(math.tanh(g.b1q), math.tanh(g.q) * math.cosh(g.oQ)) < 1e-12
        assert min(g.p, g.q, g.a1, g.b1p, g.b1q, g.oP, g.oR, g.oQ, g.oS, g.s, g.s3) > 0

    @settings(max_examples=200)
    @given(short, short, short)
    def test_lambert_gluing_of_r_and_s(self, a, b, c):
        g = front_geometry(a, b, c)
        assert rel(math.tanh(g.arc2) * math.cosh(g.oR), math.tanh(g.b1p)) < 1e-10
        assert rel(math.tanh(g.arc3) * math.cosh(g.oS), math.tanh(g.b1q)) < 1e-10

    @given(log_length, log_length, log_length)
    def test_swap_symmetry(self, a, b, c):
        g, h = front_geometry(a, b, c), front_geometry(a, c, b)
        pairs = [("p", "q"), ("b1p", "b1q"), ("oP", "oQ"), ("oR", "oS"), ("arc2", "arc3"),
                 ("s", "s3"), ("o12", "o13"), ("a1", "a1")]
        for x, y in pairs:
            assert rel(getattr(g, x), getattr(h, y)) < 1e-12, (x, y)

    def test_dict_roundtrip(self):
        d = front_geometry(0.3, 0.2, 0.1).as_dict()
        assert set(d) >= {"p", "q", "a1", "b1p", "b1q", "oP", "oR", "oQ", "oS", "s", "o12", "o13"}
        assert all(isinstance(v, float) for v in d.values())

    def test_consistency_error_is_reachable_type(self):
        assert issubclass(ConsistencyError, ArithmeticError)


class TestDh:
    def test_at_zero(self):
        assert d_h(0.0, 0.3) == pytest.approx(0.3, rel=1e-15)

    def test_far_side(self):
        g = front_geometry(0.1, 0.05, 0.2)
        assert rel(d_h(g.oP, g.p), g.b1p) < 1e-12

    def test_oracle(self, oracle):
        assert rel(d_h(1.0, 0.025), oracle["d_h_x1_p0.025"]) < 1e-14

    def test_increasing(self):
        g = front_geometry(0.2, 0.1, 0.3)
        x = np.linspace(0, g.oP, 500)
        assert np.all(np.diff(d_h(x, g.p)) > 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            d_h(10.0, 0.5)


class TestRelativeLengths:
    def test_equal_children(self):
        assert relative_lengths(0.3, 0.1, 0.1) == (0.5, 0.5)

    @given(log_length, log_length, log_length)
    def test_sum_to_one(self, a, b, c):
        r0, r1 = relative_lengths(a, b, c)
        assert abs(r0 + r1 - 1) < 1e-12
        assert 0 < r0 < 1 and 0 < r1 < 1

    @given(log_length, log_length, log_length)
    def test_direction(self, a, b, c):
        # the pentagon facing the longer child cuff gets the longer arc
        r0, r1 = relative_lengths(a, b, c)
        if b < c:
            assert r0 < 0.5 < r1 or math.isclose(r0, 0.5, rel_tol=1e-12)
        elif b > c:
            assert r1 < 0.5 < r0 or math.isclose(r0, 0.5, rel_tol=1e-12)

    def test_inside_window(self):
        n, C2 = 1, 0.1
        lo, hi = relative_length_bounds(C2, n)
        r0, r1 = relative_lengths(0.1, 0.01, 0.02)
        assert lo <= r0 <= hi and lo <= r1 <= hi


class TestRelativeLengthMargin:
    def test_symmetric_centered(self):
        m = relative_length_margin(0.5, 1e-4, 1e-4, 1.0, 3)
        lo, hi = relative_length_bounds(1.0, 3)
        assert m == pytest.approx(min(0.5 - lo, hi - 0.5))
        assert m > 0

    def test_random_sweep(self):
        rng = np.random.default_rng(5)
        cap = 1.0 / 36
        l1 = np.exp(rng.uniform(math.log(1e-6), math.log(2), 10_000))
        l2, l3 = (np.exp(rng.uniform(math.log(cap * 1e-4), math.log(cap), 10_000)) for _ in range(2))
        assert np.min(relative_length_margin(l1, l2, l3, 1.0, 5)) >= 0

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            relative_length_margin(0.1, 0.5, 0.01, 1.0, 5)


class TestAux:
    def test_equal(self):
        a = aux_inequalities(0.1, 0.1, 0.1, 2.0)
        assert a.b1_bound_ok
        assert a.p_vs_l1_ratio == 0.25

    def test_sweep(self):
        rng = np.random.default_rng(11)
        b1s, dens = [], []
        for l1, l2, l3 in np.exp(rng.uniform(math.log(1e-6), 0.0, (2000, 3))):
            a = aux_inequalities(l1, l2, l3, 2.0)
            assert a.b1_bound_ok and a.p_vs_l1_ok
            b1s.append(a.b1)
            dens.append(a.denom_bound_c)
        assert max(dens) <= math.cosh(max(b1s)) ** 2 * (1 + 1e-12)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            aux_inequalities(3.0, 0.1, 0.1, 2.0)

    def test_limit(self, oracle):
        assert abs(b1_bound(1e-6) - 0.88137) < 1e-4
        assert rel(b1_bound(1e-6), oracle["b1_bound_1e-6"]) < 1e-12
        assert abs(ASINH_ONE - oracle["asinh_1"]) < 1e-15


class TestTrigGap:
    @given(st.floats(min_value=1e-6, max_value=5.0))
    def test_zero_at_one(self, x):
        assert abs(trig_gap(x, 1.0)) < 1e-14

    def test_signs(self):
        assert trig_gap(0.01, 2.0) > 0
        assert trig_gap(0.01, 0.5) < 0

    @given(st.floats(min_value=1e-3, max_value=0.1),
           st.floats(min_value=0.1, max_value=10.0).filter(lambda a: abs(a - 1) > 1e-3))
    def test_sign_matches(self, x, A):
        assert np.sign(trig_gap(x, A)) == np.sign(A - 1)
