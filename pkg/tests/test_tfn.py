import math

import pytest
from hypothesis import given, strategies as st

from fuzzydss.tfn import TFN, TfnError, tfn_add, tfn_membership, tfn_mul, tfn_scale, tfn_sub


def tfns(lo=-1e6, hi=1e6):
    reals = st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    return st.tuples(reals, reals, reals).map(lambda t: TFN(*sorted(t)))


def nonneg_tfns(hi=1e3):
    return tfns(0.0, hi)


class TestConstruction:
    def test_ordering_enforced(self):
        with pytest.raises(TfnError):
            TFN(2, 1, 3)
        with pytest.raises(TfnError):
            TFN(1, 3, 2)

    def test_crisp_is_legal(self):
        t = TFN.crisp(4.0)
        assert t.a == t.b == t.c == 4.0
        assert t.is_crisp()

    def test_non_finite_rejected(self):
        with pytest.raises(TfnError):
            TFN(0.0, 1.0, math.inf)


class TestArithmetic:
    def test_add(self):
        assert tfn_add(TFN(1, 2, 3), TFN(2, 3, 4)) == TFN(3, 5, 7)

    def test_add_identity(self):
        x = TFN(1.5, 2.5, 9.0)
        assert tfn_add(TFN.zero(), x) == x

    def test_add_fractional(self):
        out = tfn_add(TFN(0.5, 0.6, 0.7), TFN(0.6, 0.7, 0.8))
        assert out.triple() == pytest.approx((1.1, 1.3, 1.5))

    def test_sub(self):
        assert tfn_sub(TFN(3, 5, 7), TFN(1, 2, 3)) == TFN(0, 3, 6)

    def test_sub_self_symmetric(self):
        x = TFN(2, 5, 11)
        out = tfn_sub(x, x)
        assert out.triple() == (x.a - x.c, 0, x.c - x.a)

    def test_sub_zero(self):
        assert tfn_sub(TFN(1, 1, 1), TFN.zero()) == TFN(1, 1, 1)

    def test_mul(self):
        out = tfn_mul(TFN(0.2, 0.4, 0.6), TFN(0.5, 0.6, 0.7))
        assert out.triple() == pytest.approx((0.10, 0.24, 0.42))

    def test_mul_identity(self):
        x = TFN(0.25, 0.5, 0.75)
        assert tfn_mul(x, TFN(1, 1, 1)) == x

    def test_mul_rejects_negative(self):
        with pytest.raises(TfnError):
            tfn_mul(TFN(-1, 0, 1), TFN(0, 1, 2))
        with pytest.raises(TfnError):
            tfn_mul(TFN(0, 1, 2), TFN(-3, -2, -1))

    def test_scale_zero(self):
        assert tfn_scale(TFN(1, 2, 3), 0.0) == TFN.zero()

    def test_scale_rejects_negative(self):
        with pytest.raises(TfnError):
            tfn_scale(TFN(1, 2, 3), -0.5)


class TestMembership:
    def test_peak(self):
        assert tfn_membership(TFN(425, 442, 452), 442) == 1.0

    def test_support_boundary(self):
        assert tfn_membership(TFN(425, 442, 452), 425) == 0.0

    def test_rising_midpoint(self):
        assert tfn_membership(TFN(0, 5, 10), 2.5) == 0.5

    def test_outside_support(self):
        t = TFN(1, 2, 3)
        assert t.membership(0.5) == 0.0
        assert t.membership(3.5) == 0.0

    def test_plateau_conventions(self):
        assert TFN(2, 2, 5).membership(2) == 1.0
        assert TFN(0, 5, 5).membership(5) == 1.0
        assert TFN.crisp(3).membership(3) == 1.0


class TestProperties:
    @given(tfns(), tfns())
    def test_add_closure(self, x, y):
        out = x + y
        assert out.a <= out.b <= out.c

    @given(tfns(), tfns())
    def test_sub_closure(self, x, y):
        out = x - y
        assert out.a <= out.b <= out.c

    @given(nonneg_tfns(), nonneg_tfns())
    def test_mul_closure(self, x, y):
        out = x * y
        assert out.a <= out.b <= out.c

    @given(tfns(-1e3, 1e3), st.floats(0, 100, allow_nan=False))
    def test_scale_matches_crisp_mul(self, x, r):
        if x.a < 0:
            x = TFN(x.a - x.a, x.b - x.a, x.c - x.a)
        assert tfn_scale(x, r).triple() == pytest.approx(
            tfn_mul(x, TFN.crisp(r)).triple(), abs=1e-9)

    @given(tfns(-100, 100), st.floats(-150, 150, allow_nan=False))
    def test_membership_in_unit_interval(self, x, t):
        assert 0.0 <= x.membership(t) <= 1.0

    @given(tfns(-100, 100), st.data())
    def test_membership_monotone_on_edges(self, x, data):
        if x.b > x.a:
            t1 = data.draw(st.floats(x.a, x.b))
            t2 = data.draw(st.floats(t1, x.b))
            assert x.membership(t1) <= x.membership(t2) + 1e-12
        if x.c > x.b:
            t1 = data.draw(st.floats(x.b, x.c))
            t2 = data.draw(st.floats(t1, x.c))
            assert x.membership(t1) >= x.membership(t2) - 1e-12
