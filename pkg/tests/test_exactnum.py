from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qracah_krall.exactnum import (
    HyperSpec,
    basic_hyper_terminating,
    format_rational,
    interpolation_degree,
    leading_coefficient,
    parse_rational,
    qpochhammer,
    qpochhammer_inf_approx,
    qpochhammer_multi,
    to_fraction,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=50)
qs = st.fractions(min_value=F(1, 20), max_value=F(19, 20), max_denominator=40)


def test_trivial_pochhammer():
    assert qpochhammer(F(1, 3), F(1, 2), 0) == 1
    assert qpochhammer(F(1, 3), F(1, 2), 1) == F(2, 3)
    assert qpochhammer(F(1, 3), F(1, 2), 2) == F(2, 3) * F(5, 6)
    assert qpochhammer(1, F(1, 2), 3) == 0


def test_multi_is_product():
    q = F(1, 4)
    assert qpochhammer_multi([F(1, 2), F(2, 3)], q, 3) == qpochhammer(F(1, 2), q, 3) * qpochhammer(F(2, 3), q, 3)


@given(small, qs, st.integers(0, 6), st.integers(0, 6))
def test_pochhammer_splits(a, q, m, n):
    assert qpochhammer(a, q, m + n) == qpochhammer(a, q, m) * qpochhammer(a * q**m, q, n)


@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_format_canonical():
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-6, 4)) == "-3/2"


@pytest.mark.parametrize("bad", ["1.5", "a/b", "", "1/-2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("3/0")


def test_to_fraction_rejects_float():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction("7/21") == F(1, 3)


def test_q_chu_vandermonde():
    # 2phi1(q^-n, b; c; q, q) = (c/b; q)_n / (c; q)_n * b^n
    q, b, c = F(1, 3), F(2, 5), F(3, 7)
    for n in range(6):
        spec = HyperSpec((q**-n, b), (c,), q, q, n + 1)
        assert basic_hyper_terminating(spec) == qpochhammer(c / b, q, n) / qpochhammer(c, q, n) * b**n


def test_hyper_rejects_lower_collision():
    q = F(1, 2)
    with pytest.raises(ZeroDivisionError):
        HyperSpec((q**-3, F(1, 5)), (q**-1,), q, q, 4)


def test_inf_product_converges():
    q = 0.5
    approx = qpochhammer_inf_approx(0.3, q)
    assert abs(approx - float(qpochhammer(F(3, 10), F(1, 2), 200))) < 1e-14
    with pytest.raises(ValueError):
        qpochhammer_inf_approx(0.3, 1.0)


def test_interpolation_degree_and_leading():
    pts = [(F(k), F(3) * k**3 - k + 2) for k in range(7)]
    assert interpolation_degree(pts) == 3
    assert leading_coefficient(pts, 3) == 3
    assert interpolation_degree([(F(k), F(0)) for k in range(3)]) == -1
