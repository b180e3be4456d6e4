from fractions import Fraction as F

import pytest

from qracah_krall.lattice import Lattice, QBase, bwd_quot, fwd_quot


@pytest.fixture
def lat():
    return Lattice(QBase(F(1, 2)), F(1, 7))


def test_base_validation():
    for v in (F(0), F(1), F(3, 2)):
        with pytest.raises(ValueError):
            QBase(v)
    assert QBase(F(1, 3)).q == F(1, 9)
    assert QBase(F(1, 3)).half_power(-3) == 27


def test_delta_closed_form(lat):
    for s in range(-2, 6):
        assert lat.delta_x(s) == lat.at(s + 1) - lat.at(s)
        assert lat.nabla_x(s) == lat.at(s) - lat.at(s - 1)
        assert lat.delta_x_half(s) == lat.x(2 * s + 1) - lat.x(2 * s - 1)


def test_quotients_on_linear_function(lat):
    f = lambda s: 3 * lat.at(s) + 1  # noqa: E731
    assert fwd_quot(f, lat, 2) == 3
    assert bwd_quot(f, lat, 2) == 3


def test_injectivity_failure():
    # c1 = q^-1 makes x(0) = x(-1) ... and x(s) = x(t) whenever c1 q^(s+t) = 1
    base = QBase(F(1, 2))
    with pytest.raises(ValueError):
        Lattice(base, base.q**-3).check_injective(4)


def test_zero_step_raises():
    base = QBase(F(1, 2))
    lat = Lattice(base, base.q**-3)
    with pytest.raises(ZeroDivisionError):
        fwd_quot(lambda s: lat.at(s), lat, 1)
