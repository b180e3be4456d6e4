from fractions import Fraction as F

import pytest

from qracah_krall.oracle import DiscreteMeasure, QuasiDefiniteError, gram_schmidt_monic, inner_product


def test_two_point_measure():
    mu = DiscreteMeasure([F(0), F(1)], [F(1, 2), F(1, 2)])
    res = gram_schmidt_monic(mu, 1)
    assert res.coeffs[1] == [F(-1, 2), 1]
    assert res.norms == [1, F(1, 4)]
    assert res.betas[0] == F(1, 2)


def test_masses_fold_in():
    mu = DiscreteMeasure([F(0), F(1)], [F(1), F(1)], [(0, F(2))])
    assert mu.node_weights() == [3, 1]
    assert inner_product(mu, [1, 1], [1, 1]) == 4


def test_validation():
    with pytest.raises(ValueError):
        DiscreteMeasure([F(0), F(0)], [F(1), F(1)])
    with pytest.raises(ValueError):
        DiscreteMeasure([F(0), F(1)], [F(1)])
    with pytest.raises(IndexError):
        DiscreteMeasure([F(0)], [F(1)], [(3, F(1))])
    with pytest.raises(ValueError):
        DiscreteMeasure([F(0), F(1)], [F(1), F(-1)])


def test_quasi_definite_failure():
    # total mass 1, mean 2, second moment 4: p1 = x - 2 has zero norm
    mu = DiscreteMeasure([F(-1), F(0), F(1)], [F(1), F(-3), F(3)])
    with pytest.raises(QuasiDefiniteError):
        gram_schmidt_monic(mu, 2)


def test_too_many_degrees():
    with pytest.raises(ValueError):
        gram_schmidt_monic(DiscreteMeasure([F(0), F(1)], [F(1), F(1)]), 2)


def test_float_variant():
    mu = DiscreteMeasure([0.0, 1.0, 2.0], [0.25, 0.5, 0.25])
    res = gram_schmidt_monic(mu, 2)
    assert res.eval(1, 1.0) == pytest.approx(0.0)
    assert res.gammas[1] == pytest.approx(0.5)


def test_matches_family(fam4, masses):
    res = gram_schmidt_monic(DiscreteMeasure.from_family(fam4), 4)
    for n in range(5):
        assert res.norms[n] == fam4.d2(n)
        for s in range(5):
            assert res.eval(n, fam4.xval(s)) == fam4.eval(n, s)
