from fractions import Fraction as F

import pytest

from qracah_krall.exactnum import leading_coefficient
from qracah_krall.lattice import bwd_quot, fwd_quot
from qracah_krall.qracah import (
    QRacahFamily,
    RacahParams,
    Truncation,
    alpha_bar,
    alpha_hat,
    beta_bar,
    beta_hat,
    boundary_N,
    d2,
    eval_hyper,
    eval_ttrr,
    gamma_n,
    gamma_n_product,
    phi_big,
    sigma,
    sigma_printed,
    sode_probe,
    sode_residual,
    table_row,
    tau,
    theta,
    theta_printed,
    weight,
    weight_prefactor_check,
    xi,
    xi_printed,
)

from conftest import params_for


def test_degree_zero_is_one(p4):
    assert all(eval_hyper(p4, 0, s) == 1 for s in range(5))


def test_build_derives_truncated_parameter():
    p = RacahParams.canonical(3)
    assert p.gamma * p.q == p.q**-3
    assert p.truncation is Truncation.GAMMA
    q = p.q
    pb = params_for("betadelta", 3)
    assert pb.beta * pb.delta * q == q**-3


def test_rejects_broken_truncation():
    p = RacahParams.canonical(3)
    with pytest.raises(ValueError, match="truncation"):
        RacahParams(p.base, p.alpha, p.beta, p.gamma * 2, p.delta, 3, Truncation.GAMMA)


def test_rejects_alpha_beta_resonance():
    q = F(1, 4)
    with pytest.raises(ValueError, match="alpha\\*beta"):
        RacahParams.build(F(1, 2), alpha=F(1), beta=q**-2, delta=F(1, 3), N=3)


def test_degree_above_N_rejected(p4):
    with pytest.raises(ValueError):
        eval_hyper(p4, 5, 0)


def test_hyper_matches_recurrence(any_truncation):
    p = any_truncation
    for n in range(p.N + 1):
        for s in range(p.N + 2):
            assert eval_hyper(p, n, s) == eval_ttrr(p, n, p.lat.at(s))


def test_monic(any_truncation):
    p = any_truncation
    fam = QRacahFamily(p)
    for n in range(p.N + 1):
        assert leading_coefficient([(fam.xval(s), fam.eval(n, s)) for s in range(p.N + 1)], n) == 1


def test_boundary_closed_forms(any_truncation):
    p = any_truncation
    for n in range(p.N + 1):
        assert boundary_N(p, n) == eval_hyper(p, n, p.N)


def test_orthogonality_with_table_norms(canonical):
    p = canonical
    fam = QRacahFamily(p)
    assert sum(fam.masses()) == 1
    for n in range(p.N + 1):
        for m in range(n + 1):
            ip = sum(fam.mass(s) * fam.eval(n, s) * fam.eval(m, s) for s in range(p.N + 1))
            assert ip == (d2(p, n) if n == m else 0)


def test_gamma_is_norm_ratio_and_product(any_truncation):
    p = any_truncation
    for n in range(1, p.N + 1):
        assert gamma_n(p, n) == d2(p, n) / d2(p, n - 1) == gamma_n_product(p, n)


def test_weight_is_not_positive_on_canonical_set():
    # exact orthogonality does not need positivity; record that it fails here
    p = RacahParams.canonical(4)
    assert any(weight(p, s) * p.lat.delta_x_half(s) < 0 for s in range(5))


def test_structure_relations(any_truncation):
    p = any_truncation
    fam = QRacahFamily(p)
    for n in range(p.N):
        r = lambda t: fam.eval(n, t)  # noqa: E731
        for s in range(p.N + 1):
            nxt = fam.eval(n + 1, s)
            assert phi_big(p, s) * fwd_quot(r, p.lat, s) == alpha_hat(p, n) * nxt + beta_hat(p, n, s) * r(s)
            assert sigma(p, s) * bwd_quot(r, p.lat, s) == alpha_bar(p, n) * nxt + beta_bar(p, n, s) * r(s)


def test_phi_is_sigma_plus_tau_step(any_truncation):
    p = any_truncation
    for s in range(p.N + 1):
        assert phi_big(p, s) == sigma(p, s) + tau(p, s) * p.lat.delta_x_half(s)


def test_printed_sigma_only_for_gamma_truncation():
    pg = RacahParams.canonical(4)
    assert all(sigma_printed(pg, s) == sigma(pg, s) for s in range(5))
    pa = params_for("alpha", 4)
    assert any(sigma_printed(pa, s) != sigma(pa, s) for s in range(5))


def test_sode_convention_is_pinned(any_truncation):
    assert sode_probe(any_truncation) == {"tau-forward": True, "tau-symmetric": False}


def test_sode_unknown_convention(p4):
    with pytest.raises(ValueError, match="unknown convention"):
        sode_residual(p4, 1, 1, "central")


def test_theta_xi_identity(any_truncation):
    p = any_truncation
    fam = QRacahFamily(p)
    for n in range(1, p.N + 1):
        for s in range(p.N + 1):
            assert theta(p, s, n) * fam.eval(n, s) + xi(p, s, n) * fam.eval(n, s + 1) == fam.eval(n - 1, s)


def test_theta_as_displayed_fails(p4):
    fam = QRacahFamily(p4)
    bad = [
        (n, s)
        for n in range(1, 5)
        for s in range(5)
        if theta_printed(p4, s, n) * fam.eval(n, s) + xi_printed(p4, s, n) * fam.eval(n, s + 1) != fam.eval(n - 1, s)
    ]
    assert bad


def test_xi_displayed_matches_for_gamma_truncation(p4):
    assert all(xi_printed(p4, s, n) == xi(p4, s, n) for n in range(1, 5) for s in range(5))


def test_weight_prefactor_off_by_gamma_delta_q(canonical):
    p = canonical
    assert weight_prefactor_check(p, corrected=True) < 1e-12
    gdq = float(p.gamma * p.delta * p.q)
    assert weight_prefactor_check(p) == pytest.approx(gdq, rel=1e-9)


def test_table_row_is_consistent(p4):
    row = table_row(p4, 2)
    assert row.sigma(1) == sigma(p4, 1)
    assert row.Phi(3) == phi_big(p4, 3)
