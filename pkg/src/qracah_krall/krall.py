"""Mass points at both ends of the lattice: u + A delta_{x(0)} + B delta_{x(N)}.

The generic part (``KrallFamily``) only needs the base family's values,
norms and kernels, so the dual q-Hahn, q-Hahn and classical Racah limits
reuse it unchanged.  The q-Racah specific part provides the alternative
representations: the kernel-quotient form, phi(s) times the polynomial as
a two-term combination, the two-point (Theta/Xi) form and the basic-series
forms.

Canonical evaluation is

    R~_n(s) = R_n(s) - A R~_n(0) K_{n-1}(s, 0) - B R~_n(N) K_{n-1}(s, N),

which stays valid at s = 0 and s = N where phi vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exactnum import HyperSpec, Number, basic_hyper_terminating, qpochhammer as poch, qpochhammer_multi as pochs
from .family import OrthogonalFamily
from .kernels import as_family, kernel_coeffs, kernel_sum
from .lattice import bwd_quot, fwd_quot
from .qracah import QRacahFamily, RacahParams, theta, xi

__all__ = [
    "MassConfig",
    "KrallExistenceError",
    "DegenerateSeriesError",
    "KrallBoundary",
    "TTRRmod",
    "KrallFamily",
    "krall_family",
    "boundary_modified",
    "eval_krall",
    "ttrr_modified",
    "RepCoeffs",
    "rep_coeffs",
    "eval_rep1",
    "eval_rep2",
    "eval_rep3",
    "SeriesRep",
    "series_data",
    "series_rep",
    "series_rep_direct",
    "series_rep_direct_printed",
    "one_mass_boundary",
    "one_mass_rep2",
    "one_mass_rep3",
    "one_mass_ttrr",
    "phi_one_mass",
]


class KrallExistenceError(ArithmeticError):
    """kappa_{n-1}(0, N) = 0: no monic orthogonal polynomial of degree n."""


class DegenerateSeriesError(ArithmeticError):
    """The q^beta1 parameter of the 5phi4 form is undefined or collides."""


@dataclass(frozen=True)
class MassConfig:
    A: Number = Fraction(0)
    B: Number = Fraction(0)

    @property
    def positive(self) -> bool:
        """Masses in the regime where the modified family always exists."""
        return self.A > 0 and self.B > 0


@dataclass(frozen=True)
class KrallBoundary:
    r0: Number
    rN: Number
    kappa_det: Number
    d2_mod: Number


@dataclass(frozen=True)
class TTRRmod:
    """beta~_n, gamma~_n and the Delta_n, Delta_{n-1} they are built from."""

    n: int
    beta_mod: Number
    gamma_mod: Number
    Delta_n: Number
    Delta_prev: Number


class KrallFamily(OrthogonalFamily):
    """Monic polynomials orthogonal for the base measure plus two end masses."""

    def __init__(self, base: OrthogonalFamily, masses: MassConfig):
        self.base = base
        self.masses_cfg = masses
        self.N = base.N
        self._kernel: dict[tuple[int, int, int], Number] = {}
        self._boundary: dict[int, KrallBoundary] = {}
        self._values: dict[tuple[int, int], Number] = {}

    # -- kernels of the base family -------------------------------------
    def K(self, m: int, s: int, t: int) -> Number:
        if m < 0:
            return 0 * self.base.xval(0)
        key = (m, min(s, t), max(s, t))
        if key not in self._kernel:
            self._kernel[key] = kernel_sum(self.base, m, s, t)
        return self._kernel[key]

    def kappa(self, m: int) -> Number:
        """kappa_m(0, N) = 1 + A K(0,0) + B K(N,N) + AB (K(0,0) K(N,N) - K(0,N)^2)."""
        A, B, N = self.masses_cfg.A, self.masses_cfg.B, self.N
        k00, kNN, k0N = self.K(m, 0, 0), self.K(m, N, N), self.K(m, 0, N)
        return 1 + A * k00 + B * kNN + A * B * (k00 * kNN - k0N**2)

    # -- modified data ----------------------------------------------------
    def boundary(self, n: int) -> KrallBoundary:
        if n in self._boundary:
            return self._boundary[n]
        if not 0 <= n <= self.N:
            raise ValueError(f"degree {n} outside 0..{self.N}")
        A, B, N = self.masses_cfg.A, self.masses_cfg.B, self.N
        kap = self.kappa(n - 1)
        if kap == 0:
            raise KrallExistenceError(f"kappa_{n - 1}(0, N) = 0; degree {n} does not exist")
        p0, pN = self.base.boundary_0(n), self.base.boundary_N(n)
        k00, kNN, k0N = self.K(n - 1, 0, 0), self.K(n - 1, N, N), self.K(n - 1, 0, N)
        r0 = ((1 + B * kNN) * p0 - B * k0N * pN) / kap
        rN = (-A * k0N * p0 + (1 + A * k00) * pN) / kap
        d2_mod = (
            self.base.d2(n)
            + (A * p0**2 * (1 + B * kNN) + B * pN**2 * (1 + A * k00)) / kap
            - 2 * A * B * p0 * pN * k0N / kap
        )
        out = KrallBoundary(r0, rN, kap, d2_mod)
        self._boundary[n] = out
        return out

    def eval(self, n: int, s: int) -> Number:
        key = (n, s)
        if key not in self._values:
            A, B = self.masses_cfg.A, self.masses_cfg.B
            bd = self.boundary(n)
            self._values[key] = (
                self.base.eval(n, s) - A * bd.r0 * self.K(n - 1, s, 0) - B * bd.rN * self.K(n - 1, s, self.N)
            )
        return self._values[key]

    def d2(self, n: int) -> Number:
        return self.boundary(n).d2_mod

    def xval(self, s: int) -> Number:
        return self.base.xval(s)

    def mass(self, s: int) -> Number:
        m = self.base.mass(s)
        if s == 0:
            m = m + self.masses_cfg.A
        if s == self.N:
            m = m + self.masses_cfg.B
        return m

    def boundary_0(self, n: int) -> Number:
        return self.boundary(n).r0

    def boundary_N(self, n: int) -> Number:
        return self.boundary(n).rN

    def beta(self, n: int) -> Number:
        return self.ttrr(n).beta_mod

    def gamma(self, n: int) -> Number:
        return self.ttrr(n).gamma_mod

    def Delta(self, n: int) -> Number:
        """(A R~_n(0) R_n(0) + B R~_n(N) R_n(N)) / d_n^2."""
        if n < 0:
            return 0 * self.base.xval(0)
        A, B = self.masses_cfg.A, self.masses_cfg.B
        bd = self.boundary(n)
        return (A * bd.r0 * self.base.boundary_0(n) + B * bd.rN * self.base.boundary_N(n)) / self.base.d2(n)

    def ttrr(self, n: int) -> TTRRmod:
        A, B = self.masses_cfg.A, self.masses_cfg.B
        base = self.base
        dn, dp = self.Delta(n), self.Delta(n - 1)
        if 1 + dp == 0:
            raise ZeroDivisionError(f"1 + Delta_{n - 1} vanishes")
        gamma_mod = base.gamma(n) * (1 + dn) / (1 + dp) if n >= 1 else 0 * dn

        def pair(at0: bool, k: int) -> Number:
            """R~_k(end) R_{k-1}(end) / d_{k-1}^2; zero for k = 0 and k = N+1.

            On N+1 nodes the monic degree-(N+1) member is the node polynomial,
            which vanishes at both ends.
            """
            if k == 0 or k == self.N + 1:
                return 0 * dn
            bd = self.boundary(k)
            if at0:
                return bd.r0 * base.boundary_0(k - 1) / base.d2(k - 1)
            return bd.rN * base.boundary_N(k - 1) / base.d2(k - 1)

        beta_mod = (
            base.beta(n)
            - A * (pair(True, n) - pair(True, n + 1))
            - B * (pair(False, n) - pair(False, n + 1))
        )
        return TTRRmod(n, beta_mod, gamma_mod, dn, dp)


@lru_cache(maxsize=128)
def krall_family(fam: OrthogonalFamily, m: MassConfig) -> KrallFamily:
    return KrallFamily(fam, m)


def _kf(fam, m: MassConfig) -> KrallFamily:
    return krall_family(as_family(fam), m)


def boundary_modified(fam, m: MassConfig, n: int) -> KrallBoundary:
    return _kf(fam, m).boundary(n)


def eval_krall(fam, m: MassConfig, n: int, s: int) -> Number:
    return _kf(fam, m).eval(n, s)


def ttrr_modified(fam, m: MassConfig, n: int) -> TTRRmod:
    return _kf(fam, m).ttrr(n)


# --------------------------------------------------- q-Racah representations


def _qracah(kf: KrallFamily) -> tuple[QRacahFamily, RacahParams]:
    if not isinstance(kf.base, QRacahFamily):
        raise TypeError("representation formulas need a q-Racah base family")
    return kf.base, kf.base.params


def _phi(p: RacahParams, s: int) -> Number:
    q, dg, N = p.q, p.delta * p.gamma, p.N
    return (1 - dg * q ** (N + 1) * q**s) * (1 - dg * q ** (s + 1)) * (q ** (-s) - 1) * (q ** (-s) - q ** (-N))


@dataclass(frozen=True)
class RepCoeffs:
    A_bar: Callable[[int, int], Number]
    B_bar: Callable[[int, int], Number]
    C_bar: Callable[[int, int], Number]
    phi: Callable[[int], Number]
    A_sn: Callable[[int, int], Number]
    B_sn: Callable[[int, int], Number]
    a_sn: Callable[[int, int], Number]
    b_sn: Callable[[int, int], Number]


def rep_coeffs(kf: KrallFamily) -> RepCoeffs:
    base, p = _qracah(kf)
    A, B, N, q = kf.masses_cfg.A, kf.masses_cfg.B, p.N, p.q
    dg = p.delta * p.gamma
    kc = kernel_coeffs(p)

    def A_bar(s, n):
        bd = kf.boundary(n)
        return -A * bd.r0 * kc.kappa0(s, n) - B * bd.rN * kc.kappaN(s, n)

    def B_bar(s, n):
        return -A * kf.boundary(n).r0 * kc.kappa0_bar(s, n)

    def C_bar(s, n):
        return -B * kf.boundary(n).rN * kc.kappaN_bar(s, n)

    def phi(s):
        return _phi(p, s)

    def lin_N(s):
        return (q ** (-s) - q ** (-N)) * (1 - dg * q ** (N + 1) * q**s)

    def lin_0(s):
        return (1 - dg * q ** (s + 1)) * (q ** (-s) - 1)

    def A_sn(s, n):
        bd = kf.boundary(n)
        corr = A * bd.r0 * base.boundary_0(n - 1) * lin_N(s) + B * bd.rN * base.boundary_N(n - 1) * lin_0(s)
        return phi(s) - corr / base.d2(n - 1)

    def B_sn(s, n):
        bd = kf.boundary(n)
        return (A * bd.r0 * base.boundary_0(n) * lin_N(s) + B * bd.rN * base.boundary_N(n) * lin_0(s)) / base.d2(
            n - 1
        )

    def a_sn(s, n):
        return A_sn(s, n) + B_sn(s, n) * theta(p, s, n)

    def b_sn(s, n):
        return B_sn(s, n) * xi(p, s, n)

    return RepCoeffs(A_bar, B_bar, C_bar, phi, A_sn, B_sn, a_sn, b_sn)


def _need_degree(n: int, N: int) -> None:
    if not 1 <= n <= N:
        raise ValueError(f"representation formulas need 1 <= n <= N, got n={n}")


def eval_rep1(kf: KrallFamily, n: int, s: int) -> Number:
    """R_n + A_bar R_{n-1} + B_bar nabla R_{n-1}/nabla x + C_bar Delta R_{n-1}/Delta x."""
    base, p = _qracah(kf)
    _need_degree(n, p.N)
    c = rep_coeffs(kf)
    r = lambda t: base.eval(n - 1, t)  # noqa: E731
    return (
        base.eval(n, s)
        + c.A_bar(s, n) * r(s)
        + c.B_bar(s, n) * bwd_quot(r, p.lat, s)
        + c.C_bar(s, n) * fwd_quot(r, p.lat, s)
    )


def eval_rep2(kf: KrallFamily, n: int, s: int) -> Number:
    """phi(s) R~_n(s) = A(s,n) R_n(s) + B(s,n) R_{n-1}(s)."""
    base, p = _qracah(kf)
    _need_degree(n, p.N)
    c = rep_coeffs(kf)
    return c.A_sn(s, n) * base.eval(n, s) + c.B_sn(s, n) * base.eval(n - 1, s)


def eval_rep3(kf: KrallFamily, n: int, s: int) -> Number:
    """phi(s) R~_n(s) = a(s;n) R_n(s) + b(s;n) R_n(s+1)."""
    base, p = _qracah(kf)
    _need_degree(n, p.N)
    c = rep_coeffs(kf)
    return c.a_sn(s, n) * base.eval(n, s) + c.b_sn(s, n) * base.eval(n, s + 1)


@dataclass(frozen=True)
class SeriesRep:
    """Ingredients of the 5phi4 form at one (s, n)."""

    vartheta_n: Number
    q_beta1: Number
    lead: Number  # -(A ab q^n vartheta + B q^-n) / (1 - q^-n)
    D_n: Number

    def Pi1(self, qk: Number) -> Number:
        """Linear factor lead * (q^k - q^beta1)."""
        return self.lead * (qk - self.q_beta1)


def _vartheta(p: RacahParams, n: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    return (
        (1 - a * q**n)
        * (1 - b * d * q**n)
        * (1 - c * q**n)
        * (1 - q ** (-n))
        / ((1 - ab * q ** (2 * n - 1)) * (1 - ab * q ** (2 * n)))
    )


def _lambda_prime(p: RacahParams, n: int) -> Number:
    """(aq; q)_{n-1} (bdq; q)_{n-1} (gq; q)_{n-1} / (ab q^n; q)_{n-1}."""
    q = p.q
    return pochs((p.alpha * q, p.beta * p.delta * q, p.gamma * q), q, n - 1) / poch(
        p.alpha * p.beta * q**n, q, n - 1
    )


def series_data(kf: KrallFamily, n: int, s: int) -> SeriesRep:
    _, p = _qracah(kf)
    _need_degree(n, p.N)
    c = rep_coeffs(kf)
    q, ab = p.q, p.alpha * p.beta
    A_, B_ = c.A_sn(s, n), c.B_sn(s, n)
    th = _vartheta(p, n)
    den = A_ * ab * q**n * th + B_ * q ** (-n)
    if den == 0:
        raise DegenerateSeriesError(f"q^beta1 has a zero denominator at (n={n}, s={s})")
    qb1 = (A_ * th + B_) / den
    if qb1 == 0:
        raise DegenerateSeriesError(f"q^beta1 = 0 at (n={n}, s={s}); q^(1-beta1) undefined")
    lead = -den / (1 - q ** (-n))
    D = _lambda_prime(p, n) * (1 - qb1) * lead
    return SeriesRep(th, qb1, lead, D)


def series_rep(kf: KrallFamily, n: int, s: int) -> Number:
    """phi(s) R~_n(s) = D_n(s) * 5phi4(q^-n, ab q^n, q^-s, dg q^(s+1), q^(1-b1); aq, bdq, gq, q^-b1 | q, q)."""
    _, p = _qracah(kf)
    data = series_data(kf, n, s)
    q = p.q
    try:
        spec = HyperSpec(
            upper=(q ** (-n), p.alpha * p.beta * q**n, q ** (-s), p.delta * p.gamma * q ** (s + 1), q / data.q_beta1),
            lower=(p.alpha * q, p.beta * p.delta * q, p.gamma * q, 1 / data.q_beta1),
            base=q,
            argument=q,
            terms=n + 1,
        )
    except ZeroDivisionError as exc:
        raise DegenerateSeriesError(str(exc)) from exc
    return data.D_n * basic_hyper_terminating(spec)


def _phi43_shift(p: RacahParams, m: int, ab_power: int, s: int) -> Number:
    q = p.q
    spec = HyperSpec(
        upper=(q ** (-m), p.alpha * p.beta * q**ab_power, q ** (-s), p.delta * p.gamma * q ** (s + 1)),
        lower=(p.alpha * q, p.beta * p.delta * q, p.gamma * q),
        base=q,
        argument=q,
        terms=m + 1,
    )
    return basic_hyper_terminating(spec)


def _big_lambda(p: RacahParams, n: int, shift: int) -> Number:
    q = p.q
    return pochs((p.alpha * q, p.beta * p.delta * q, p.gamma * q), q, n) / poch(p.alpha * p.beta * q ** (n + shift), q, n)


def series_rep_direct(kf: KrallFamily, n: int, s: int) -> Number:
    """A(s,n) Lambda_n 4phi3(n) + B(s,n) Lambda_{n-1} 4phi3(n-1).

    Lambda_n = (aq, bdq, gq; q)_n / (ab q^(n+1); q)_n, the prefactor of R_n.
    """
    _, p = _qracah(kf)
    _need_degree(n, p.N)
    c = rep_coeffs(kf)
    return c.A_sn(s, n) * _big_lambda(p, n, 1) * _phi43_shift(p, n, n + 1, s) + c.B_sn(s, n) * _big_lambda(
        p, n - 1, 1
    ) * _phi43_shift(p, n - 1, n, s)


def series_rep_direct_printed(kf: KrallFamily, n: int, s: int) -> Number:
    """Same, with Lambda_n = (aq, bdq, gq; q)_n / (ab q^n; q)_n as displayed."""
    _, p = _qracah(kf)
    _need_degree(n, p.N)
    c = rep_coeffs(kf)
    return c.A_sn(s, n) * _big_lambda(p, n, 0) * _phi43_shift(p, n, n + 1, s) + c.B_sn(s, n) * _big_lambda(
        p, n - 1, 0
    ) * _phi43_shift(p, n - 1, n, s)


# ------------------------------------------------------------- one mass
#
# Transcriptions of the single-mass formulas, written independently of
# the two-mass code so that setting B = 0 there can be checked against them.


def phi_one_mass(p: RacahParams, s: int) -> Number:
    return (p.q ** (-s) - 1) * (1 - p.delta * p.gamma * p.q ** (s + 1))


def one_mass_boundary(base: QRacahFamily, A: Number, n: int) -> Number:
    """R~_n(0) = R_n(0) / (1 + A K_{n-1}(0, 0))."""
    return base.boundary_0(n) / (1 + A * kernel_sum(base, n - 1, 0, 0))


def one_mass_rep2(base: QRacahFamily, A: Number, n: int, s: int) -> tuple[Number, Number, Number]:
    """(phi1(s), A(s,n), B(s,n)) for the single mass at s = 0."""
    p = base.params
    r0 = one_mass_boundary(base, A, n)
    ph = phi_one_mass(p, s)
    A_sn = ph - A / base.d2(n - 1) * r0 * base.boundary_0(n - 1)
    B_sn = A / base.d2(n - 1) * r0 * base.boundary_0(n)
    return ph, A_sn, B_sn


def one_mass_rep3(base: QRacahFamily, A: Number, n: int, s: int) -> Number:
    """phi1(s) R~_n(s) = a(s;n) R_n(s) + b(s;n) R_n(s+1)."""
    p = base.params
    _, A_sn, B_sn = one_mass_rep2(base, A, n, s)
    return (A_sn + B_sn * theta(p, s, n)) * base.eval(n, s) + B_sn * xi(p, s, n) * base.eval(n, s + 1)


def one_mass_ttrr(base: QRacahFamily, A: Number, n: int) -> tuple[Number, Number]:
    """(beta~_n, gamma~_n) with only the mass at s = 0."""

    def delta(k):
        if k < 0:
            return 0
        return A * one_mass_boundary(base, A, k) * base.boundary_0(k) / base.d2(k)

    def pair(k):
        if k == 0 or k == base.N + 1:
            return 0
        return one_mass_boundary(base, A, k) * base.boundary_0(k - 1) / base.d2(k - 1)

    beta = base.beta(n) - A * (pair(n) - pair(n + 1))
    gamma = base.gamma(n) * (1 + delta(n)) / (1 + delta(n - 1)) if n >= 1 else 0
    return beta, gamma
