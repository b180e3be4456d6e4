"""Monic q-Racah polynomials on x(s) = q^-s + delta*gamma*q^(s+1).

Holds the parameter record, the basic-series and recurrence evaluators,
the full table of main data (recurrence coefficients, norms, difference
equation coefficients, structure-relation coefficients), endpoint closed
forms, the Theta/Xi two-point identity and the difference-equation probe.

Every function is arithmetic-generic: exact for :class:`Fraction` inputs,
floating when the parameters are floats (used by the q -> 1 sweep).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .exactnum import (
    HyperSpec,
    Number,
    basic_hyper_terminating,
    qpochhammer as poch,
    qpochhammer_inf_approx,
    qpochhammer_multi as pochs,
)
from .family import OrthogonalFamily
from .lattice import Lattice, QBase, bwd_quot, fwd_quot

__all__ = [
    "Truncation",
    "RacahParams",
    "TableRow",
    "QRacahFamily",
    "eval_hyper",
    "eval_ttrr",
    "boundary_0",
    "boundary_N",
    "weight_unnormalized",
    "weight",
    "weight_constant",
    "weight_prefactor_check",
    "beta_n",
    "gamma_n",
    "gamma_n_product",
    "lambda_n",
    "d2",
    "sigma",
    "sigma_printed",
    "phi_big",
    "tau",
    "tau_n",
    "alpha_bar",
    "alpha_hat",
    "beta_bar",
    "beta_hat",
    "table_row",
    "theta",
    "theta_printed",
    "xi",
    "xi_printed",
    "SODE_CONVENTIONS",
    "sode_residual",
    "sode_probe",
]


class Truncation(enum.Enum):
    ALPHA = "alpha"
    BETADELTA = "betadelta"
    GAMMA = "gamma"


def _is_zero(value: Number) -> bool:
    if isinstance(value, float):
        return abs(value) < 1e-300
    return value == 0


@dataclass(frozen=True)
class RacahParams:
    """(q, alpha, beta, gamma, delta, N) with one active truncation.

    ``exact`` parameters are validated strictly; floating ones (q -> 1
    sweeps) are validated up to a relative tolerance on the truncation.
    """

    base: QBase
    alpha: Number
    beta: Number
    gamma: Number
    delta: Number
    N: int
    truncation: Truncation

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        q = self.q
        target = q ** (-self.N)
        held = {
            Truncation.ALPHA: self.alpha * q,
            Truncation.BETADELTA: self.beta * self.delta * q,
            Truncation.GAMMA: self.gamma * q,
        }[self.truncation]
        if self.is_exact:
            if held != target:
                raise ValueError(
                    f"truncation {self.truncation.value}: expected q^-N = {target}, got {held}"
                )
        elif abs(held - target) > 1e-9 * abs(target):
            raise ValueError(f"truncation {self.truncation.value} violated")
        if self.delta == 0 or self.gamma == 0:
            raise ValueError("gamma and delta must be nonzero")
        ab = self.alpha * self.beta
        for k in range(0, 2 * self.N + 3):
            if self.is_exact and ab * q**k == 1:
                raise ValueError(f"alpha*beta*q^{k} = 1 makes a table denominator vanish")
        if self.is_exact:
            self.lat.check_injective(self.N)

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.base.v, float)

    @property
    def q(self) -> Number:
        return self.base.q

    @cached_property
    def lat(self) -> Lattice:
        return Lattice(self.base, self.delta * self.gamma * self.q)

    @classmethod
    def build(cls, v, alpha=None, beta=None, gamma=None, delta=None, N=1, truncation="gamma"):
        """Fill in the truncated parameter from q^-N and validate."""
        trunc = Truncation(truncation) if not isinstance(truncation, Truncation) else truncation
        base = QBase(v)
        q = base.q
        edge = q ** (-N - 1)
        if trunc is Truncation.ALPHA:
            alpha = edge
        elif trunc is Truncation.GAMMA:
            gamma = edge
        else:
            beta = edge / delta
        missing = [k for k, val in dict(alpha=alpha, beta=beta, gamma=gamma, delta=delta).items() if val is None]
        if missing:
            raise ValueError(f"missing parameter(s): {', '.join(missing)}")
        return cls(base, alpha, beta, gamma, delta, N, trunc)

    @classmethod
    def canonical(cls, N: int = 4) -> "RacahParams":
        return cls.build(
            Fraction(1, 2), alpha=Fraction(1, 5), beta=Fraction(1, 7), delta=Fraction(1, 3), N=N, truncation="gamma"
        )


# ----------------------------------------------------------------- evaluation


def _lambda_prefactor(p: RacahParams, n: int, shift: int = 1) -> Number:
    """(aq, bdq, gq; q)_n / (ab q^(n+shift); q)_n."""
    q = p.q
    return pochs((p.alpha * q, p.beta * p.delta * q, p.gamma * q), q, n) / poch(
        p.alpha * p.beta * q ** (n + shift), q, n
    )


def _phi43(p: RacahParams, n: int, s: int, ab_shift: int = 1) -> Number:
    q = p.q
    spec = HyperSpec(
        upper=(q ** (-n), p.alpha * p.beta * q ** (n + ab_shift), q ** (-s), p.delta * p.gamma * q ** (s + 1)),
        lower=(p.alpha * q, p.beta * p.delta * q, p.gamma * q),
        base=q,
        argument=q,
        terms=n + 1,
    )
    return basic_hyper_terminating(spec)


def eval_hyper(p: RacahParams, n: int, s: int) -> Number:
    """Monic R_n(x(s)) from the terminating 4phi3 with its normalising prefactor."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > p.N:
        raise ValueError(f"degree {n} exceeds N = {p.N}")
    den = poch(p.alpha * p.beta * p.q ** (n + 1), p.q, n)
    if _is_zero(den):
        raise ZeroDivisionError("(alpha beta q^(n+1); q)_n vanishes")
    return _lambda_prefactor(p, n) * _phi43(p, n, s)


def eval_ttrr(p: RacahParams, n: int, xval: Number) -> Number:
    """R_n(xval) from the monic three-term recurrence."""
    prev, cur = 0, 1 + 0 * xval
    for k in range(n):
        prev, cur = cur, (xval - beta_n(p, k)) * cur - (gamma_n(p, k) * prev if k else 0)
    return cur


def boundary_0(p: RacahParams, n: int) -> Number:
    return _lambda_prefactor(p, n)


def boundary_N(p: RacahParams, n: int) -> Number:
    """Closed form of R_n at s = N for the active truncation."""
    a, b, c, d, q, N = p.alpha, p.beta, p.gamma, p.delta, p.q, p.N
    if p.truncation is Truncation.ALPHA:
        return (d * c * q ** (N + 1)) ** n * pochs((q ** (-N), b / c * q ** (-N), q ** (-N) / d), q, n) / poch(
            b * q ** (n - N), q, n
        )
    if p.truncation is Truncation.GAMMA:
        return d**n * pochs((q ** (-N), b * q, a * q / d), q, n) / poch(a * b * q ** (n + 1), q, n)
    return (c / b) ** n * pochs((q ** (-N), b * q, a * q ** (-N) / (d * c)), q, n) / poch(
        a * b * q ** (n + 1), q, n
    )


# --------------------------------------------------------------------- weight


def weight_unnormalized(p: RacahParams, s: int) -> Number:
    """(ab)^-s (dgq, aq, bdq, gq; q)_s / (q, dgq/a, gq/b, dq; q)_s."""
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    if _is_zero(a * b):
        raise ZeroDivisionError("weight needs alpha*beta != 0")
    den = pochs((q, d * c * q / a, c * q / b, d * q), q, s)
    if _is_zero(den):
        raise ZeroDivisionError(f"weight denominator vanishes at s={s}")
    return (a * b) ** (-s) * pochs((d * c * q, a * q, b * d * q, c * q), q, s) / den


@lru_cache(maxsize=256)
def weight_constant(p: RacahParams) -> Number:
    """C with sum_s C * rho_hat(s) * dx(s - 1/2) = 1."""
    total = sum(weight_unnormalized(p, s) * p.lat.delta_x_half(s) for s in range(p.N + 1))
    if _is_zero(total):
        raise ZeroDivisionError("weight has zero total mass")
    return 1 / total


def weight(p: RacahParams, s: int) -> Number:
    """Probability-normalised rho(s)."""
    return weight_constant(p) * weight_unnormalized(p, s)


def weight_prefactor_infinite(p: RacahParams, corrected: bool = False) -> float:
    """The infinite-product prefactor of rho in floating point.

    As displayed the denominator carries (gdq^2; q)_inf; ``corrected`` uses
    (gdq; q)_inf, which is what the exact normalisation actually equals.
    """
    a, b, c, d = (float(t) for t in (p.alpha, p.beta, p.gamma, p.delta))
    q = float(p.q)
    v = float(p.base.v)
    num = 1.0
    for t in (1 / (a * b * q), c * d * q / a, c * q / b, d * q):
        num *= qpochhammer_inf_approx(t, q)
    den = 1.0
    for t in (c / (a * b), d / a, 1 / b, c * d * q * (1 if corrected else q)):
        den *= qpochhammer_inf_approx(t, q)
    return num / den / (1 / v - v)


def weight_prefactor_check(p: RacahParams, corrected: bool = False) -> float:
    """Relative gap between the exact constant and the infinite-product prefactor."""
    exact = float(weight_constant(p))
    approx = weight_prefactor_infinite(p, corrected)
    return abs(exact - approx) / abs(exact)


# --------------------------------------------------------------- main data


def _ab(p: RacahParams) -> Number:
    return p.alpha * p.beta


def _A(p: RacahParams, n: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    return (
        (1 - a * q ** (n + 1))
        * (1 - ab * q ** (n + 1))
        * (1 - b * d * q ** (n + 1))
        * (1 - c * q ** (n + 1))
        / ((1 - ab * q ** (2 * n + 1)) * (1 - ab * q ** (2 * n + 2)))
    )


def _C(p: RacahParams, n: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    return (
        q
        * (1 - q**n)
        * (1 - b * q**n)
        * (c - ab * q**n)
        * (d - a * q**n)
        / ((1 - ab * q ** (2 * n)) * (1 - ab * q ** (2 * n + 1)))
    )


def beta_n(p: RacahParams, n: int) -> Number:
    return 1 + p.delta * p.gamma * p.q - _A(p, n) - _C(p, n)


def gamma_n_product(p: RacahParams, n: int) -> Number:
    """The two printed fractions of the gamma_n row, read as a product."""
    return _A(p, n - 1) * _C(p, n)


def gamma_n(p: RacahParams, n: int) -> Number:
    if n == 0:
        return 0 * p.q
    return gamma_n_product(p, n)


def lambda_n(p: RacahParams, n: int) -> Number:
    q = p.q
    return -(p.base.half_power(-2 * n + 1)) * (1 - q**n) * (1 - _ab(p) * q ** (n + 1))


def d2(p: RacahParams, n: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    head = (1 - ab * q) * (d * c * q) ** n / (1 - ab * q ** (2 * n + 1))
    num = pochs((a * q, b * d * q, c * q, q, ab / c * q, a / d * q, b * q), q, n)
    den = pochs((ab * q, ab * q ** (n + 1), ab * q ** (n + 1)), q, n)
    return head * num / den


def _vdiff(p: RacahParams) -> Number:
    """q^(1/2) - q^(-1/2)."""
    return p.base.v - 1 / p.base.v


def _quartic(p: RacahParams, s: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    qs = q**s
    return (qs - 1) * (qs - 1 / d) * (qs - b / c) * (qs - a / (d * c))


def sigma_printed(p: RacahParams, s: int) -> Number:
    """sigma(s) with the displayed delta^2 q^-2N prefactor (gamma truncation only)."""
    return p.delta**2 * p.q ** (-2 * p.N) * _vdiff(p) ** 2 * p.q ** (-2 * s) * _quartic(p, s)


def sigma(p: RacahParams, s: int) -> Number:
    """sigma(s) with (delta gamma q)^2 as prefactor.

    Same as the displayed row when gamma q = q^-N; this form also keeps
    Phi = sigma + tau * dx(s - 1/2) under the other two truncations.
    """
    return (p.delta * p.gamma * p.q) ** 2 * _vdiff(p) ** 2 * p.q ** (-2 * s) * _quartic(p, s)


def _phi_quartic(p: RacahParams, s: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    return (1 - a * q ** (s + 1)) * (1 - b * d * q ** (s + 1)) * (1 - c * q ** (s + 1)) * (1 - d * c * q ** (s + 1))


def phi_big(p: RacahParams, s: int) -> Number:
    """Phi(s) row of the table."""
    return _vdiff(p) ** 2 * p.q ** (-2 * s) * _phi_quartic(p, s)


def tau(p: RacahParams, s: int) -> Number:
    q, dg = p.q, p.delta * p.gamma
    bracket = _phi_quartic(p, s) - (dg * q) ** 2 * _quartic(p, s)
    return -_vdiff(p) * q ** (-s) / (1 - dg * q ** (2 * s + 1)) * bracket


def _struct_bracket(p: RacahParams, n: int, s: int) -> Number:
    """{(1 - ab q^(2n+2)) x(s + n/2) + q^(-n/2)[...]}, shared by tau_n and beta_bar."""
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    inner = (1 - a * q ** (n + 1)) * (1 - b * d * q ** (n + 1)) * (1 - c * q ** (n + 1)) - (
        1 + d * c * q ** (n + 1)
    ) * (1 - ab * q ** (2 * n + 2))
    return (1 - ab * q ** (2 * n + 2)) * p.lat.x(2 * s + n) + p.base.half_power(-n) * inner


def tau_n(p: RacahParams, n: int, s: int) -> Number:
    return -p.q ** (-n) * _vdiff(p) * _struct_bracket(p, n, s)


def alpha_bar(p: RacahParams, n: int) -> Number:
    return p.base.half_power(-2 * n + 1) * (-_vdiff(p)) * (1 - _ab(p) * p.q ** (2 * n + 1))


alpha_hat = alpha_bar


def beta_bar(p: RacahParams, n: int, s: int) -> Number:
    ab, q = _ab(p), p.q
    return (
        p.base.half_power(-n + 1)
        * _vdiff(p)
        * (1 - ab * q ** (n + 1))
        / (1 - ab * q ** (2 * n + 2))
        * _struct_bracket(p, n, s)
    )


def beta_hat(p: RacahParams, n: int, s: int) -> Number:
    ab, q = _ab(p), p.q
    correction = (
        p.base.half_power(-2 * s - 2 * n + 1)
        * _vdiff(p)
        * (1 - q**n)
        * (1 - ab * q ** (n + 1))
        * (1 - p.delta * p.gamma * q ** (2 * s + 1))
    )
    return beta_bar(p, n, s) - correction


@dataclass(frozen=True)
class TableRow:
    """Per-degree values of the table for one n; s-dependent rows stay callable."""

    n: int
    beta_n: Number
    gamma_n: Number
    lambda_n: Number
    d2_n: Number
    alpha_bar: Number
    alpha_hat: Number
    params: RacahParams

    def sigma(self, s: int) -> Number:
        return sigma(self.params, s)

    def Phi(self, s: int) -> Number:
        return phi_big(self.params, s)

    def tau(self, s: int) -> Number:
        return tau(self.params, s)

    def tau_n(self, s: int) -> Number:
        return tau_n(self.params, self.n, s)

    def beta_bar(self, s: int) -> Number:
        return beta_bar(self.params, self.n, s)

    def beta_hat(self, s: int) -> Number:
        return beta_hat(self.params, self.n, s)


def table_row(p: RacahParams, n: int) -> TableRow:
    return TableRow(
        n=n,
        beta_n=beta_n(p, n),
        gamma_n=gamma_n(p, n),
        lambda_n=lambda_n(p, n),
        d2_n=d2(p, n),
        alpha_bar=alpha_bar(p, n),
        alpha_hat=alpha_hat(p, n),
        params=p,
    )


# ------------------------------------------------------------- Theta / Xi


def _theta_xi_prefactor(p: RacahParams, n: int) -> Number:
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    num = (1 - ab * q ** (2 * n - 1)) * (1 - ab * q ** (2 * n)) ** 2
    den = (
        (1 - a * q**n)
        * (1 - ab * q**n)
        * (1 - b * d * q**n)
        * (1 - c * q**n)
        * (1 - q**n)
        * (1 - b * q**n)
        * (c - ab * q**n)
        * (d - a * q**n)
    )
    if _is_zero(den):
        raise ZeroDivisionError(f"Theta/Xi prefactor undefined at n={n}")
    return num / den


def xi_printed(p: RacahParams, s: int, n: int) -> Number:
    """Xi as displayed, with the factor (1 - q^(s-N))."""
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    den = 1 - d * c * q ** (2 * s + 2)
    if _is_zero(den):
        raise ZeroDivisionError(f"Xi undefined at s={s}")
    return (
        -q ** (-s - 1 + n)
        * _theta_xi_prefactor(p, n)
        * (1 - a * q ** (s + 1))
        * (1 - b * d * q ** (s + 1))
        * (1 - q ** (-p.N + s))
        * (1 - d * c * q ** (s + 1))
        / den
    )


def xi(p: RacahParams, s: int, n: int) -> Number:
    """Coefficient of R_n(s+1) in R_{n-1}(s) = Theta R_n(s) + Xi R_n(s+1).

    Equals -Phi(s) / (alpha_hat_n gamma_n Delta x(s)); the displayed
    (1 - q^(s-N)) is written as (1 - gamma q^(s+1)) so every truncation works.
    """
    den = 1 - p.delta * p.gamma * p.q ** (2 * s + 2)
    if _is_zero(den):
        raise ZeroDivisionError(f"Xi undefined at s={s}")
    return -p.q ** (-s - 1 + n) * _theta_xi_prefactor(p, n) * _phi_quartic(p, s) / den


def _theta_bracket(p: RacahParams, s: int, n: int) -> Number:
    """beta_hat_n(s) / (q^(-n+1/2) (q^(1/2) - q^(-1/2)))."""
    ab, q = _ab(p), p.q
    return (
        p.base.half_power(n) * (1 - ab * q ** (n + 1)) / (1 - ab * q ** (2 * n + 2)) * _struct_bracket(p, n, s)
        - q ** (-s) * (1 - q**n) * (1 - ab * q ** (n + 1)) * (1 - p.delta * p.gamma * q ** (2 * s + 1))
    )


def theta_printed(p: RacahParams, s: int, n: int) -> Number:
    """Theta transcribed literally; it does not satisfy the identity."""
    pref = _theta_xi_prefactor(p, n)
    first = (p.q ** (-s) - 1) * (1 - p.delta * p.gamma * p.q ** (s + 1)) + _A(p, n) + _C(p, n)
    return -xi_printed(p, s, n) + pref * first - pref * _theta_bracket(p, s, n)


def theta(p: RacahParams, s: int, n: int) -> Number:
    """Coefficient of R_n(s) in the two-point identity.

    Theta = -Xi + ((x(s) - beta_n) + beta_hat_n(s) / alpha_hat_n) / gamma_n.  Against
    the display, the first bracket gains a factor (1 - ab q^(2n+1)) and the
    whole sum a factor 1/q.
    """
    ab, q = _ab(p), p.q
    pref = _theta_xi_prefactor(p, n) / q
    first = (1 - ab * q ** (2 * n + 1)) * (p.lat.at(s) - beta_n(p, n))
    return -xi(p, s, n) + pref * (first - _theta_bracket(p, s, n))


# ------------------------------------------------------ difference equation


def _diff_terms(p: RacahParams, n: int, s: int):
    f = lambda t: eval_hyper_any(p, n, t)  # noqa: E731
    fwd = fwd_quot(f, p.lat, s)
    bwd = bwd_quot(f, p.lat, s)
    half = p.lat.delta_x_half(s)
    if _is_zero(half):
        raise ZeroDivisionError(f"zero half-step at s={s}")
    return f(s), fwd, bwd, half


def _sode_forward(p, n, s, sig):
    r, fwd, bwd, half = _diff_terms(p, n, s)
    return sig(p, s) * (fwd - bwd) / half + tau(p, s) * fwd + lambda_n(p, n) * r


def _sode_symmetric(p, n, s, sig):
    r, fwd, bwd, half = _diff_terms(p, n, s)
    return sig(p, s) * (fwd - bwd) / half + tau(p, s) * (fwd + bwd) / 2 + lambda_n(p, n) * r


SODE_CONVENTIONS = {
    "tau-forward": _sode_forward,
    "tau-symmetric": _sode_symmetric,
}


def sode_residual(p: RacahParams, n: int, s: int, convention: str = "tau-forward", sigma_row=None) -> Number:
    """Residual of sigma D_half[nabla R / nabla x] + tau * (quotient) + lambda_n R at s."""
    try:
        rule = SODE_CONVENTIONS[convention]
    except KeyError:
        raise ValueError(f"unknown convention {convention!r}; known: {sorted(SODE_CONVENTIONS)}") from None
    return rule(p, n, s, sigma_row or sigma)


def sode_probe(p: RacahParams, sigma_row=None) -> dict[str, bool]:
    """Which conventions vanish identically on the interior grid."""
    out = {}
    for name in SODE_CONVENTIONS:
        out[name] = all(
            sode_residual(p, n, s, name, sigma_row) == 0 for n in range(p.N + 1) for s in range(1, p.N)
        )
    return out


def eval_hyper_any(p: RacahParams, n: int, s: int) -> Number:
    """R_n at x(s) for any integer s; the series is a polynomial in x(s)."""
    return eval_hyper(p, n, s)


# --------------------------------------------------------------- family


class QRacahFamily(OrthogonalFamily):
    """The monic q-Racah polynomials exposed through the family contract."""

    def __init__(self, params: RacahParams):
        self.params = params
        self.N = params.N
        self._cache: dict[tuple[int, int], Number] = {}

    def eval(self, n: int, s: int) -> Number:
        key = (n, s)
        if key not in self._cache:
            self._cache[key] = eval_hyper_any(self.params, n, s)
        return self._cache[key]

    def d2(self, n: int) -> Number:
        return d2(self.params, n)

    def xval(self, s: int) -> Number:
        return self.params.lat.at(s)

    def mass(self, s: int) -> Number:
        return weight(self.params, s) * self.params.lat.delta_x_half(s)

    def boundary_0(self, n: int) -> Number:
        return boundary_0(self.params, n)

    def boundary_N(self, n: int) -> Number:
        return boundary_N(self.params, n)

    def beta(self, n: int) -> Number:
        return beta_n(self.params, n)

    def gamma(self, n: int) -> Number:
        return gamma_n(self.params, n)
