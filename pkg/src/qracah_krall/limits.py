"""Limit families and the numerical limit harness.

* dual q-Hahn: beta -> 0 with alpha q = q^-N held, an exact substitution;
* q-Hahn on mu(s) = q^-s: alpha = nu, beta = mu, gamma q = q^-N and
  delta = eps -> 0, swept over rational eps so each step stays exact;
* classical Racah on lambda(s) = s(s + gamma + delta + 1): q -> 1 in floats.

Each limit family is an :class:`OrthogonalFamily`, so its two-mass Krall
version is just ``KrallFamily(base, masses)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .exactnum import HyperSpec, Number, basic_hyper_terminating, qpochhammer as poch, qpochhammer_multi as pochs
from .family import OrthogonalFamily
from .kernels import kernel_sum
from .krall import KrallFamily, MassConfig
from .lattice import Lattice, QBase
from .oracle import DiscreteMeasure, gram_schmidt_monic
from .qracah import QRacahFamily, RacahParams, Truncation
from .report import VerificationReport

__all__ = [
    "DualQHahnParams",
    "DualQHahnFamily",
    "dual_qhahn_eval",
    "dual_qhahn_weight",
    "dual_qhahn_d2",
    "dual_qhahn_krall",
    "QHahnParams",
    "QHahnFamily",
    "qhahn_eval",
    "qhahn_d2",
    "qhahn_weight",
    "RacahClassicalParams",
    "RacahClassicalFamily",
    "racah_classical_eval",
    "racah_from_dual",
    "racah_toward_qhahn",
    "racah_toward_classical",
    "limit_beta_to_zero_check",
    "limit_qdelta_to_zero_check",
    "limit_q_to_one_check",
    "DEFAULT_EPSILONS",
    "DEFAULT_QS",
]

DEFAULT_EPSILONS = tuple(Fraction(1, 10**k) for k in (2, 4, 6, 8))
DEFAULT_QS = tuple(1 - 2.0**-k for k in range(3, 11))


def _rel(a, b) -> float:
    a, b = float(a), float(b)
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


# ------------------------------------------------------------- dual q-Hahn


@dataclass(frozen=True)
class DualQHahnParams:
    base: QBase
    gamma: Number
    delta: Number
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if self.gamma == 0 or self.delta == 0:
            raise ValueError("gamma and delta must be nonzero")
        q = self.q
        for s in range(self.N + 1):
            if pochs((q, self.delta * self.gamma * q ** (self.N + 2), self.delta * q), q, s) == 0:
                raise ValueError(f"weight denominator vanishes at s={s}")
        self.lat.check_injective(self.N)

    @property
    def q(self) -> Number:
        return self.base.q

    @cached_property
    def lat(self) -> Lattice:
        return Lattice(self.base, self.gamma * self.delta * self.q)


def dual_qhahn_eval(p: DualQHahnParams, n: int, s: int) -> Number:
    """(q^-N, gq; q)_n 3phi2(q^-n, q^-s, dg q^(s+1); q^-N, gq | q; q)."""
    if not 0 <= n <= p.N:
        raise ValueError(f"degree {n} outside 0..{p.N}")
    q, g, d, N = p.q, p.gamma, p.delta, p.N
    spec = HyperSpec(
        upper=(q ** (-n), q ** (-s), d * g * q ** (s + 1)),
        lower=(q ** (-N), g * q),
        base=q,
        argument=q,
        terms=n + 1,
    )
    return pochs((q ** (-N), g * q), q, n) * basic_hyper_terminating(spec)


def dual_qhahn_weight(p: DualQHahnParams, s: int) -> Number:
    """rho(s) as displayed, including its normalising prefactor."""
    q, g, d, N, v = p.q, p.gamma, p.delta, p.N, p.base.v
    pref = q ** (N * s - s * (s - 1) // 2) * (g * q) ** N / ((-g) ** s * (1 - g * d * q) * (1 / v - v))
    pref *= poch(d * q, q, N) / poch(g * d * q**2, q, N)
    return pref * pochs((g * q, g * d * q, q ** (-N)), q, s) / pochs((q, d * g * q ** (N + 2), d * q), q, s)


def dual_qhahn_d2(p: DualQHahnParams, n: int) -> Number:
    """(gdq)^n (q, d^-1 q^-N, gq, q^-N; q)_n as displayed."""
    q, g, d, N = p.q, p.gamma, p.delta, p.N
    return (g * d * q) ** n * pochs((q, q ** (-N) / d, g * q, q ** (-N)), q, n)


class DualQHahnFamily(OrthogonalFamily):
    def __init__(self, params: DualQHahnParams):
        self.params = params
        self.N = params.N
        self._cache: dict[tuple[int, int], Number] = {}

    def eval(self, n, s):
        if (n, s) not in self._cache:
            self._cache[(n, s)] = dual_qhahn_eval(self.params, n, s)
        return self._cache[(n, s)]

    def d2(self, n):
        return dual_qhahn_d2(self.params, n)

    def xval(self, s):
        return self.params.lat.at(s)

    def mass(self, s):
        return dual_qhahn_weight(self.params, s) * self.params.lat.delta_x_half(s)

    def _AC(self, n):
        q, g, d, N = self.params.q, self.params.gamma, self.params.delta, self.N
        A = (1 - q ** (n - N)) * (1 - g * q ** (n + 1))
        C = g * q * (1 - q**n) * (d - q ** (n - N - 1))
        return A, C

    def beta(self, n):
        A, C = self._AC(n)
        p = self.params
        return 1 + p.gamma * p.delta * p.q - A - C

    def gamma(self, n):
        if n == 0:
            return 0 * self.params.q
        return self._AC(n - 1)[0] * self._AC(n)[1]


def dual_qhahn_krall(p: DualQHahnParams, m: MassConfig) -> KrallFamily:
    return KrallFamily(DualQHahnFamily(p), m)


def racah_from_dual(p: DualQHahnParams) -> RacahParams:
    """The q-Racah parameters with alpha q = q^-N and beta = 0."""
    return RacahParams(p.base, p.q ** (-p.N - 1), Fraction(0) * p.q, p.gamma, p.delta, p.N, Truncation.ALPHA)


# ------------------------------------------------------------------ q-Hahn


@dataclass(frozen=True)
class QHahnParams:
    base: QBase
    mu: Number
    nu: Number
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        q = self.q
        for k in range(0, 2 * self.N + 3):
            if self.mu * self.nu * q**k == 1:
                raise ValueError(f"mu*nu*q^{k} = 1 makes a denominator vanish")
        if self.mu == 0:
            raise ValueError("mu must be nonzero")

    @property
    def q(self) -> Number:
        return self.base.q

    @cached_property
    def lat(self) -> Lattice:
        return Lattice(self.base, 0 * self.q)


def qhahn_eval(p: QHahnParams, n: int, s: int) -> Number:
    """(nu q, q^-N; q)_n / (mu nu q^(n+1); q)_n 3phi2(q^-n, mu nu q^(n+1), q^-s; nu q, q^-N | q; q)."""
    if not 0 <= n <= p.N:
        raise ValueError(f"degree {n} outside 0..{p.N}")
    q, mn, N = p.q, p.mu * p.nu, p.N
    spec = HyperSpec(
        upper=(q ** (-n), mn * q ** (n + 1), q ** (-s)),
        lower=(p.nu * q, q ** (-N)),
        base=q,
        argument=q,
        terms=n + 1,
    )
    return pochs((p.nu * q, q ** (-N)), q, n) / poch(mn * q ** (n + 1), q, n) * basic_hyper_terminating(spec)


def qhahn_d2(p: QHahnParams, n: int) -> Number:
    """(-nu q)^n q^(C(n,2) - Nn) (q, mu q, nu q, q^-N, mu nu q^(N+2); q)_n / ((mu nu q^2; q)_2n (mu nu q^(n+1); q)_n)."""
    q, mu, nu, N = p.q, p.mu, p.nu, p.N
    mn = mu * nu
    num = pochs((q, mu * q, nu * q, q ** (-N), mn * q ** (N + 2)), q, n)
    return (-nu * q) ** n * q ** (n * (n - 1) // 2 - N * n) * num / (poch(mn * q**2, q, 2 * n) * poch(mn * q ** (n + 1), q, n))


def _qhahn_weight_raw(p: QHahnParams, s: int) -> Number:
    """Standard q-Hahn weight (nu q, q^-N; q)_s / (q, q^-N / mu; q)_s (mu nu q)^-s."""
    q = p.q
    return pochs((p.nu * q, q ** (-p.N)), q, s) / pochs((q, q ** (-p.N) / p.mu), q, s) * (p.mu * p.nu * q) ** (-s)


def _qhahn_total(p: QHahnParams) -> Number:
    return sum(_qhahn_weight_raw(p, s) for s in range(p.N + 1))


def qhahn_weight(p: QHahnParams, s: int) -> Number:
    """rho(s) such that rho(s) dx(s - 1/2) is the normalised standard weight."""
    return _qhahn_weight_raw(p, s) / _qhahn_total(p) / p.lat.delta_x_half(s)


class QHahnFamily(OrthogonalFamily):
    def __init__(self, params: QHahnParams):
        self.params = params
        self.N = params.N
        self._cache: dict[tuple[int, int], Number] = {}
        self._total = _qhahn_total(params)

    def eval(self, n, s):
        if (n, s) not in self._cache:
            self._cache[(n, s)] = qhahn_eval(self.params, n, s)
        return self._cache[(n, s)]

    def d2(self, n):
        return qhahn_d2(self.params, n)

    def xval(self, s):
        return self.params.q ** (-s)

    def mass(self, s):
        return _qhahn_weight_raw(self.params, s) / self._total

    def _AC(self, n):
        q, mu, nu, N = self.params.q, self.params.mu, self.params.nu, self.N
        mn = mu * nu
        A = (1 - q ** (n - N)) * (1 - nu * q ** (n + 1)) * (1 - mn * q ** (n + 1))
        A /= (1 - mn * q ** (2 * n + 1)) * (1 - mn * q ** (2 * n + 2))
        C = -nu * q ** (n - N) * (1 - q**n) * (1 - mn * q ** (n + N + 1)) * (1 - mu * q**n)
        C /= (1 - mn * q ** (2 * n)) * (1 - mn * q ** (2 * n + 1))
        return A, C

    def beta(self, n):
        A, C = self._AC(n)
        return 1 - A - C

    def gamma(self, n):
        if n == 0:
            return 0 * self.params.q
        return self._AC(n - 1)[0] * self._AC(n)[1]


def racah_toward_qhahn(p: QHahnParams, eps: Number) -> RacahParams:
    """alpha = nu, beta = mu, gamma q = q^-N, delta = eps."""
    return RacahParams.build(p.base.v, alpha=p.nu, beta=p.mu, delta=eps, N=p.N, truncation="gamma")


# -------------------------------------------------------- classical Racah


def _rising(a: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class RacahClassicalParams:
    """Floating parameters; gamma + 1 = -N is the truncation used here."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if not math.isclose(self.gamma + 1, -self.N):
            raise ValueError("classical family expects gamma + 1 = -N")

    @classmethod
    def build(cls, alpha: float, beta: float, delta: float, N: int) -> "RacahClassicalParams":
        return cls(float(alpha), float(beta), -N - 1.0, float(delta), N)


def racah_classical_eval(p: RacahClassicalParams, n: int, s: int) -> float:
    """Monic Racah in lambda(s): (a+1)_n (b+d+1)_n (g+1)_n / (a+b+n+1)_n 4F3(...; 1)."""
    a, b, g, d = p.alpha, p.beta, p.gamma, p.delta
    pref = _rising(a + 1, n) * _rising(b + d + 1, n) * _rising(g + 1, n) / _rising(a + b + n + 1, n)
    total, term = 0.0, 1.0
    for k in range(n + 1):
        total += term
        if k == n:
            break
        term *= (-n + k) * (a + b + n + 1 + k) * (-s + k) * (s + g + d + 1 + k)
        term /= (a + 1 + k) * (b + d + 1 + k) * (g + 1 + k) * (k + 1)
    return pref * total


class RacahClassicalFamily(OrthogonalFamily):
    def __init__(self, params: RacahClassicalParams):
        self.params = params
        self.N = params.N
        raw = [self._raw_weight(s) for s in range(self.N + 1)]
        tot = sum(raw)
        self._mass = [w / tot for w in raw]

    def _raw_weight(self, s: int) -> float:
        a, b, g, d = self.params.alpha, self.params.beta, self.params.gamma, self.params.delta
        num = _rising(a + 1, s) * _rising(b + d + 1, s) * _rising(g + 1, s) * _rising(g + d + 1, s)
        num *= _rising((g + d + 3) / 2, s)
        den = _rising(-a + g + d + 1, s) * _rising(-b + g + 1, s) * _rising((g + d + 1) / 2, s)
        den *= _rising(d + 1, s) * math.factorial(s)
        return num / den

    def eval(self, n, s):
        return racah_classical_eval(self.params, n, s)

    def xval(self, s):
        return s * (s + self.params.gamma + self.params.delta + 1.0)

    def mass(self, s):
        return self._mass[s]

    def _AC(self, n):
        a, b, g, d = self.params.alpha, self.params.beta, self.params.gamma, self.params.delta
        A = (n + a + 1) * (n + a + b + 1) * (n + b + d + 1) * (n + g + 1)
        A /= (2 * n + a + b + 1) * (2 * n + a + b + 2)
        C = n * (n + a + b - g) * (n + a - d) * (n + b)
        C /= (2 * n + a + b) * (2 * n + a + b + 1)
        return A, C

    def beta(self, n):
        A, C = self._AC(n)
        return -(A + C)

    def gamma(self, n):
        if n == 0:
            return 0.0
        return self._AC(n - 1)[0] * self._AC(n)[1]

    def d2(self, n):
        """Probability-normalised squared norm, the product of gamma_1..gamma_n."""
        out = 1.0
        for k in range(1, n + 1):
            out *= self.gamma(k)
        return out


def racah_toward_classical(p: RacahClassicalParams, q: float) -> RacahParams:
    """q-Racah with parameters q^alpha, q^beta, q^gamma (= q^(-N-1)), q^delta in floats."""
    return RacahParams.build(
        math.sqrt(q), alpha=q**p.alpha, beta=q**p.beta, delta=q**p.delta, N=p.N, truncation="gamma"
    )


# ------------------------------------------------------------- harness


def _grid(N: int, nmax: int):
    return [(n, s) for n in range(nmax + 1) for s in range(N + 1)]


def limit_beta_to_zero_check(p: DualQHahnParams, m: MassConfig, nmax: Optional[int] = None) -> VerificationReport:
    nmax = p.N if nmax is None else nmax
    rep = VerificationReport("limit-beta0", {"N": p.N, "nmax": nmax})
    dual = DualQHahnFamily(p)
    rac = QRacahFamily(racah_from_dual(p))
    grid = _grid(p.N, nmax)
    rep.add("eval", len(grid), all(rac.eval(n, s) == dual.eval(n, s) for n, s in grid))
    ns = range(nmax + 1)
    rep.add("norm", len(ns), all(rac.d2(n) == dual.d2(n) for n in ns))
    rep.add(
        "boundary",
        2 * len(ns),
        all(rac.boundary_0(n) == dual.eval(n, 0) and rac.boundary_N(n) == dual.eval(n, p.N) for n in ns),
    )
    rep.add("ttrr", len(ns), all(rac.beta(n) == dual.beta(n) and rac.gamma(n) == dual.gamma(n) for n in ns))
    kr, kd = KrallFamily(rac, m), KrallFamily(dual, m)
    rep.add("krall-eval", len(grid), all(kr.eval(n, s) == kd.eval(n, s) for n, s in grid))
    rep.add("krall-norm", len(ns), all(kr.d2(n) == kd.d2(n) for n in ns))
    rep.add("n0", p.N + 1, all(kr.eval(0, s) == 1 == kd.eval(0, s) for s in range(p.N + 1)))
    return rep


def limit_qdelta_to_zero_check(
    p: QHahnParams,
    m: MassConfig,
    nmax: int = 4,
    epsilons: Sequence[Number] = DEFAULT_EPSILONS,
    threshold: Optional[float] = None,
) -> VerificationReport:
    """C_n = 1: the q-Racah values themselves are compared with the q-Hahn ones.

    Every channel must decay strictly; ``threshold`` additionally bounds the
    last relative deviation.
    """
    nmax = min(nmax, p.N)
    rep = VerificationReport("limit-qdelta0", {"N": p.N, "nmax": nmax, "epsilons": [str(e) for e in epsilons]})
    hahn = QHahnFamily(p)
    hk = KrallFamily(hahn, m)
    grid = _grid(p.N, nmax)
    kinds = ("value", "boundary", "norm", "kernel", "krall")
    devs = {k: [] for k in kinds}
    n0_exact = True
    for eps in epsilons:
        rac = QRacahFamily(racah_toward_qhahn(p, eps))
        rk = KrallFamily(rac, m)
        devs["value"].append(max(_rel(rac.eval(n, s), hahn.eval(n, s)) for n, s in grid))
        devs["boundary"].append(
            max(
                max(_rel(rac.boundary_0(n), hahn.eval(n, 0)), _rel(rac.boundary_N(n), hahn.eval(n, p.N)))
                for n in range(nmax + 1)
            )
        )
        devs["norm"].append(max(_rel(rac.d2(n), hahn.d2(n)) for n in range(nmax + 1)))
        devs["kernel"].append(
            max(
                _rel(kernel_sum(rac, k, s, t), kernel_sum(hahn, k, s, t))
                for k in range(nmax)
                for s in range(p.N + 1)
                for t in range(s, p.N + 1)
            )
        )
        devs["krall"].append(max(_rel(rk.eval(n, s), hk.eval(n, s)) for n, s in grid))
        n0_exact &= all(rk.eval(0, s) == 1 and rac.eval(0, s) == 1 for s in range(p.N + 1))
    rep.add("n0-exact", len(epsilons), n0_exact)
    for kind in kinds:
        seq = devs[kind]
        dec = all(b < a for a, b in zip(seq, seq[1:]))
        ok = dec and (threshold is None or seq[-1] < threshold)
        note = "deviations " + ", ".join(f"{d:.3e}" for d in seq)
        note += "; dev/eps " + ", ".join(f"{d / float(e):.3e}" for d, e in zip(seq, epsilons))
        rep.add(f"{kind}-decay", len(seq), ok, seq[-1], note)
    return rep


def limit_q_to_one_check(
    p: RacahClassicalParams,
    m: MassConfig,
    nmax: int = 3,
    qs: Sequence[float] = DEFAULT_QS,
    oracle_tol: float = 1e-9,
) -> VerificationReport:
    """Compare R_n^q(s) / (1 - q)^(2n) with the monic classical Racah in lambda(s)."""
    nmax = min(nmax, p.N)
    rep = VerificationReport("limit-q1", {"N": p.N, "nmax": nmax, "qs": list(qs)})
    cls_fam = RacahClassicalFamily(p)
    ck = KrallFamily(cls_fam, MassConfig(float(m.A), float(m.B)))
    grid = _grid(p.N, nmax)
    dev_base, dev_krall = [], []
    n0 = True
    for q in qs:
        rac = QRacahFamily(racah_toward_classical(p, q))
        rk = KrallFamily(rac, MassConfig(float(m.A), float(m.B)))
        h2 = (1 - q) ** 2
        dev_base.append(max(_rel(rac.eval(n, s) / h2**n, cls_fam.eval(n, s)) for n, s in grid))
        dev_krall.append(max(_rel(rk.eval(n, s) / h2**n, ck.eval(n, s)) for n, s in grid))
        n0 &= all(rac.eval(0, s) == 1 == rk.eval(0, s) for s in range(p.N + 1))
    rep.add("n0-exact", len(qs), n0)
    for name, seq in (("base-decay", dev_base), ("krall-decay", dev_krall)):
        dec = all(b < a for a, b in zip(seq, seq[1:]))
        rep.add(name, len(seq), dec, seq[-1], "deviations " + ", ".join(f"{d:.3e}" for d in seq))

    orc = gram_schmidt_monic(DiscreteMeasure.from_family(cls_fam, float(m.A), float(m.B)), p.N)
    worst = 0.0
    for n in range(p.N + 1):
        worst = max(worst, _rel(ck.d2(n), orc.norms[n]))
        for s in range(p.N + 1):
            worst = max(worst, _rel(ck.eval(n, s), orc.eval(n, cls_fam.xval(s))))
    rep.add("classical-krall-oracle", (p.N + 1) * (p.N + 2), worst < oracle_tol, worst)
    return rep
