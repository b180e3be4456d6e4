"""Reproducing kernels K_m(s, t) = sum_k R_k(s) R_k(t) / d_k^2.

Three routes: the defining sum (works for any family), the
Christoffel-Darboux quotient, and compact endpoint forms that write
K_{n-1}(s, 0) and K_{n-1}(s, N) through R_{n-1}(s) and one lattice
difference quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .exactnum import Number, qpochhammer_multi as pochs
from .family import OrthogonalFamily
from .lattice import bwd_quot, fwd_quot
from .qracah import QRacahFamily, RacahParams, Truncation, d2

__all__ = [
    "as_family",
    "kernel_sum",
    "kernel_cd",
    "KernelCoeffs",
    "kernel_coeffs",
    "printed_kernel_coeffs",
    "kernel_at0_compact",
    "kernel_atN_compact",
]


@lru_cache(maxsize=64)
def _family_for(p: RacahParams) -> QRacahFamily:
    return QRacahFamily(p)


def as_family(obj) -> OrthogonalFamily:
    """Accept a family or bare q-Racah parameters (shared, memoised family)."""
    if isinstance(obj, OrthogonalFamily):
        return obj
    if isinstance(obj, RacahParams):
        return _family_for(obj)
    raise TypeError(f"expected an OrthogonalFamily or RacahParams, got {type(obj).__name__}")


def kernel_sum(fam, m: int, s: int, t: int) -> Number:
    fam = as_family(fam)
    total = 0 * fam.xval(0)
    for k in range(m + 1):
        total += fam.eval(k, s) * fam.eval(k, t) / fam.d2(k)
    return total


def kernel_cd(fam, n: int, s1: int, s2: int) -> Number:
    """Christoffel-Darboux form of K_n(s1, s2); monic, so the a_n ratio is 1."""
    fam = as_family(fam)
    x1, x2 = fam.xval(s1), fam.xval(s2)
    if x1 == x2:
        raise ZeroDivisionError("coincident abscissae; use kernel_sum on the diagonal")
    num = fam.eval(n + 1, s1) * fam.eval(n, s2) - fam.eval(n + 1, s2) * fam.eval(n, s1)
    return num / (fam.d2(n) * (x1 - x2))


@dataclass(frozen=True)
class KernelCoeffs:
    """kappa0, kappa0_bar, kappaN, kappaN_bar as functions of (s, n)."""

    kappa0: Callable[[int, int], Number]
    kappa0_bar: Callable[[int, int], Number]
    kappaN: Callable[[int, int], Number]
    kappaN_bar: Callable[[int, int], Number]


def _untruncated_factors(p: RacahParams, s: int) -> Number:
    """Phi's four linear factors in q^s minus the one killed by the truncation."""
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    factors = {
        Truncation.ALPHA: 1 - a * q ** (s + 1),
        Truncation.BETADELTA: 1 - b * d * q ** (s + 1),
        Truncation.GAMMA: 1 - c * q ** (s + 1),
    }
    out = 1 - d * c * q ** (s + 1)
    for trunc, value in factors.items():
        if trunc is not p.truncation:
            out *= value
    return out


def _ratio_0(p: RacahParams, n: int) -> Number:
    """R_{n-1}(0) / d_{n-1}^2 in closed form."""
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b
    return (
        (d * c * q) ** (-n + 1)
        * (1 - ab * q**n)
        * pochs((ab * q, ab * q ** (n + 1)), q, n - 1)
        / ((1 - ab * q) * pochs((q, ab / c * q, a / d * q, b * q), q, n - 1))
    )


def kernel_coeffs(p: RacahParams) -> KernelCoeffs:
    """Compact-form coefficients, derived from Christoffel-Darboux plus the
    sigma/Phi structure relations (valid for every truncation)."""
    fam = as_family(p)
    a, b, c, d, q, N = p.alpha, p.beta, p.gamma, p.delta, p.q, p.N
    ab = a * b

    def kappa0(s: int, n: int) -> Number:
        return (
            _ratio_0(p, n)
            * (1 - ab * q**n)
            * (1 - d * c * q ** (s + n))
            / ((1 - ab * q ** (2 * n - 1)) * (1 - d * c * q ** (s + 1)))
        )

    def kappa0_bar(s: int, n: int) -> Number:
        qs = q**s
        return (
            -_ratio_0(p, n)
            * (d * c) ** 2
            * q ** (n - s)
            * (1 - q)
            * (qs - 1 / d)
            * (qs - b / c)
            * (qs - a / (d * c))
            / ((1 - d * c * q ** (s + 1)) * (1 - ab * q ** (2 * n - 1)))
        )

    def ratio_N(n: int) -> Number:
        return fam.boundary_N(n - 1) / d2(p, n - 1)

    def kappaN(s: int, n: int) -> Number:
        return (
            ratio_N(n)
            * q ** (n - 1)
            * (1 - ab * q**n)
            * (1 - d * c * q ** (s + N + 2 - n))
            / ((1 - ab * q ** (2 * n - 1)) * (1 - d * c * q ** (s + N + 1)))
        )

    def kappaN_bar(s: int, n: int) -> Number:
        return (
            ratio_N(n)
            * (1 - q)
            * q ** (n - 2 - s)
            * _untruncated_factors(p, s)
            / ((1 - ab * q ** (2 * n - 1)) * (1 - d * c * q ** (s + N + 1)))
        )

    return KernelCoeffs(kappa0, kappa0_bar, kappaN, kappaN_bar)


def printed_kernel_coeffs(p: RacahParams) -> KernelCoeffs:
    """The four coefficient displays transcribed literally.

    Kept for the verification report only; they do not reproduce the
    kernels beyond n = 1 (see ``kernel_coeffs`` for the working forms).
    """
    a, b, c, d, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    ab = a * b

    def den0(n):
        return pochs((q, ab / c * q, a / d * q, b * q), q, n - 1)

    def denN(n):
        return pochs((q ** (-n) / (b * d), a * q, b * d * q, q, ab / c * q), q, n - 1)

    def abpoch(n):
        return pochs((ab * q, ab * q ** (n + 1)), q, n - 1)

    def kappa0(s, n):
        return (
            (d * c * q) ** (-n + 1)
            * (1 - ab * q**n)
            * (1 - d * c * q ** (s + n))
            * abpoch(n)
            / ((1 - ab * q) * (1 - d * c * q ** (s + 1)) * den0(n))
        )

    def kappa0_bar(s, n):
        qs = q**s
        return (
            q ** (2 - s)
            * (d * c) ** (-n + 3)
            * abpoch(n)
            * (qs - 1)
            * (qs - 1 / d)
            * (qs - b / c)
            * (qs - a / (d * c))
            / ((1 - ab * q) * (1 - d * c * q ** (2 * s + 2)) * den0(n))
        )

    def kappaN(s, n):
        return (
            c ** (-n + 1)
            * (1 - ab * q**n)
            * (1 - d * q ** (s - n + 1))
            * abpoch(n)
            / ((1 - ab) * (1 - d * q**s) * denN(n))
        )

    def kappaN_bar(s, n):
        return (
            c ** (-n + 1)
            * q ** (-s)
            * (1 - a * q ** (s + 1))
            * (1 - b * d * q ** (s + 1))
            * (1 - c * q ** (s + 1))
            * (1 - d * c * q ** (s + 1))
            / ((1 - ab * q) * (1 - d * c * q ** (2 * s + 2)))
            * abpoch(n)
            / denN(n)
        )

    return KernelCoeffs(kappa0, kappa0_bar, kappaN, kappaN_bar)


def kernel_at0_compact(p: RacahParams, n: int, s: int, coeffs: KernelCoeffs | None = None) -> Number:
    """K_{n-1}(s, 0) = kappa0 R_{n-1}(s) + kappa0_bar nabla R_{n-1}(s) / nabla x(s)."""
    if not 1 <= n <= p.N:
        raise ValueError(f"need 1 <= n <= N, got n={n}")
    fam = as_family(p)
    k = coeffs or kernel_coeffs(p)
    r = lambda t: fam.eval(n - 1, t)  # noqa: E731
    return k.kappa0(s, n) * r(s) + k.kappa0_bar(s, n) * bwd_quot(r, p.lat, s)


def kernel_atN_compact(p: RacahParams, n: int, s: int, coeffs: KernelCoeffs | None = None) -> Number:
    """K_{n-1}(s, N) = kappaN R_{n-1}(s) + kappaN_bar Delta R_{n-1}(s) / Delta x(s)."""
    if not 1 <= n <= p.N:
        raise ValueError(f"need 1 <= n <= N, got n={n}")
    fam = as_family(p)
    k = coeffs or kernel_coeffs(p)
    r = lambda t: fam.eval(n - 1, t)  # noqa: E731
    return k.kappaN(s, n) * r(s) + k.kappaN_bar(s, n) * fwd_quot(r, p.lat, s)
