"""Exact rational scalars, q-Pochhammer symbols and terminating basic series.

Every routine here works on :class:`fractions.Fraction` when handed
fractions, and degrades gracefully to ``float`` when handed floats (the
limit harness relies on that).  Nothing in this module rounds on its own.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[Fraction, float]

__all__ = [
    "Number",
    "to_fraction",
    "format_rational",
    "parse_rational",
    "qpochhammer",
    "qpochhammer_multi",
    "qpochhammer_inf_approx",
    "HyperSpec",
    "basic_hyper_terminating",
    "leading_coefficient",
    "interpolation_coefficients",
    "interpolation_degree",
]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_fraction(value) -> Fraction:
    """Coerce ints, fractions and canonical strings to :class:`Fraction`.

    Floats are rejected: an exact quantity must never pass through binary
    floating point on its way in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(value: Fraction) -> str:
    """Canonical ``p/q`` string, ``p`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (q > 0) into a lowest-terms fraction."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def qpochhammer(a: Number, q: Number, k: int) -> Number:
    """(a; q)_k = prod_{i<k} (1 - a q^i)."""
    if k < 0:
        raise ValueError("qpochhammer needs k >= 0")
    result = Fraction(1) + 0 * a * q
    term = a
    for _ in range(k):
        result *= 1 - term
        term *= q
    return result


def qpochhammer_multi(params: Iterable[Number], q: Number, k: int) -> Number:
    """(a_1, ..., a_r; q)_k, the product of the individual symbols."""
    out = Fraction(1)
    for a in params:
        out = out * qpochhammer(a, q, k)
    return out


def qpochhammer_inf_approx(a: float, q: float, tol: float = 1e-16, max_terms: int = 100_000) -> float:
    """Floating (a; q)_inf, stopping once |a q^i| < tol.

    |q| >= 1 is rejected since the product does not converge.
    """
    a = float(a)
    q = float(q)
    if not abs(q) < 1:
        raise ValueError(f"(a; q)_inf diverges for |q| = {abs(q)} >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    result = 1.0
    term = a
    for _ in range(max_terms):
        if abs(term) < tol:
            break
        result *= 1.0 - term
        if result == 0.0:
            return 0.0
        term *= q
    else:
        raise ArithmeticError("infinite q-product did not reach tolerance")
    return result


@dataclass(frozen=True)
class HyperSpec:
    """Parameters of a terminating r_phi_{r-1} sum with `terms` terms."""

    upper: Sequence[Number]
    lower: Sequence[Number]
    base: Number
    argument: Number
    terms: int

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("a terminating series needs at least one term")
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower) + 1:
            raise ValueError("need len(upper) == len(lower) + 1")
        for b in self.lower:
            for j in range(self.terms - 1):
                if 1 - b * self.base**j == 0:
                    raise ZeroDivisionError(
                        f"lower parameter {b} equals q^-{j}; the sum hits a zero denominator"
                    )


def basic_hyper_terminating(spec: HyperSpec) -> Number:
    """Sum the first ``spec.terms`` terms of the basic hypergeometric series.

    Uses the balanced convention (no extra sign/q-power factor), with term
    ratios applied incrementally.
    """
    q, z = spec.base, spec.argument
    term = Fraction(1) + 0 * q * z
    total = term
    qk = 1
    for k in range(spec.terms - 1):
        num = 1 - qk * q  # (q; q) factor for the k! analogue
        ratio = z / num
        for a in spec.upper:
            ratio *= 1 - a * qk
        for b in spec.lower:
            ratio /= 1 - b * qk
        term *= ratio
        total += term
        qk *= q
    return total


def interpolation_coefficients(samples: Sequence[tuple[Number, Number]]) -> list[Number]:
    """Newton divided-difference table diagonal for the given samples."""
    xs = [x for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicated abscissae in interpolation samples")
    coef = [y for _, y in samples]
    n = len(samples)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    return coef


def leading_coefficient(evals: Sequence[tuple[Number, Number]], degree: int) -> Number:
    """Top coefficient of the degree-``degree`` interpolant of the samples.

    Only the first ``degree + 1`` samples are used.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if len(evals) < degree + 1:
        raise ValueError(f"need at least {degree + 1} samples, got {len(evals)}")
    return interpolation_coefficients(list(evals)[: degree + 1])[degree]


def interpolation_degree(evals: Sequence[tuple[Number, Number]]) -> int:
    """Exact degree of the interpolating polynomial (-1 for the zero polynomial).

    With exact inputs the Newton coefficients vanish exactly past the true
    degree, so this is a reliable degree test given enough samples.
    """
    coef = interpolation_coefficients(evals)
    for d in range(len(coef) - 1, -1, -1):
        if coef[d] != 0:
            return d
    return -1
