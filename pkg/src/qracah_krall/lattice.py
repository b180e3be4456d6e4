"""The q-quadratic lattice x(s) = c1 q^s + c2 q^-s + c3.

Points are addressed by ``two_s = 2 s`` so half-integer nodes stay integral;
q enters through its square root ``v`` which keeps q^(k/2) rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exactnum import Number

__all__ = ["QBase", "Lattice", "fwd_quot", "bwd_quot"]


@dataclass(frozen=True)
class QBase:
    """Deformation parameter q held through v = q^(1/2)."""

    v: Number

    def __post_init__(self):
        if not 0 < self.v < 1:
            raise ValueError(f"need 0 < q^(1/2) < 1, got {self.v}")

    @property
    def q(self) -> Number:
        return self.v * self.v

    def half_power(self, two_k: int) -> Number:
        """q^(two_k / 2)."""
        return self.v**two_k

    def power(self, k: int) -> Number:
        return self.q**k

    @classmethod
    def from_q(cls, q: float) -> "QBase":
        """Floating constructor for the q -> 1 sweeps."""
        return cls(float(q) ** 0.5)


@dataclass(frozen=True)
class Lattice:
    base: QBase
    c1: Number
    c2: Number = Fraction(1)
    c3: Number = Fraction(0)

    def x(self, two_s: int) -> Number:
        """Lattice value at s = two_s / 2."""
        return self.c1 * self.base.half_power(two_s) + self.c2 * self.base.half_power(-two_s) + self.c3

    def at(self, s: int) -> Number:
        return self.x(2 * s)

    def delta_x(self, s: int) -> Number:
        """x(s+1) - x(s) in closed form: q^-s (c2 - c1 q^(2s+1)) (q^-1 - 1)."""
        q = self.base.q
        return q ** (-s) * (self.c2 - self.c1 * q ** (2 * s + 1)) * (1 / q - 1)

    def nabla_x(self, s: int) -> Number:
        return self.delta_x(s - 1)

    def delta_x_half(self, s: int) -> Number:
        """x(s + 1/2) - x(s - 1/2)."""
        return self.x(2 * s + 1) - self.x(2 * s - 1)

    def check_injective(self, n_max: int) -> None:
        """Raise if two nodes among s = 0..n_max share an abscissa."""
        for s in range(n_max):
            if self.delta_x(s) == 0:
                raise ValueError(f"lattice increment vanishes at s={s}; nodes are not distinct")
        values = [self.at(s) for s in range(n_max + 1)]
        if len(set(values)) != len(values):
            raise ValueError("lattice takes a repeated value on 0..N")


def fwd_quot(f: Callable[[int], Number], lat: Lattice, s: int) -> Number:
    """(f(s+1) - f(s)) / dx(s)."""
    dx = lat.delta_x(s)
    if dx == 0:
        raise ZeroDivisionError(f"zero forward lattice increment at s={s}")
    return (f(s + 1) - f(s)) / dx


def bwd_quot(f: Callable[[int], Number], lat: Lattice, s: int) -> Number:
    """(f(s) - f(s-1)) / nabla x(s)."""
    dx = lat.nabla_x(s)
    if dx == 0:
        raise ZeroDivisionError(f"zero backward lattice increment at s={s}")
    return (f(s) - f(s - 1)) / dx
