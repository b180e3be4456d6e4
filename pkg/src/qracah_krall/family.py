"""Minimal contract the mass-point layer needs from a base family."""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import cached_property

from .exactnum import Number

__all__ = ["OrthogonalFamily"]


class OrthogonalFamily(ABC):
    """A monic family orthogonal on the nodes s = 0..N.

    Subclasses supply ``eval``, ``d2``, ``xval``, ``mass`` (the discrete
    weight already multiplied by the lattice step), ``beta`` and ``gamma``.  ``N`` is an attribute.
    Polynomials must be evaluable at integer s outside 0..N as well, because
    the difference quotients at the endpoints reach one node past them.
    """

    N: int

    @abstractmethod
    def eval(self, n: int, s: int) -> Number: ...

    @abstractmethod
    def d2(self, n: int) -> Number: ...

    @abstractmethod
    def xval(self, s: int) -> Number: ...

    @abstractmethod
    def mass(self, s: int) -> Number:
        """Weight carried by node s (rho(s) times the half-step)."""

    @abstractmethod
    def beta(self, n: int) -> Number:
        """Recurrence coefficient: x p_n = p_{n+1} + beta_n p_n + gamma_n p_{n-1}."""

    @abstractmethod
    def gamma(self, n: int) -> Number: ...

    def boundary_0(self, n: int) -> Number:
        return self.eval(n, 0)

    def boundary_N(self, n: int) -> Number:
        return self.eval(n, self.N)

    @cached_property
    def nodes(self) -> list[Number]:
        return [self.xval(s) for s in range(self.N + 1)]

    def masses(self) -> list[Number]:
        return [self.mass(s) for s in range(self.N + 1)]
