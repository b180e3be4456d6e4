"""Brute-force monic orthogonal polynomials for a discrete measure.

Gram-Schmidt on the monomials 1, x, x^2, ... against

    <f, g> = sum_i w_i f(x_i) g(x_i) + sum_j A_j f(x_{k_j}) g(x_{k_j}).

In exact arithmetic conditioning does not matter, so nothing clever is
done.  Feed floats and you get the floating variant used for the classical
Racah measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import Number

__all__ = ["DiscreteMeasure", "OracleResult", "QuasiDefiniteError", "inner_product", "gram_schmidt_monic"]


class QuasiDefiniteError(ArithmeticError):
    """A norm vanished: no monic orthogonal polynomial of that degree."""


@dataclass(frozen=True)
class DiscreteMeasure:
    nodes: Sequence[Number]
    weights: Sequence[Number]
    masses: Sequence[tuple[int, Number]] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "masses", tuple(self.masses))
        if len(self.nodes) != len(self.weights):
            raise ValueError("one weight per node")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("nodes must be pairwise distinct")
        for idx, _ in self.masses:
            if not 0 <= idx < len(self.nodes):
                raise IndexError(f"mass attached to missing node {idx}")
        if self.total_mass() == 0:
            raise ValueError("measure has zero total mass")

    def node_weights(self) -> list[Number]:
        """Weights with the point masses folded in."""
        w = list(self.weights)
        for idx, a in self.masses:
            w[idx] = w[idx] + a
        return w

    def total_mass(self) -> Number:
        return sum(self.node_weights())

    @classmethod
    def from_family(cls, fam, A=0, B=0) -> "DiscreteMeasure":
        """Measure of a base family plus masses A at s=0 and B at s=N."""
        masses = [(0, A), (fam.N, B)]
        return cls(fam.nodes, fam.masses(), [(i, m) for i, m in masses if m != 0])


def inner_product(mu: DiscreteMeasure, f: Sequence[Number], g: Sequence[Number]) -> Number:
    """<f, g> for node-value vectors f and g."""
    if len(f) != len(mu.nodes) or len(g) != len(mu.nodes):
        raise ValueError("evaluations must cover every node")
    return sum(w * a * b for w, a, b in zip(mu.node_weights(), f, g))


def _horner(coeffs: Sequence[Number], x: Number) -> Number:
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class OracleResult:
    """Monic p_0..p_nmax as ascending coefficient lists, plus derived data."""

    coeffs: list[list[Number]]
    norms: list[Number]
    betas: list[Number]
    gammas: list[Number]

    def eval(self, n: int, x: Number) -> Number:
        return _horner(self.coeffs[n], x)


def gram_schmidt_monic(mu: DiscreteMeasure, nmax: int) -> OracleResult:
    if nmax > len(mu.nodes) - 1:
        raise ValueError(f"at most {len(mu.nodes) - 1} degrees on {len(mu.nodes)} nodes")
    xs = mu.nodes
    w = mu.node_weights()

    def ip(u, v):
        return sum(wi * a * b for wi, a, b in zip(w, u, v))

    coeffs: list[list[Number]] = []
    values: list[list[Number]] = []
    norms: list[Number] = []
    for n in range(nmax + 1):
        c = [0 * xs[0]] * n + [1 + 0 * xs[0]]
        vals = [x**n for x in xs]
        for j in range(n):
            proj = ip(vals, values[j]) / norms[j]
            vals = [a - proj * b for a, b in zip(vals, values[j])]
            for i, cj in enumerate(coeffs[j]):
                c[i] = c[i] - proj * cj
        h = ip(vals, vals)
        if h == 0:
            raise QuasiDefiniteError(f"norm of degree {n} vanishes")
        coeffs.append(c)
        values.append(vals)
        norms.append(h)

    betas = [ip([x * a for x, a in zip(xs, values[n])], values[n]) / norms[n] for n in range(nmax + 1)]
    gammas = [0 * xs[0]] + [norms[n] / norms[n - 1] for n in range(1, nmax + 1)]
    return OracleResult(coeffs, norms, betas, gammas)
