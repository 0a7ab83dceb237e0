"""Weight systems of the special linear group acting on degree-d forms.

Weights live in the traceless diagonal subalgebra, modeled as sum-zero
vectors in (n+1) coordinates with the standard dot product.  The symmetric
group acts by coordinate permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Tuple

Vector = Tuple[Fraction, ...]


def vec(entries: Sequence) -> Vector:
    return tuple(Fraction(e) for e in entries)


def dot(x: Vector, y: Vector) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def norm2(x: Vector) -> Fraction:
    return dot(x, x)


def monomials_of_degree(n: int, d: int) -> list:
    """Exponent vectors of length n+1 summing to d, in lexicographic order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for i in range(remaining, -1, -1):
            rec(prefix + [i], remaining - i, slots - 1)

    rec([], d, n + 1)
    # rec emits in reverse-lex on the first coordinate; normalize to lex order
    out.sort()
    return out


@dataclass(frozen=True)
class WeightSystem:
    """Monomial weights of the degree-d action on projective n-space."""

    n: int
    d: int
    monomials: tuple
    weights: tuple

    @property
    def rank(self) -> int:
        return self.n


def hypersurface_weights(n: int, d: int) -> WeightSystem:
    """Weight system for degree-d forms in n+1 variables.

    The monomial x^I maps to I - (d/(n+1)) * (1,...,1), a sum-zero vector.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    mons = monomials_of_degree(n, d)
    if len(mons) != comb(n + d, d):
        raise AssertionError("monomial count mismatch")
    shift = Fraction(d, n + 1)
    weights = tuple(tuple(Fraction(i) - shift for i in I) for I in mons)
    return WeightSystem(n, d, tuple(mons), weights)
