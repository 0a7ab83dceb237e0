"""Assembly formulas: semistable-locus series, blowup correction terms,
intersection-cohomology shifts, and the point-blowup bookkeeping.

Everything is a statement about truncated series with exact rational
coefficients; geometric inputs (connectedness, transitivity, quotient
identifications) arrive as declared stratum contributions carrying their own
provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import (
    BettiTable,
    TruncatedSeries,
    gf_expand,
    projective_space_series,
)


@dataclass(frozen=True)
class StratumContribution:
    """One unstable-stratum summand: t^(2*codim) times an equivariant series.

    ``weyl_share`` is the ambient-Weyl fiber count dividing the contribution;
    ``series`` is the equivariant series of the stratum factor (the constant
    1 for a connected stabilizer quotient).
    """

    codim: int
    series: TruncatedSeries
    weyl_share: int = 1
    provenance: str = ""

    def __post_init__(self):
        if self.codim < 1:
            raise ValueError("stratum codimension must be at least 1")
        if self.weyl_share < 1:
            raise ValueError("weyl_share must be at least 1")


def semistable_series(
    ambient_dim: int, bsl_exponents, strata, order: int
) -> TruncatedSeries:
    """Equivariant series of the semistable locus.

    Ambient projective series times the classifying-space factors
    (1 - t^(2i))^(-1) for i in ``bsl_exponents``, minus the stratum
    contributions t^(2*codim) * series.  Strata of codimension beyond the
    truncation may simply be omitted by the caller.
    """
    total = projective_space_series(ambient_dim, order) * gf_expand(
        [(2 * i, 1) for i in bsl_exponents], order
    )
    for s in strata:
        total = total - s.series.truncate(order).shift(2 * s.codim)
    return total


def main_term(p_n_z: TruncatedSeries, normal_rank: int, order: int) -> TruncatedSeries:
    """Blowup main term: the center's equivariant series times t^2 + ... +
    t^(2*(normal_rank - 1))."""
    if normal_rank < 2:
        raise ValueError("normal rank must be at least 2")
    fiber = TruncatedSeries.zero(order)
    for j in range(1, normal_rank):
        if 2 * j > order:
            break
        fiber = fiber + TruncatedSeries.monomial(2 * j, order)
    return p_n_z.truncate(order) * fiber


def extra_term(items, order: int) -> TruncatedSeries:
    """Blowup extra term: sum of (1/w) t^(2*codim) * series over strata.

    Full ambient-Weyl orbits must be passed; the total is required to have
    integral coefficients, which certifies that no orbit was left incomplete.
    """
    total = TruncatedSeries.zero(order)
    for it in items:
        total = total + it.series.truncate(order).shift(2 * it.codim).scale(
            Fraction(1, it.weyl_share)
        )
    for c in total.coeffs:
        if c.denominator != 1:
            raise ValueError(
                f"extra term has non-integral coefficient {c}; incomplete Weyl orbit?"
            )
    return total


def b_shift(ip: BettiTable, order: int) -> TruncatedSeries:
    """Shifted intersection-cohomology polynomial of an exceptional quotient.

    With c the complex dimension of the table, the coefficient at degree q is
    ip[q-2] for 2 <= q <= c and ip[q] for q > c; degrees 0 and 1 vanish.
    """
    from .series import duality_check

    rep = duality_check(ip)
    if not rep.ok:
        raise ValueError(f"shift input must be duality-symmetric: {rep.message}")
    c = ip.complex_dim
    coeffs = [Fraction(0)] * (order + 1)
    for q in range(2, order + 1):
        if q <= c:
            coeffs[q] = Fraction(ip.betti[q - 2])
        elif q <= 2 * c:
            coeffs[q] = Fraction(ip.betti[q])
    return TruncatedSeries.from_coeffs(coeffs, order)


def blowup_correction(exceptional: BettiTable, n: int, order: int | None = None) -> TruncatedSeries:
    """Cohomology correction of a point blowup with the given exceptional divisor.

    For a target of complex dimension n the correction polynomial is
    e_(2n-2) t^2 + e_(2n-3) t^3 + ... + e_n t^n + ... + e_(2n-2) t^(2n-2),
    where e_j are the Betti numbers of the exceptional divisor.
    """
    if exceptional.complex_dim != n - 1:
        raise ValueError("exceptional divisor must have dimension n - 1")
    if order is None:
        order = 2 * n - 2
    e = exceptional.betti
    coeffs = [Fraction(0)] * (order + 1)
    for q in range(2, min(order, 2 * n - 2) + 1):
        coeffs[q] = Fraction(e[2 * n - q] if q <= n else e[q])
    return TruncatedSeries.from_coeffs(coeffs, order)


def run_scenario(source, cache_dir=None):
    """Execute a scenario file or built-in scenario; see stratify.runner."""
    from .runner import run_scenario as _run

    return _run(source, cache_dir=cache_dir)
