"""Exact hypergeometric distribution, plus the random-committee bound built on it.

The distribution of the overlap between a voter's approval set and a
uniformly random fixed-size committee is hypergeometric; every multi-winner
guarantee in this package reduces to its cumulative function.  All values
are exact rationals computed with arbitrary-precision binomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb

from .core import Frac, ValidationError, as_frac

__all__ = ["HypParams", "hyp_pmf", "hyp_cdf", "multiwinner_bound"]


@dataclass(frozen=True)
class HypParams:
    """Population size, number of successes in it, and draw size."""

    population: int
    successes: int
    draws: int

    def __post_init__(self) -> None:
        p, k, d = self.population, self.successes, self.draws
        for name, v in (("population", p), ("successes", k), ("draws", d)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValidationError(f"{name} must be a nonnegative integer, got {v!r}")
        if k > p:
            raise ValidationError(f"successes {k} cannot exceed population {p}")
        if d > p:
            raise ValidationError(f"draws {d} cannot exceed population {p}")


@lru_cache(maxsize=None)
def _pmf(population: int, successes: int, draws: int, t: int) -> Frac:
    if t < 0 or t > draws or t > successes or draws - t > population - successes:
        return Fraction(0)
    return Fraction(
        comb(successes, t) * comb(population - successes, draws - t),
        comb(population, draws),
    )


@lru_cache(maxsize=None)
def _cdf(population: int, successes: int, draws: int, upper: int) -> Frac:
    total = Fraction(0)
    for t in range(0, upper + 1):
        total += _pmf(population, successes, draws, t)
    return total


def hyp_pmf(params: HypParams, t: int) -> Frac:
    """Probability of drawing exactly ``t`` successes.

    Any integer ``t`` is accepted; arguments outside the support return 0.
    Callers rely on that: the sequential committee rule probes the mass
    function at shifted arguments that go negative once a voter is already
    satisfied, and those probes must vanish rather than fail.
    """
    return _pmf(params.population, params.successes, params.draws, t)


def hyp_cdf(params: HypParams, t: int) -> Frac:
    """Probability of drawing at most ``t`` successes (0 for t < 0, 1 at full support)."""
    if t < 0:
        return Fraction(0)
    upper = min(t, params.successes, params.draws)
    return _cdf(params.population, params.successes, params.draws, upper)


def multiwinner_bound(m: int, s: object, k: int, t: int) -> Frac:
    """Best achievable worst-case share of s-flexible voters left t-unserved.

    Equals the probability that a uniformly random k-committee out of m
    candidates contains fewer than ``t`` members of a ceil(s*m)-candidate
    approval set.  No committee rule can beat it, and both committee rules
    in this package meet it.
    """
    sv = as_frac(s)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    if not 1 <= k < m:
        raise ValidationError(f"need 1 <= k < m, got k={k}, m={m}")
    if not 1 <= t <= k:
        raise ValidationError(f"need 1 <= t <= k, got t={t}, k={k}")
    return hyp_cdf(HypParams(m, ceil(sv * m), k), t - 1)
