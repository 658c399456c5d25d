"""Adversarial instance generators, exhaustive enumeration, and brute-force oracles.

The generators realize the worst-case constructions behind each guarantee
at explicit finite sizes, so tests can demonstrate tightness instead of
taking limits.  Several return a distinguished "special" candidate that the
construction is engineered around.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import ceil, comb, floor, lcm
from typing import Iterator, Mapping

from .core import (
    Committee,
    Frac,
    Instance,
    SizeLimitError,
    ValidationError,
    WeightFn,
    as_frac,
    build_instance,
    eval_weight,
)
from .multi_winner import COMMITTEE_LIMIT, MultiParams, committee_score
from .single_winner import Power, closed_form_fvr

__all__ = [
    "DEFAULT_SEED",
    "ENUMERATION_BUDGET",
    "RankedProfile",
    "build_ranked_profile",
    "GeneratorSpec",
    "run_generator",
    "generator_names",
    "gen_spread",
    "gen_approval_gap",
    "gen_power_gap",
    "gen_weight_gap",
    "gen_symmetric",
    "gen_party_split",
    "gen_jr_hard",
    "gen_random_instance",
    "enumerate_instances",
    "enumerate_voter_multisets",
    "conditional_expected_score",
    "strong_pvc",
]

# Seed used by the uniform-approval generator when none is given, so that
# "random" fixtures are reproducible byte for byte.
DEFAULT_SEED = 2718

ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class RankedProfile:
    """Strict rankings: one permutation of 0..m-1 per voter, best first."""

    m: int
    rankings: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rankings)


def build_ranked_profile(m: int, rankings: object) -> RankedProfile:
    """Validate and freeze a ranked profile."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValidationError(f"need at least one candidate, got m={m!r}")
    rows = []
    for i, ranking in enumerate(rankings):
        row = tuple(ranking)
        if sorted(row) != list(range(m)):
            raise ValidationError(f"voter {i}: ranking {row!r} is not a permutation of 0..{m - 1}")
        rows.append(row)
    if not rows:
        raise ValidationError("need at least one voter")
    return RankedProfile(m, tuple(rows))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_spread(n: int, m: int, per_voter: int) -> Instance:
    """Voters take turns approving the ``per_voter`` least-approved candidates.

    Ties break toward the lowest index.  The greedy turn order keeps all
    approval counts within one of each other, so no candidate ends up with
    more than ceil(n*per_voter/m) approvals.
    """
    if not 0 <= per_voter <= m:
        raise ValidationError(f"per-voter approvals must be in 0..{m}, got {per_voter}")
    counts = [0] * m
    rows = []
    for _ in range(n):
        picks = sorted(range(m), key=lambda c: (counts[c], c))[:per_voter]
        for c in picks:
            counts[c] += 1
        rows.append(picks)
    return build_instance(m, rows)


def _shift(inst: Instance) -> list[set[int]]:
    return [{a + 1 for a in approved} for approved in inst.approvals]


def gen_approval_gap(n: int, m: int, s: object, r: object) -> tuple[Instance, int]:
    """Instance pushing the approval rule's audit at threshold s toward r.

    A flexible bloc of ceil(r*n) voters spreads ceil(s*m) approvals evenly
    over all candidates except a special one; everyone else bullet-votes
    the special candidate.  When the sizes work out, the special candidate
    wins on approvals while the whole bloc is s-flexible and disapproves
    it.  Returns the instance and the special candidate (index 0).
    """
    sv, rv = as_frac(s), as_frac(r)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    if not Frac(0) < rv < 1 / (1 + sv):
        raise ValidationError(f"need 0 < r < 1/(1+s) = {1 / (1 + sv)}, got r={rv}")
    bloc = ceil(rv * n)
    if not 1 <= bloc < n:
        raise ValidationError(f"flexible bloc of size {bloc} must satisfy 1 <= size < n={n}")
    per_voter = ceil(sv * m)
    if per_voter > m - 1:
        raise ValidationError(
            f"bloc voters need ceil(s*m) = {per_voter} <= m-1 = {m - 1} non-special candidates"
        )
    rows = _shift(gen_spread(bloc, m - 1, per_voter))
    rows.extend({0} for _ in range(n - bloc))
    return build_instance(m, rows), 0


def gen_power_gap(n: int, m: int, s: object, r: object, p: int) -> tuple[Instance, int]:
    """Instance pushing the p-power rule's audit at threshold s toward r.

    As in :func:`gen_approval_gap`, a bloc of ceil(r*n) voters spreads
    ceil(s*m) approvals over the non-special candidates.  The remaining
    voters approve the special candidate plus ceil(p*m/(1+p)) - 1 others,
    spread evenly, putting their flexibility at the point maximizing
    f^p*(1-f).  Returns the instance and the special candidate (index 0).
    """
    sv, rv = as_frac(s), as_frac(r)
    bound = closed_form_fvr(Power(p), sv).value
    if not Frac(0) < rv < bound:
        raise ValidationError(f"need 0 < r < {bound} (the p={p} guarantee at s={sv}), got r={rv}")
    bloc = ceil(rv * n)
    if not 1 <= bloc < n:
        raise ValidationError(f"flexible bloc of size {bloc} must satisfy 1 <= size < n={n}")
    per_bloc = ceil(sv * m)
    per_rest = ceil(Fraction(p, p + 1) * m) - 1
    if per_bloc > m - 1 or per_rest > m - 1 or per_rest < 0:
        raise ValidationError(
            f"infeasible spreads: bloc approves {per_bloc}, others approve {per_rest}, "
            f"of {m - 1} non-special candidates"
        )
    rows = _shift(gen_spread(bloc, m - 1, per_bloc))
    for shifted in _shift(gen_spread(n - bloc, m - 1, per_rest)):
        rows.append(shifted | {0})
    return build_instance(m, rows), 0


def gen_weight_gap(w: WeightFn, f: object, fprime: object, n: int) -> tuple[Instance, int]:
    """Instance pushing an arbitrary scoring rule's audit toward
    g = (1-f)w(f) / ((1-f)w(f) + f'w(f')).

    Uses the least m making both m*f and m*f' integral.  A bloc of
    floor(g*n) - m voters approves m*f' non-special candidates (flexibility
    f', disapproving the special candidate); the rest approve the special
    candidate plus m*f - 1 others (flexibility f).  The special candidate
    wins under the rule weighted by ``w`` for every valid n, so the audit
    at threshold f' is the bloc share, which approaches g from below.
    Returns the instance and the special candidate (index 0).
    """
    fv, fpv = as_frac(f), as_frac(fprime)
    wf = eval_weight(w, fv)
    if wf == 0:
        raise ValidationError(f"need w(f) > 0 at f={fv}")
    wfp = eval_weight(w, fpv)
    m = lcm(fv.denominator, fpv.denominator)
    ell = int(fv * m)
    ell_prime = int(fpv * m)
    gap = ((1 - fv) * wf) / ((1 - fv) * wf + fpv * wfp)
    bloc = floor(gap * n) - m
    if bloc < 0:
        raise ValidationError(
            f"n={n} too small: need floor(g*n) >= m, with g={gap} and m={m}"
        )
    rows = _shift(gen_spread(bloc, m - 1, ell_prime)) if bloc else []
    for shifted in _shift(gen_spread(n - bloc, m - 1, ell - 1)):
        rows.append(shifted | {0})
    return build_instance(m, rows), 0


def gen_symmetric(m: int, per_voter: int, limit: int = COMMITTEE_LIMIT) -> Instance:
    """One voter per ``per_voter``-subset of the candidates, in lexicographic order.

    Fully symmetric, so every committee of a given size is t-disapproved by
    exactly the same number of voters.
    """
    if not 0 <= per_voter <= m:
        raise ValidationError(f"per-voter approvals must be in 0..{m}, got {per_voter}")
    total = comb(m, per_voter)
    if total > limit:
        raise SizeLimitError(f"{total} voters exceed the limit {limit}")
    return build_instance(m, combinations(range(m), per_voter))


def gen_party_split(k: int, reps: int = 1) -> Instance:
    """Two disjoint slates of k candidates, each backed by half the voters.

    The minimal two-voter version, optionally replicated ``reps`` times.
    Every voter is 1/2-flexible; the instance separates optimality targets
    at different per-committee approval counts.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ValidationError(f"need slate size k >= 2, got {k!r}")
    if not isinstance(reps, int) or isinstance(reps, bool) or reps < 1:
        raise ValidationError(f"replication factor must be a positive integer, got {reps!r}")
    first = set(range(k))
    second = set(range(k, 2 * k))
    return build_instance(2 * k, [first, second] * reps)


def gen_jr_hard(m: int, k: int) -> Instance:
    """Instance where justified representation forces a near-worst audit.

    Candidates split into k-1 singleton-party candidates and a shared pool
    of m-k+1; there are k voter groups of size m-k+1.  Group j < k
    bullet-votes its party candidate; the last group's voters each approve
    the whole pool minus one distinct candidate.  Any committee satisfying
    justified representation must seat every party candidate, leaving one
    pool seat that some highly flexible pool voter disapproves.
    """
    if not (isinstance(k, int) and not isinstance(k, bool) and k >= 2):
        raise ValidationError(f"need k >= 2, got {k!r}")
    if not (isinstance(m, int) and not isinstance(m, bool) and m > k):
        raise ValidationError(f"need m > k, got m={m!r}, k={k!r}")
    group = m - k + 1
    rows: list[set[int]] = []
    for j in range(k - 1):
        rows.extend({j} for _ in range(group))
    pool = list(range(k - 1, m))
    for skip in pool:
        rows.append(set(pool) - {skip})
    return build_instance(m, rows)


def gen_random_instance(n: int, m: int, seed: int = DEFAULT_SEED) -> Instance:
    """Seeded uniform profile: each voter approves a uniformly random subset."""
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        mask = rng.getrandbits(m)
        rows.append({c for c in range(m) if mask >> c & 1})
    return build_instance(m, rows)


# ---------------------------------------------------------------------------
# Named generator registry (used by the CLI).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator call by name, with parameters validated per generator."""

    name: str
    params: tuple[tuple[str, object], ...]

    @classmethod
    def from_mapping(cls, name: str, params: Mapping[str, object]) -> "GeneratorSpec":
        return cls(name, tuple(sorted(params.items())))


_GENERATORS = {
    "spread": (("n", "m", "L"), {}, lambda p: (gen_spread(p["n"], p["m"], p["L"]), None)),
    "approval_gap": (
        ("n", "m", "s", "r"),
        {},
        lambda p: gen_approval_gap(p["n"], p["m"], p["s"], p["r"]),
    ),
    "power_gap": (
        ("n", "m", "s", "r", "p"),
        {},
        lambda p: gen_power_gap(p["n"], p["m"], p["s"], p["r"], p["p"]),
    ),
    "weight_gap": (
        ("w", "f", "fprime", "n"),
        {},
        lambda p: gen_weight_gap(p["w"], p["f"], p["fprime"], p["n"]),
    ),
    "symmetric": (("m", "L"), {}, lambda p: (gen_symmetric(p["m"], p["L"]), None)),
    "party_split": (
        ("k",),
        {"reps": 1},
        lambda p: (gen_party_split(p["k"], p["reps"]), None),
    ),
    "jr_hard": (("m", "k"), {}, lambda p: (gen_jr_hard(p["m"], p["k"]), None)),
    "random": (
        ("n", "m"),
        {"seed": DEFAULT_SEED},
        lambda p: (gen_random_instance(p["n"], p["m"], p["seed"]), None),
    ),
}


def generator_names() -> tuple[str, ...]:
    return tuple(sorted(_GENERATORS))


def run_generator(spec: GeneratorSpec) -> tuple[Instance, int | None]:
    """Build the named instance; returns (instance, special candidate or None)."""
    try:
        required, optional, builder = _GENERATORS[spec.name]
    except KeyError:
        known = ", ".join(generator_names())
        raise ValidationError(f"unknown generator {spec.name!r}; known: {known}") from None
    params = dict(spec.params)
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise ValidationError(f"unknown parameter(s) for {spec.name}: {sorted(unknown)}")
    missing = [key for key in required if key not in params]
    if missing:
        raise ValidationError(f"missing parameter(s) for {spec.name}: {missing}")
    for key, default in optional.items():
        params.setdefault(key, default)
    return builder(params)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def _all_subsets(m: int) -> list[frozenset[int]]:
    return [frozenset(c for c in range(m) if mask >> c & 1) for mask in range(2**m)]


def enumerate_instances(n: int, m: int, budget: int = ENUMERATION_BUDGET) -> Iterator[Instance]:
    """Every approval profile with n voters and m candidates, exactly once.

    Canonical order: each voter's set is indexed by its bitmask (candidate
    c contributes 2**c), and profiles tick through like an odometer with
    the last voter's set varying fastest.
    """
    total = (2**m) ** n
    if total > budget:
        raise SizeLimitError(f"{total} profiles exceed the budget {budget}")
    subsets = _all_subsets(m)
    for rows in product(subsets, repeat=n):
        yield Instance(m, rows)


def enumerate_voter_multisets(
    n: int, m: int, budget: int = ENUMERATION_BUDGET
) -> Iterator[Instance]:
    """One representative per profile-up-to-voter-order.

    Winners, committee rules, and audit counts are all invariant under
    permuting voters, so sweeping these representatives checks every
    ordered profile while enumerating far fewer instances.
    """
    total = comb(2**m + n - 1, n)
    if total > budget:
        raise SizeLimitError(f"{total} voter multisets exceed the budget {budget}")
    subsets = _all_subsets(m)
    for rows in combinations_with_replacement(subsets, n):
        yield Instance(m, rows)


def conditional_expected_score(
    inst: Instance,
    params: MultiParams,
    partial: object = (),
    limit: int = COMMITTEE_LIMIT,
) -> Frac:
    """Average committee penalty over all k-committees containing ``partial``.

    With an empty prefix this equals the number of voters that can miss
    their approval target at all; pinning a full committee reproduces its
    exact penalty.  The sequential rule's picks drive this quantity
    monotonically downward.
    """
    if params.k >= inst.m:
        raise ValidationError(f"committee size k={params.k} must be below m={inst.m}")
    base = tuple(sorted(set(partial)))
    for a in base:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < inst.m:
            raise ValidationError(f"partial committee member {a!r} outside 0..{inst.m - 1}")
    if len(base) > params.k:
        raise ValidationError(f"partial committee has {len(base)} members, more than k={params.k}")
    if comb(inst.m, params.k) > limit:
        raise SizeLimitError(f"{comb(inst.m, params.k)} committees exceed the limit {limit}")
    rest = [a for a in range(inst.m) if a not in base]
    need = params.k - len(base)
    total = Fraction(0)
    count = 0
    for extra in combinations(rest, need):
        total += committee_score(inst, Committee(base + extra), params.t)
        count += 1
    return total / count


# ---------------------------------------------------------------------------
# Strong proportional veto core (ranked ballots)
# ---------------------------------------------------------------------------


def strong_pvc(profile: RankedProfile) -> frozenset[int]:
    """Candidates not weakly vetoed by any voter group.

    A group of g voters weakly vetoes candidate ``a`` when every member
    prefers at least m - ceil(m*g/n) + 1 candidates to ``a``.  Only the
    count of voters past the positional cutoff matters, so scanning group
    sizes is equivalent to enumerating subsets.  May be empty.
    """
    m, n = profile.m, profile.n
    positions = [{a: pos for pos, a in enumerate(ranking)} for ranking in profile.rankings]
    surviving = set(range(m))
    for a in range(m):
        for g in range(1, n + 1):
            cutoff = m - ceil(Fraction(m * g, n)) + 1
            ahead = sum(1 for pos in positions if pos[a] >= cutoff)
            if ahead >= g:
                surviving.discard(a)
                break
    return frozenset(surviving)
