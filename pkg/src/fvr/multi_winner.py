"""Committee selection rules, committee audits, and the justified-representation check.

Two rules achieve the hypergeometric optimum for a fixed approval target t:
an expansion that reruns the optimal single-winner rule over all k-subsets,
and a greedy sequential rule that derandomizes the same averaging argument
one seat at a time in polynomial time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .core import (
    Committee,
    Frac,
    Instance,
    SizeLimitError,
    ValidationError,
    as_frac,
)
from .hypergeom import HypParams, hyp_cdf, hyp_pmf
from .single_winner import ropt_winner

__all__ = [
    "COMMITTEE_LIMIT",
    "MultiParams",
    "ExpandedInstance",
    "t_approves",
    "expand_instance",
    "expanded_rule",
    "committee_score",
    "sequential_picks",
    "sequential_rule",
    "empirical_fvr_committee",
    "JrResult",
    "jr_check",
    "brute_best_committee",
]

# Default cap on how many committees an exhaustive construction may touch.
COMMITTEE_LIMIT = 200_000


@dataclass(frozen=True)
class MultiParams:
    """Committee size k and per-voter approval target t (1 <= t <= k)."""

    k: int
    t: int

    def __post_init__(self) -> None:
        for name, v in (("k", self.k), ("t", self.t)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        if self.t > self.k:
            raise ValidationError(f"approval target t={self.t} exceeds committee size k={self.k}")


def _check_k(inst: Instance, k: int) -> None:
    if k >= inst.m:
        raise ValidationError(f"committee size k={k} must be below m={inst.m}")


def _check_committee(inst: Instance, committee: Committee, t: int) -> frozenset[int]:
    members = frozenset(committee.members)
    if not members:
        raise ValidationError("committee is empty")
    for a in members:
        if a >= inst.m:
            raise ValidationError(f"committee member {a} outside 0..{inst.m - 1}")
    if not 1 <= t <= len(members):
        raise ValidationError(f"need 1 <= t <= {len(members)}, got t={t}")
    return members


def t_approves(inst: Instance, i: int, committee: Committee, t: int) -> bool:
    """Whether voter ``i`` approves at least ``t`` members of the committee."""
    members = _check_committee(inst, committee, t)
    if not 0 <= i < inst.n:
        raise ValidationError(f"no voter {i}: instance has {inst.n} voters")
    return len(inst.approvals[i] & members) >= t


@dataclass(frozen=True)
class ExpandedInstance:
    """A single-winner instance whose candidates are all k-committees.

    ``committees`` lists the k-subsets in lexicographic order; voter i
    approves committee-candidate j exactly when she t-approves
    ``committees[j]`` in the base instance.
    """

    base: Instance
    params: MultiParams
    committees: tuple[tuple[int, ...], ...]
    expanded: Instance


def expand_instance(
    inst: Instance, params: MultiParams, limit: int = COMMITTEE_LIMIT
) -> ExpandedInstance:
    """Build the committee-as-candidate instance for (k, t)."""
    _check_k(inst, params.k)
    total = comb(inst.m, params.k)
    if total > limit:
        raise SizeLimitError(
            f"expansion needs {total} committee-candidates (limit {limit}); "
            "use sequential_rule instead"
        )
    committees = tuple(combinations(range(inst.m), params.k))
    rows = []
    for approved in inst.approvals:
        rows.append(
            frozenset(
                j
                for j, members in enumerate(committees)
                if len(approved.intersection(members)) >= params.t
            )
        )
    # Indices are by construction within range; skip per-index revalidation.
    expanded = Instance(total, tuple(rows))
    return ExpandedInstance(base=inst, params=params, committees=committees, expanded=expanded)


def expanded_rule(inst: Instance, params: MultiParams, limit: int = COMMITTEE_LIMIT) -> Committee:
    """Run the optimal single-winner rule over all k-committees and pick its winner."""
    exp = expand_instance(inst, params, limit)
    return Committee(exp.committees[ropt_winner(exp.expanded)])


def committee_score(inst: Instance, committee: Committee, t: int) -> Frac:
    """Penalty of a committee: each voter left below her approval target adds
    the reciprocal of the probability that a uniformly random committee of
    the same size would leave her below it.

    A random committee scores n in expectation, so any committee scoring at
    most n meets the hypergeometric guarantee.  Voters certain to reach the
    target on every committee have reciprocal weight undefined (probability
    0) and are skipped; such voters can never be in the penalized group.
    """
    members = _check_committee(inst, committee, t)
    k = len(members)
    total = Fraction(0)
    for approved in inst.approvals:
        if len(approved & members) >= t:
            continue
        miss_prob = hyp_cdf(HypParams(inst.m, len(approved), k), t - 1)
        if miss_prob == 0:
            continue
        total += 1 / miss_prob
    return total


def sequential_picks(inst: Instance, params: MultiParams) -> tuple[int, ...]:
    """Greedy seat-by-seat committee construction, in pick order.

    At each step every voter gets a weight equal to the probability that a
    random completion of the current partial committee would put her
    exactly one approved member short of her target, normalized by her
    overall probability of missing the target; the candidate with the
    largest weighted approval joins (lowest index on ties).  The returned
    order is what the step-by-step averaging argument reasons about;
    :func:`sequential_rule` wraps it as a committee.
    """
    _check_k(inst, params.k)
    m, k, t, n = inst.m, params.k, params.t, inst.n
    miss_prob = [hyp_cdf(HypParams(m, len(A), k), t - 1) for A in inst.approvals]
    chosen: list[int] = []
    chosen_set: set[int] = set()
    overlap = [0] * n
    for j in range(1, k + 1):
        scores = [Fraction(0)] * m
        for i, approved in enumerate(inst.approvals):
            remaining = len(approved) - overlap[i]
            if remaining == 0 or miss_prob[i] == 0:
                continue
            if remaining > m - j:
                # She approves every candidate still available, so her weight
                # would raise all of them equally; the argmax cannot move.
                continue
            weight = (
                hyp_pmf(HypParams(m - j - 1, remaining - 1, k - j), t - 1 - overlap[i])
                / miss_prob[i]
            )
            if weight == 0:
                continue
            for a in approved:
                if a not in chosen_set:
                    scores[a] += weight
        best = None
        for a in range(m):
            if a in chosen_set:
                continue
            if best is None or scores[a] > scores[best]:
                best = a
        assert best is not None
        chosen.append(best)
        chosen_set.add(best)
        for i, approved in enumerate(inst.approvals):
            if best in approved:
                overlap[i] += 1
    return tuple(chosen)


def sequential_rule(inst: Instance, params: MultiParams) -> Committee:
    """The committee built by :func:`sequential_picks`; always scores at most n."""
    return Committee(sequential_picks(inst, params))


def empirical_fvr_committee(inst: Instance, committee: Committee, s: object, t: int) -> Frac:
    """Share of voters that are s-flexible yet approve fewer than ``t`` members."""
    sv = as_frac(s)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    members = _check_committee(inst, committee, t)
    threshold_size = sv * inst.m
    hits = sum(
        1
        for approved in inst.approvals
        if len(approved) >= threshold_size and len(approved & members) < t
    )
    return Fraction(hits, inst.n)


@dataclass(frozen=True)
class JrResult:
    """Outcome of a justified-representation check, with a witness on failure.

    On failure, ``blocking_candidate`` is the lowest-index commonly approved
    candidate of a large, fully unrepresented voter group, and
    ``blocking_voters`` lists that group.
    """

    satisfied: bool
    blocking_candidate: int | None = None
    blocking_voters: tuple[int, ...] = ()


def jr_check(inst: Instance, committee: Committee) -> JrResult:
    """Justified representation: no n/k-sized group sharing an approved
    candidate may end up with zero approved committee members.

    The n/k comparison is exact (no integer division).
    """
    members = frozenset(committee.members)
    if not members:
        raise ValidationError("committee is empty")
    for a in members:
        if a >= inst.m:
            raise ValidationError(f"committee member {a} outside 0..{inst.m - 1}")
    k = len(members)
    unrepresented = [i for i in range(inst.n) if not inst.approvals[i] & members]
    for c in range(inst.m):
        group = tuple(i for i in unrepresented if c in inst.approvals[i])
        if len(group) * k >= inst.n:
            return JrResult(satisfied=False, blocking_candidate=c, blocking_voters=group)
    return JrResult(satisfied=True)


def brute_best_committee(
    inst: Instance, params: MultiParams, s: object, limit: int = COMMITTEE_LIMIT
) -> Committee:
    """Exhaustively pick the committee t-approved by the most s-flexible voters.

    Lexicographic tie-break.  This is the threshold-tailored rule whose
    audit meets the hypergeometric bound exactly.
    """
    sv = as_frac(s)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    _check_k(inst, params.k)
    total = comb(inst.m, params.k)
    if total > limit:
        raise SizeLimitError(f"{total} committees exceed the limit {limit}")
    threshold_size = sv * inst.m
    flexible = [A for A in inst.approvals if len(A) >= threshold_size]
    best: tuple[int, ...] | None = None
    best_count = -1
    for members in combinations(range(inst.m), params.k):
        mset = frozenset(members)
        count = sum(1 for A in flexible if len(A & mset) >= params.t)
        if count > best_count:
            best, best_count = members, count
    assert best is not None
    return Committee(best)
