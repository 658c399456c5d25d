"""Named verification suites: exhaustive sweeps and oracle comparisons.

Each suite replays a guarantee or identity against brute force over a
bounded universe and reports the number of checks and any violations.
Suites are pure and deterministic; blocks of work are independent, so they
can run on a process pool, with results collected before printing to keep
output deterministic.

Suite parameter conventions (all optional, suite-specific defaults):

- ``n_max``/``m_max``: sweep ceilings for voters/candidates (for the
  ``hypergeom`` suite, ``m_max`` is the largest population compared against
  subset enumeration).
- ``budget``: cap on enumeration size; for ``hypergeom`` the number of
  random instances for the committee-counting identity, for ``pvc`` the
  number of sampled profiles per shape.
- ``seed``: seed for sampled checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, comb

from .core import (
    Committee,
    Constant,
    Frac,
    Optimal,
    Power,
    Threshold,
    build_instance,
    flexibility_grid,
)
from .hypergeom import HypParams, hyp_cdf, hyp_pmf, multiwinner_bound
from .multi_winner import (
    MultiParams,
    committee_score,
    empirical_fvr_committee,
    expanded_rule,
    sequential_picks,
)
from .oracles import (
    RankedProfile,
    conditional_expected_score,
    enumerate_voter_multisets,
    strong_pvc,
)
from .single_winner import closed_form_fvr, empirical_fvr_point, ropt_winner, winner

__all__ = [
    "VerifyResult",
    "SUITE_NAMES",
    "run_suite",
    "pmf_by_enumeration",
    "strong_pvc_by_subsets",
]

MAX_VIOLATIONS_KEPT = 50


@dataclass
class VerifyResult:
    suite: str
    checked: int
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def pmf_by_enumeration(population: int, successes: int, draws: int, t: int) -> Frac:
    """Hypergeometric mass by counting subsets directly."""
    good = set(range(successes))
    hits = sum(
        1 for chosen in combinations(range(population), draws) if len(good.intersection(chosen)) == t
    )
    return Fraction(hits, comb(population, draws))


def strong_pvc_by_subsets(profile: RankedProfile) -> frozenset[int]:
    """Veto-core membership by enumerating every voter group explicitly."""
    m, n = profile.m, profile.n
    positions = [{a: pos for pos, a in enumerate(ranking)} for ranking in profile.rankings]
    vetoed: set[int] = set()
    for a in range(m):
        done = False
        for size in range(1, n + 1):
            cutoff = m - ceil(Fraction(m * size, n)) + 1
            for group in combinations(range(n), size):
                if all(positions[i][a] >= cutoff for i in group):
                    vetoed.add(a)
                    done = True
                    break
            if done:
                break
    return frozenset(range(m)) - vetoed


# ---------------------------------------------------------------------------
# Block runners (top-level so a process pool can pickle the task dispatch)
# ---------------------------------------------------------------------------


def _single_winner_block(task: tuple) -> tuple[int, list[str]]:
    suite, n, m, budget = task
    grid = flexibility_grid(m)
    if not grid:
        return 0, []
    static_rules = {
        "opt": [("opt", Optimal(Fraction(1)))],
        "approval": [("approval", Constant())],
        "power": [(f"power:{p}", Power(p)) for p in (1, 2, 3)],
    }.get(suite, [])

    def bound_for(label: str, s: Frac) -> Frac:
        if label == "opt" or label == "threshold":
            return 1 - s
        if label == "approval":
            return 1 / (1 + s)
        p = int(label.split(":")[1])
        return closed_form_fvr(Power(p), s).value

    checked = 0
    bad: list[str] = []
    for inst in enumerate_voter_multisets(n, m, budget):
        for label, family in static_rules:
            chosen = winner(inst, family)
            for s in grid:
                audit = empirical_fvr_point(inst, chosen, s)
                checked += 1
                if audit > bound_for(label, s):
                    bad.append(
                        f"{label} n={n} m={m} approvals={[sorted(A) for A in inst.approvals]} "
                        f"s={s}: audit {audit} exceeds {bound_for(label, s)}"
                    )
        if suite == "threshold":
            for s in grid:
                chosen = winner(inst, Threshold(s))
                audit = empirical_fvr_point(inst, chosen, s)
                checked += 1
                if audit > 1 - s:
                    bad.append(
                        f"threshold n={n} m={m} approvals={[sorted(A) for A in inst.approvals]} "
                        f"s={s}: audit {audit} exceeds {1 - s}"
                    )
    return checked, bad


def _multiwinner_block(task: tuple) -> tuple[int, list[str]]:
    n, m, budget = task
    if m < 2:
        return 0, []
    grid = flexibility_grid(m)
    checked = 0
    bad: list[str] = []
    for inst in enumerate_voter_multisets(n, m, budget):
        profile = [sorted(A) for A in inst.approvals]
        for k in range(1, m):
            for t in range(1, k + 1):
                params = MultiParams(k, t)
                picks = sequential_picks(inst, params)
                seq_committee = Committee(picks)
                score = committee_score(inst, seq_committee, t)
                checked += 1
                if score > n:
                    bad.append(
                        f"n={n} m={m} k={k} t={t} approvals={profile}: "
                        f"sequential committee {picks} scores {score} > n"
                    )
                previous = conditional_expected_score(inst, params, ())
                includable = sum(
                    1 for A in inst.approvals if hyp_cdf(HypParams(m, len(A), k), t - 1) > 0
                )
                checked += 1
                if previous != includable:
                    bad.append(
                        f"n={n} m={m} k={k} t={t} approvals={profile}: average penalty over "
                        f"all committees is {previous}, not the {includable} includable voters"
                    )
                for j in range(1, k + 1):
                    current = conditional_expected_score(inst, params, picks[:j])
                    checked += 1
                    if current > previous:
                        bad.append(
                            f"n={n} m={m} k={k} t={t} approvals={profile}: conditional "
                            f"expectation rose from {previous} to {current} at pick {j}"
                        )
                    previous = current
                exp_committee = expanded_rule(inst, params)
                for s in grid:
                    bound = multiwinner_bound(m, s, k, t)
                    for name, committee in (("seq", seq_committee), ("expanded", exp_committee)):
                        audit = empirical_fvr_committee(inst, committee, s, t)
                        checked += 1
                        if audit > bound:
                            bad.append(
                                f"{name} n={n} m={m} k={k} t={t} s={s} approvals={profile}: "
                                f"audit {audit} exceeds {bound}"
                            )
    return checked, bad


def _reduction_block(task: tuple) -> tuple[int, list[str]]:
    n, m, budget = task
    if m < 2:
        return 0, []
    checked = 0
    bad: list[str] = []
    params = MultiParams(1, 1)
    for inst in enumerate_voter_multisets(n, m, budget):
        expected = ropt_winner(inst)
        seq = sequential_picks(inst, params)
        exp = expanded_rule(inst, params)
        checked += 2
        if seq != (expected,):
            bad.append(f"n={n} m={m} approvals={[sorted(A) for A in inst.approvals]}: "
                       f"sequential gave {seq}, single-winner rule gives {expected}")
        if exp.members != (expected,):
            bad.append(f"n={n} m={m} approvals={[sorted(A) for A in inst.approvals]}: "
                       f"expanded gave {exp.members}, single-winner rule gives {expected}")
    return checked, bad


def _hyp_enum_block(task: tuple) -> tuple[int, list[str]]:
    (population,) = task
    checked = 0
    bad: list[str] = []
    for successes in range(population + 1):
        for draws in range(population + 1):
            params = HypParams(population, successes, draws)
            running = Fraction(0)
            for t in range(-1, draws + 2):
                expected = pmf_by_enumeration(population, successes, draws, t) if t >= 0 else Fraction(0)
                actual = hyp_pmf(params, t)
                checked += 1
                if actual != expected:
                    bad.append(f"pmf({population},{successes},{draws};{t}) = {actual} != {expected}")
                running += expected
                if hyp_cdf(params, t) != (running if t >= 0 else Fraction(0)):
                    bad.append(f"cdf({population},{successes},{draws};{t}) != enumerated cumulative")
    return checked, bad


def _hyp_sum_block(task: tuple) -> tuple[int, list[str]]:
    (population,) = task
    checked = 0
    bad: list[str] = []
    for successes in range(population + 1):
        for draws in range(population + 1):
            params = HypParams(population, successes, draws)
            total = sum(hyp_pmf(params, t) for t in range(draws + 1))
            checked += 1
            if total != 1:
                bad.append(f"pmf over ({population},{successes},{draws}) sums to {total}")
            flipped = HypParams(population, draws, successes)
            for t in range(population + 1):
                checked += 1
                if hyp_pmf(params, t) != hyp_pmf(flipped, t):
                    bad.append(
                        f"symmetry broken at ({population},{successes},{draws};{t})"
                    )
    return checked, bad


def _hyp_counting_block(task: tuple) -> tuple[int, list[str]]:
    seed, count, m_max = task
    rng = random.Random(seed)
    checked = 0
    bad: list[str] = []
    for _ in range(count):
        m = rng.randint(2, m_max)
        n = rng.randint(1, 6)
        inst = build_instance(
            m, [{c for c in range(m) if rng.getrandbits(1)} for _ in range(n)]
        )
        for approved in inst.approvals:
            size = len(approved)
            for k in range(1, m):
                histogram = [0] * (k + 1)
                for members in combinations(range(m), k):
                    histogram[len(approved.intersection(members))] += 1
                reached = comb(m, k)
                for t in range(1, k + 1):
                    reached -= histogram[t - 1]
                    expected = (1 - hyp_cdf(HypParams(m, size, k), t - 1)) * comb(m, k)
                    checked += 1
                    if reached != expected:
                        bad.append(
                            f"m={m} k={k} t={t} |A|={size}: {reached} committees reach the "
                            f"target but the distribution predicts {expected}"
                        )
    return checked, bad


def _pvc_block(task: tuple) -> tuple[int, list[str]]:
    n, m, sample, seed = task
    checked = 0
    bad: list[str] = []
    all_perms = _permutations(m)
    total = len(all_perms) ** n
    profiles: list[tuple[tuple[int, ...], ...]]
    if total <= sample:
        profiles = list(product(all_perms, repeat=n))
    else:
        rng = random.Random(seed)
        profiles = [
            tuple(tuple(rng.sample(range(m), m)) for _ in range(n)) for _ in range(sample)
        ]
    for rankings in profiles:
        profile = RankedProfile(m, rankings)
        checked += 1
        if strong_pvc(profile) != strong_pvc_by_subsets(profile):
            bad.append(f"m={m} rankings={rankings}: scan and subset oracle disagree")
    return checked, bad


def _permutations(m: int) -> list[tuple[int, ...]]:
    from itertools import permutations

    return list(permutations(range(m)))


_RUNNERS = {
    "single": _single_winner_block,
    "multi": _multiwinner_block,
    "reduction": _reduction_block,
    "hyp_enum": _hyp_enum_block,
    "hyp_sum": _hyp_sum_block,
    "hyp_counting": _hyp_counting_block,
    "pvc": _pvc_block,
}


def _dispatch(arg: tuple[str, tuple]) -> tuple[int, list[str]]:
    runner, task = arg
    return _RUNNERS[runner](task)


# ---------------------------------------------------------------------------
# Suite definitions
# ---------------------------------------------------------------------------


def _sweep_pairs(n_max: int, m_max: int) -> list[tuple[int, int]]:
    return [(n, m) for m in range(1, m_max + 1) for n in range(1, n_max + 1)]


def _build_single(suite: str, n_max, m_max, budget, seed) -> list[tuple[str, tuple]]:
    n_max = n_max or 3
    m_max = m_max or 3
    budget = budget or 10**6
    return [("single", (suite, n, m, budget)) for n, m in _sweep_pairs(n_max, m_max)]


def _build_multi(n_max, m_max, budget, seed):
    n_max = n_max or 2
    m_max = m_max or 4
    budget = budget or 10**6
    return [("multi", (n, m, budget)) for n, m in _sweep_pairs(n_max, m_max)]


def _build_reduction(n_max, m_max, budget, seed):
    n_max = n_max or 3
    m_max = m_max or 3
    budget = budget or 10**6
    return [("reduction", (n, m, budget)) for n, m in _sweep_pairs(n_max, m_max)]


def _build_hypergeom(n_max, m_max, budget, seed):
    enum_max = m_max or 6
    counting_samples = budget or 50
    seed = seed if seed is not None else 0
    tasks: list[tuple[str, tuple]] = []
    tasks.extend(("hyp_enum", (p,)) for p in range(enum_max + 1))
    tasks.extend(("hyp_sum", (p,)) for p in range(enum_max + 5))
    tasks.append(("hyp_counting", (seed, counting_samples, min(enum_max + 2, 8))))
    return tasks


def _build_pvc(n_max, m_max, budget, seed):
    n_max = n_max or 3
    m_max = m_max or 3
    sample = budget or 300
    seed = seed if seed is not None else 0
    return [
        ("pvc", (n, m, sample, seed + 31 * (n * 17 + m)))
        for m in range(1, m_max + 1)
        for n in range(1, n_max + 1)
    ]


_SUITES = {
    "opt": lambda *a: _build_single("opt", *a),
    "threshold": lambda *a: _build_single("threshold", *a),
    "approval": lambda *a: _build_single("approval", *a),
    "power": lambda *a: _build_single("power", *a),
    "multiwinner": _build_multi,
    "reduction": _build_reduction,
    "hypergeom": _build_hypergeom,
    "pvc": _build_pvc,
}

SUITE_NAMES = tuple(sorted(_SUITES))


def run_suite(
    name: str,
    jobs: int = 1,
    n_max: int | None = None,
    m_max: int | None = None,
    budget: int | None = None,
    seed: int | None = None,
) -> VerifyResult:
    """Run a named suite, optionally spreading its blocks over ``jobs`` processes."""
    try:
        builder = _SUITES[name]
    except KeyError:
        known = ", ".join(SUITE_NAMES)
        raise ValueError(f"unknown suite {name!r}; known: {known}") from None
    tasks = builder(n_max, m_max, budget, seed)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            outcomes = pool.map(_dispatch, tasks)
    else:
        outcomes = [_dispatch(task) for task in tasks]
    checked = sum(c for c, _ in outcomes)
    violations = [v for _, vs in outcomes for v in vs][:MAX_VIOLATIONS_KEPT]
    return VerifyResult(name, checked, violations)
