"""Scoring rules, winner selection, and worst-case guarantees for
single-winner approval elections.

The audit quantity used throughout: for a chosen candidate ``a`` and a
flexibility threshold ``s``, the share of voters that are s-flexible yet
disapprove ``a``.  A rule's guarantee at ``s`` is the largest share any
instance can force on it; lower is stronger, and no rule can beat ``1 - s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AuditCurve,
    Constant,
    Frac,
    Instance,
    Optimal,
    Power,
    Table,
    Threshold,
    ValidationError,
    WeightFn,
    as_frac,
    eval_weight,
    flexibility_grid,
)

__all__ = [
    "ScoreVector",
    "score_all",
    "winner",
    "ropt_winner",
    "empirical_fvr_point",
    "empirical_fvr_curve",
    "FvrBound",
    "closed_form_fvr",
    "grid_theoretical_fvr",
    "is_optimal_weight_table",
]

ScoreVector = tuple[Frac, ...]


def score_all(inst: Instance, w: WeightFn) -> ScoreVector:
    """Per-candidate scores: each voter adds her weight to every candidate she approves.

    Voters approving nothing contribute no score; voters approving
    everything would raise all scores equally, so they are skipped and the
    weight function is never evaluated at flexibility 0 or 1.
    """
    scores = [Fraction(0)] * inst.m
    weight_by_size: dict[int, Frac] = {}
    for approved in inst.approvals:
        size = len(approved)
        if size == 0 or size == inst.m:
            continue
        wv = weight_by_size.get(size)
        if wv is None:
            wv = eval_weight(w, Fraction(size, inst.m))
            weight_by_size[size] = wv
        if wv == 0:
            continue
        for a in approved:
            scores[a] += wv
    return tuple(scores)


def winner(inst: Instance, w: WeightFn) -> int:
    """The lowest-index candidate with maximal score (deterministic tie-break)."""
    scores = score_all(inst, w)
    best = 0
    for a in range(1, inst.m):
        if scores[a] > scores[best]:
            best = a
    return best


def ropt_winner(inst: Instance) -> int:
    """Winner under the 1/(1-f) weighting, optimal at every threshold at once."""
    return winner(inst, Optimal(Fraction(1)))


def empirical_fvr_point(inst: Instance, a: int, s: object) -> Frac:
    """Share of voters that are s-flexible yet disapprove candidate ``a``.

    The representation condition at level r holds for this outcome and
    threshold exactly when the returned share is at most r.
    """
    sv = as_frac(s)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    if not 0 <= a < inst.m:
        raise ValidationError(f"no candidate {a}: instance has m={inst.m}")
    threshold_size = sv * inst.m
    hits = sum(
        1 for approved in inst.approvals if a not in approved and len(approved) >= threshold_size
    )
    return Fraction(hits, inst.n)


def empirical_fvr_curve(inst: Instance, a: int) -> AuditCurve:
    """The audit of candidate ``a`` as a step function of the threshold s.

    Breakpoints sit exactly at the distinct positive flexibilities of the
    voters disapproving ``a``; the first step's value is also the limit as
    s approaches 0.
    """
    if not 0 <= a < inst.m:
        raise ValidationError(f"no candidate {a}: instance has m={inst.m}")
    sizes = sorted(
        {len(approved) for approved in inst.approvals if a not in approved and approved}
    )
    breakpoints = []
    for size in sizes:
        count = sum(
            1 for approved in inst.approvals if a not in approved and len(approved) >= size
        )
        breakpoints.append((Fraction(size, inst.m), Fraction(count, inst.n)))
    return AuditCurve(tuple(breakpoints))


@dataclass(frozen=True)
class FvrBound:
    """A guarantee value at threshold ``s``.

    ``kind`` records how it was computed: "closed_form" for the named
    families, or "grid" for the finite-grid evaluation (with ``grid_m`` the
    grid resolution) -- the two must never be confused, since grid values
    only converge to the closed forms as the grid refines.
    """

    s: Frac
    value: Frac
    kind: str
    grid_m: int | None = None


def closed_form_fvr(family: WeightFn, s: object) -> FvrBound:
    """Exact guarantee of a built-in weight family at threshold ``s``.

    Constant scoring gives 1/(1+s); the p-power family gives
    1/(1 + (s(1+p))^(1+p) / p^p); the 1/(1-f) family gives 1-s; a hard
    cutoff at s0 gives 1-s0 once s reaches s0 and nothing (1) below it.
    """
    sv = as_frac(s)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    if isinstance(family, Constant):
        value = 1 / (1 + sv)
    elif isinstance(family, Power):
        p = family.p
        value = 1 / (1 + (sv * (p + 1)) ** (p + 1) / Fraction(p**p))
    elif isinstance(family, Optimal):
        value = 1 - sv
    elif isinstance(family, Threshold):
        value = (1 - family.s0) if sv >= family.s0 else Fraction(1)
    elif isinstance(family, Table):
        raise ValidationError(
            "no closed form for table weights; evaluate with grid_theoretical_fvr"
        )
    else:
        raise ValidationError(f"not a weight function: {family!r}")
    return FvrBound(s=sv, value=value, kind="closed_form")


def grid_theoretical_fvr(w: WeightFn, s: object, grid_m: int) -> FvrBound:
    """Guarantee of an arbitrary weight function, evaluated on a finite grid.

    Over the flexibilities {1/grid_m, ..., (grid_m-1)/grid_m}, computes
    rho = max (1-f)*w(f) and phi = min over grid f >= s of f*w(f), and
    returns rho / (rho + phi).  If no grid point reaches s, phi falls back
    to the largest grid point.  The true guarantee takes rho and phi over
    all rationals in (0,1); the grid value is exact for the grid and
    converges to the closed forms as the grid refines through denominators
    of s.
    """
    sv = as_frac(s)
    if not Frac(0) < sv < 1:
        raise ValidationError(f"threshold {sv} lies outside (0,1)")
    if not isinstance(grid_m, int) or isinstance(grid_m, bool) or grid_m < 2:
        raise ValidationError(f"grid resolution must be an integer >= 2, got {grid_m!r}")
    grid = flexibility_grid(grid_m)
    values = {f: eval_weight(w, f) for f in grid}
    rho = max((1 - f) * values[f] for f in grid)
    if rho == 0:
        raise ValidationError(
            f"weight function is trivial on the {grid_m}-point grid: w(f) > 0 must hold somewhere"
        )
    at_or_above = [f for f in grid if f >= sv]
    if at_or_above:
        phi = min(f * values[f] for f in at_or_above)
    else:
        top = grid[-1]
        phi = top * values[top]
    return FvrBound(s=sv, value=rho / (rho + phi), kind="grid", grid_m=grid_m)


def is_optimal_weight_table(w: Table) -> bool:
    """Whether the table samples the 1/(1-f) scale family.

    True exactly when (1-f)*w(f) is the same positive constant for every
    entry -- the condition characterizing weight functions whose rule is
    optimal at every threshold simultaneously.
    """
    products = {(1 - f) * wv for f, wv in w.entries}
    if len(products) != 1:
        return False
    return next(iter(products)) > 0
