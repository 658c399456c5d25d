"""Core domain model: approval instances, voter flexibility, and the
weight-function families that drive every scoring rule in this package.

Everything is exact.  Scores, audit shares, probabilities, and bounds are
all `fractions.Fraction` values; floats never enter a computation (the CLI
renders decimals for display only).  All types are immutable after
construction and all operations are pure, so everything here is safe to
use from multiple threads without coordination.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Frac = Fraction

__all__ = [
    "Frac",
    "ValidationError",
    "SizeLimitError",
    "as_frac",
    "Instance",
    "build_instance",
    "flexibility",
    "flexibility_grid",
    "Constant",
    "Threshold",
    "Power",
    "Optimal",
    "Table",
    "WeightFn",
    "eval_weight",
    "Committee",
    "AuditCurve",
]


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


class SizeLimitError(ValidationError):
    """Raised when an enumeration would exceed its configured size budget."""


def as_frac(x: object) -> Frac:
    """Coerce an int, Fraction, or fraction string to an exact rational.

    Floats are rejected: silently converting them would smuggle binary
    rounding error into a library whose whole point is exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValidationError(f"expected a rational number, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational number: {x!r} ({exc})") from None
    if isinstance(x, float):
        raise ValidationError(
            f"refusing float {x!r}: pass an exact value such as Fraction(1, 2) or '1/2'"
        )
    raise ValidationError(f"expected a rational number, got {x!r}")


@dataclass(frozen=True)
class Instance:
    """An approval election: candidates 0..m-1 and one approval set per voter.

    Construct through :func:`build_instance`, which validates the indices.
    """

    m: int
    approvals: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.approvals)


def build_instance(m: int, approvals: Iterable[Iterable[int]]) -> Instance:
    """Validate and freeze an approval profile.

    Voter order is preserved.  Each approval set is deduplicated; indices
    must lie in ``0..m-1``.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValidationError(f"need at least one candidate, got m={m!r}")
    rows: list[frozenset[int]] = []
    for i, approved in enumerate(approvals):
        row = frozenset(approved)
        for a in row:
            if not isinstance(a, int) or isinstance(a, bool):
                raise ValidationError(f"voter {i}: candidate index {a!r} is not an integer")
            if not 0 <= a < m:
                raise ValidationError(
                    f"voter {i} approves candidate {a}, outside the range 0..{m - 1}"
                )
        rows.append(row)
    if not rows:
        raise ValidationError("need at least one voter")
    return Instance(m, tuple(rows))


def flexibility(inst: Instance, i: int) -> Frac:
    """The share of all candidates voter ``i`` approves, in lowest terms."""
    if not 0 <= i < inst.n:
        raise ValidationError(f"no voter {i}: instance has {inst.n} voters")
    return Frac(len(inst.approvals[i]), inst.m)


def flexibility_grid(m: int) -> tuple[Frac, ...]:
    """Every flexibility value strictly inside (0, 1) that ``m`` candidates allow."""
    return tuple(Frac(i, m) for i in range(1, m))


# ---------------------------------------------------------------------------
# Weight functions.
#
# A weight function maps a voter's flexibility (in (0,1)) to a nonnegative
# weight; a scoring rule gives each candidate the summed weight of her
# approvers.  Voters at flexibility 0 approve nobody and voters at
# flexibility 1 raise every candidate equally, so scoring never evaluates a
# weight at the endpoints.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    """w(f) = 1: plain approval counting."""


@dataclass(frozen=True)
class Threshold:
    """w(f) = 1 if f >= s0 else 0: counts only voters at least s0-flexible."""

    s0: Frac

    def __post_init__(self) -> None:
        object.__setattr__(self, "s0", as_frac(self.s0))
        if not Frac(0) < self.s0 < 1:
            raise ValidationError(f"threshold cutoff must be in (0,1), got {self.s0}")


@dataclass(frozen=True)
class Power:
    """w(f) = f**p for an integer exponent p >= 1 (kept integral for exactness)."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool) or self.p < 1:
            raise ValidationError(f"power exponent must be an integer >= 1, got {self.p!r}")


@dataclass(frozen=True)
class Optimal:
    """w(f) = c / (1 - f).

    The one scale family for which (1-f)*w(f) is the same constant at every
    flexibility; scoring with it guarantees a worst-case disapproval share
    of 1-s at every threshold s simultaneously.
    """

    c: Frac = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", as_frac(self.c))
        if self.c <= 0:
            raise ValidationError(f"scale must be positive, got {self.c}")


class Table:
    """Finite weight table: an explicit nonnegative weight per listed flexibility.

    Must be nontrivial (at least one positive weight).  Evaluation outside
    the listed flexibilities is an error.
    """

    __slots__ = ("entries", "_by_flex")

    entries: tuple[tuple[Frac, Frac], ...]

    def __init__(self, weights: Mapping[object, object] | Iterable[tuple[object, object]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        pairs: list[tuple[Frac, Frac]] = []
        seen: set[Frac] = set()
        for key, value in items:
            f = as_frac(key)
            wv = as_frac(value)
            if not Frac(0) < f < 1:
                raise ValidationError(f"table flexibility {f} lies outside (0,1)")
            if wv < 0:
                raise ValidationError(f"table weight for flexibility {f} is negative: {wv}")
            if f in seen:
                raise ValidationError(f"duplicate table flexibility {f}")
            seen.add(f)
            pairs.append((f, wv))
        if not pairs:
            raise ValidationError("weight table is empty")
        if all(wv == 0 for _, wv in pairs):
            raise ValidationError("weight table is trivial: some flexibility needs w(f) > 0")
        self.entries = tuple(sorted(pairs))
        self._by_flex = dict(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Table) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(("Table", self.entries))

    def __repr__(self) -> str:
        inner = ", ".join(f"{f}: {w}" for f, w in self.entries)
        return f"Table({{{inner}}})"


WeightFn = Union[Constant, Threshold, Power, Optimal, Table]


def eval_weight(w: WeightFn, f: object) -> Frac:
    """Evaluate a weight function at a flexibility in (0, 1)."""
    flex = as_frac(f)
    if not Frac(0) < flex < 1:
        raise ValidationError(f"flexibility {flex} lies outside (0,1)")
    if isinstance(w, Constant):
        return Fraction(1)
    if isinstance(w, Threshold):
        return Fraction(1) if flex >= w.s0 else Fraction(0)
    if isinstance(w, Power):
        return flex**w.p
    if isinstance(w, Optimal):
        return w.c / (1 - flex)
    if isinstance(w, Table):
        try:
            return w._by_flex[flex]
        except KeyError:
            raise ValidationError(f"weight table has no entry for flexibility {flex}") from None
    raise ValidationError(f"not a weight function: {w!r}")


@dataclass(frozen=True)
class Committee:
    """A set of distinct candidate indices, stored sorted."""

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        ms = tuple(sorted(set(self.members)))
        for a in ms:
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise ValidationError(f"candidate index {a!r} is not a nonnegative integer")
        object.__setattr__(self, "members", ms)

    @property
    def k(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, a: object) -> bool:
        return a in self.members


@dataclass(frozen=True)
class AuditCurve:
    """A non-increasing step function of the flexibility threshold s.

    ``breakpoints`` is a sorted tuple of ``(s_j, value_j)`` pairs meaning
    the curve equals ``value_j`` on the interval ``(s_{j-1}, s_j]`` (with
    ``s_0 = 0``) and drops to 0 beyond the last breakpoint.
    """

    breakpoints: tuple[tuple[Frac, Frac], ...]

    def __post_init__(self) -> None:
        prev_s = Frac(0)
        prev_v = Frac(1)
        for s, v in self.breakpoints:
            if not prev_s < s <= 1:
                raise ValidationError(f"breakpoint {s} out of order or outside (0,1]")
            if not Frac(0) <= v <= 1 or v > prev_v:
                raise ValidationError(f"curve values must be non-increasing within [0,1], got {v}")
            prev_s, prev_v = s, v

    def value_at(self, s: object) -> Frac:
        """Evaluate the step function at any s in (0, 1)."""
        sv = as_frac(s)
        if not Frac(0) < sv < 1:
            raise ValidationError(f"threshold {sv} lies outside (0,1)")
        keys = [bp_s for bp_s, _ in self.breakpoints]
        idx = bisect_left(keys, sv)
        if idx == len(keys):
            return Fraction(0)
        return self.breakpoints[idx][1]
