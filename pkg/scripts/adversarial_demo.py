#!/usr/bin/env python3
"""Demonstrate worst-case instances: how far each rule can be pushed.

Builds the adversarial constructions at concrete finite sizes and prints,
for each, the audited disapproval share of the rule it targets next to the
rule's theoretical guarantee, plus the audit of the simultaneously-optimal
rule on the same instance.  Ends with the two committee-level separations:
the party-split instance (no rule serves every approval target at once) and
the instance where justified representation conflicts with the attainable
committee bound.
"""

from fractions import Fraction
from itertools import combinations

from fvr import (
    Committee,
    Constant,
    Power,
    Table,
    empirical_fvr_committee,
    empirical_fvr_point,
    gen_approval_gap,
    gen_jr_hard,
    gen_party_split,
    gen_power_gap,
    gen_weight_gap,
    jr_check,
    multiwinner_bound,
    ropt_winner,
    winner,
)
from fvr.single_winner import closed_form_fvr

F = Fraction
HALF = F(1, 2)


def show(label, audit, bound):
    print(f"  {label:<34} audit {str(audit):>9} ~ {float(audit):.4f}   bound {str(bound):>6} ~ {float(bound):.4f}")


def single_winner_demos():
    print("single-winner gaps at threshold s = 1/2")

    inst, special = gen_approval_gap(1200, 200, HALF, F(133, 200))
    chosen = winner(inst, Constant())
    assert chosen == special
    show("approval rule, adversarial bloc", empirical_fvr_point(inst, chosen, HALF),
         closed_form_fvr(Constant(), HALF).value)
    show("optimal rule, same instance",
         empirical_fvr_point(inst, ropt_winner(inst), HALF), 1 - HALF)

    inst, special = gen_power_gap(400, 40, HALF, F(19, 40), 1)
    chosen = winner(inst, Power(1))
    assert chosen == special
    show("single-power rule, adversarial bloc", empirical_fvr_point(inst, chosen, HALF),
         closed_form_fvr(Power(1), HALF).value)

    table = Table({F(1, 4): 1, HALF: 1})
    inst, special = gen_weight_gap(table, F(1, 4), HALF, 200)
    chosen = winner(inst, table)
    assert chosen == special
    gap = (F(3, 4)) / (F(3, 4) + HALF)
    show("table weights {1/4:1, 1/2:1}", empirical_fvr_point(inst, chosen, HALF), gap)


def committee_demos():
    print("committee-level separations")

    k = 2
    inst = gen_party_split(k)
    bound_t1 = multiwinner_bound(2 * k, HALF, k, 1)
    slate = Committee(range(k))
    print(f"  party split, k={k}: a full slate is the only committee anyone {k}-approves")
    show(f"    slate at target t=1", empirical_fvr_committee(inst, slate, HALF, 1), bound_t1)
    mixed = Committee((0, k))
    bound_tk = multiwinner_bound(2 * k, HALF, k, k)
    show(f"    cross-party pick at target t={k}",
         empirical_fvr_committee(inst, mixed, HALF, k), bound_tk)

    m, k = 6, 2
    inst = gen_jr_hard(m, k)
    s = F(m - k, m)
    bound = multiwinner_bound(m, s, k, 1)
    passing = [W for W in combinations(range(m), k) if jr_check(inst, Committee(W)).satisfied]
    print(f"  representation clash, m={m}, k={k}: {len(passing)} committees pass the "
          f"large-cohesive-group check")
    worst = max(empirical_fvr_committee(inst, Committee(W), s, 1) for W in passing)
    show(f"    best case among them (s={s})", worst, bound)


if __name__ == "__main__":
    single_winner_demos()
    committee_demos()
