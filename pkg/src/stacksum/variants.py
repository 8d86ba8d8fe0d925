"""Closed-form solvers: the simple constraint-pricing variant and the
three fractional-follower (LP relaxation) cases.

All run in O(n).  Each result carries a branch tag naming which formula
case applied, and the LP constraint-control case is parametric: the true
optimum is a limit, so the result reports the limit value together with a
concrete large multiplier ``M`` and the gain that finite ``M`` achieves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .greedy import EfficiencyKey, simulate
from .model import (
    DualWeight,
    FOLLOWER,
    Instance,
    ItemRef,
    LEADER,
    Model,
    ModelMismatchError,
    WeightAssignment,
    validate,
)

LP_MODELS = (Model.LP_OBJECTIVE, Model.LP_CONSTRAINT, Model.LP_CONSTRAINT_SIMPLE)


@dataclass(frozen=True, slots=True)
class ClosedFormResult:
    value: DualWeight
    assignment: WeightAssignment
    branch: str
    detail: dict[str, Any] = field(default_factory=dict)


def solve_constraint_simple(instance: Instance) -> ClosedFormResult:
    """Simple variant (leader maximizes ``Σ w̃`` over packed items).

    Walk the leader items in input order at ``w - ε`` while they fit; the
    first item that does not fit is shrunk to exactly the remaining
    capacity, and everything later is parked out of reach at ``c + 1``.
    The value is ``min(c, Σ_L w)`` with an ε loss per discounted item.
    """
    validate(instance)
    if instance.model is not Model.CONSTRAINT_SIMPLE:
        raise ModelMismatchError(
            f"solve_constraint_simple requires the constraint-simple model, got "
            f"{instance.model.value!r}"
        )
    c = instance.capacity
    ops = 0
    ws: list[DualWeight] = []
    remaining = c
    discounted = 0
    for w in instance.leader_weights:
        ops += 1
        if w <= remaining:
            ws.append(DualWeight(w, -1))
            remaining -= w
            discounted += 1
        elif remaining > 0:
            ws.append(DualWeight(remaining))
            remaining = 0
        else:
            # Zero capacity left: a zero constraint weight is undefined,
            # so park the item out of reach instead.
            ws.append(DualWeight(c + 1))
    total = sum(instance.leader_weights)
    branch = "weight-limited" if total <= c else "capacity-limited"
    value = DualWeight(min(c, total), -discounted)
    return ClosedFormResult(
        value=value,
        assignment=WeightAssignment(tuple(ws)),
        branch=branch,
        detail={"operations": ops},
    )


def solve_lp(instance: Instance) -> ClosedFormResult:
    """Closed forms for the fractional-follower models."""
    validate(instance)
    if instance.model not in LP_MODELS:
        raise ModelMismatchError(
            f"solve_lp handles the lp-* models only, got {instance.model.value!r}"
        )
    c = instance.capacity
    leader = instance.leader_weights
    total_f = sum(instance.follower_weights)
    total_l = sum(leader)
    ops = len(leader) + len(instance.follower_weights)

    if instance.model is Model.LP_OBJECTIVE:
        residual = max(0, c - total_f)
        value = min(residual, total_l)
        if residual == 0:
            branch = "follower-saturated"
        elif value < residual:
            branch = "residual-gain-leader-capped"
        else:
            branch = "residual-gain"
        return ClosedFormResult(
            value=DualWeight(value),
            assignment=WeightAssignment.zeros(len(leader)),
            branch=branch,
            detail={"operations": ops},
        )

    if instance.model is Model.LP_CONSTRAINT:
        if total_f >= c or not leader:
            return ClosedFormResult(
                value=DualWeight.ZERO,
                assignment=WeightAssignment.identity(instance),
                branch="follower-saturated" if leader else "no-leader-items",
                detail={"operations": ops},
            )
        limit = c - total_f
        big_m = c * 10**6
        chosen = min(range(len(leader)), key=lambda j: (leader[j], j))
        ws = tuple(
            DualWeight(big_m) if j == chosen else DualWeight(big_m * w + 1)
            for j, w in enumerate(leader)
        )
        achieved = Fraction((big_m - leader[chosen]) * limit, big_m)
        return ClosedFormResult(
            value=DualWeight(limit),
            assignment=WeightAssignment(ws),
            branch="residual-gain-limit",
            detail={
                "operations": ops,
                "witness_m": big_m,
                "chosen_item": chosen,
                "achieved_gain": str(achieved),
                "achieved_gain_float": float(achieved),
            },
        )

    # LP_CONSTRAINT_SIMPLE: the fractional last item needs no special
    # weight, so the limit is min(c, Σ_L w) with no ε cost.
    value = min(c, total_l)
    branch = "weight-limited" if total_l <= c else "capacity-limited"
    return ClosedFormResult(
        value=DualWeight(value),
        assignment=WeightAssignment(tuple(DualWeight(w, -1) for w in leader)),
        branch=branch,
        detail={"operations": ops},
    )


def fractional_greedy_value(instance: Instance, assignment: WeightAssignment) -> Fraction:
    """Leader payoff when the follower packs fractionally by efficiency.

    Items are ordered by the same exact efficiency keys as the discrete
    simulator; packing arithmetic then runs on the integer parts, i.e. the
    result is the ε→0 limit of the leader payoff, as an exact fraction.
    Used as the independent check of the LP closed forms.
    """
    validate(instance)
    order = []
    for j, w in enumerate(instance.leader_weights):
        wt = assignment[j]
        if instance.model is Model.LP_OBJECTIVE:
            key = EfficiencyKey(wt, DualWeight(w))
        else:
            key = EfficiencyKey(DualWeight(w), wt)
        order.append((key, ItemRef(LEADER, j)))
    for i, w in enumerate(instance.follower_weights):
        dw = DualWeight(w)
        order.append((EfficiencyKey(dw, dw), ItemRef(FOLLOWER, i)))
    # Stable sort by efficiency only: within ties the take order cannot
    # change the totals of a fractional fill.
    order.sort(key=lambda kv: _SortAdapter(kv[0]))

    residual = Fraction(instance.capacity)
    payoff = Fraction(0)
    for _, ref in order:
        if residual <= 0:
            break
        if ref.side == FOLLOWER:
            weight = Fraction(instance.follower_weights[ref.index])
            take = min(Fraction(1), residual / weight) if weight else Fraction(0)
            residual -= take * weight
            continue
        w = instance.leader_weights[ref.index]
        wt = assignment[ref.index]
        con = Fraction(w) if instance.model is Model.LP_OBJECTIVE else Fraction(wt.base)
        if con == 0:
            take = Fraction(1)
        else:
            take = min(Fraction(1), residual / con)
        residual -= take * con
        if instance.model is Model.LP_OBJECTIVE:
            payoff += take * (w - wt.base)
        elif instance.model is Model.LP_CONSTRAINT:
            payoff += take * (wt.base - w)
        else:
            payoff += take * wt.base
    return payoff


class _SortAdapter:
    """Orders efficiency keys descending via their exact comparison."""

    __slots__ = ("key",)

    def __init__(self, key: EfficiencyKey):
        self.key = key

    def __lt__(self, other: "_SortAdapter") -> bool:
        return self.key.compare(other.key) > 0


def replay_constraint_simple(instance: Instance, result: ClosedFormResult) -> bool:
    """Discrete replay check for the simple variant's closed form."""
    outcome = simulate(instance.with_model(Model.CONSTRAINT_SIMPLE), result.assignment)
    return outcome.leader_payoff == result.value
