"""Exact simulation of the follower's greedy strategy.

The follower sorts all items by non-increasing efficiency and packs each
visited item iff its constraint-side weight fits the residual capacity.
Efficiencies are compared exactly by cross-multiplication of dual-weight
fractions; in both game variants at least one factor on each side of every
product is ε-free, so dropping the ε² term loses nothing.

Tie-break hierarchy (first difference wins):

1. efficiency, non-increasing;
2. objective-side weight, decreasing;
3. follower items before leader items;
4. lower index first.

Levels 3 and 4 are conventions for determinism; solver reconstructions
separate efficiencies strictly via ε and never rely on them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import (
    FOLLOWER,
    LEADER,
    DualWeight,
    Instance,
    ItemRef,
    MissingAssignmentError,
    Model,
    ModelMismatchError,
    PackingOutcome,
    TraceStep,
    WeightAssignment,
    ZeroConstraintWeightError,
    dual_compare,
    validate,
)

SIMULATABLE_MODELS = (Model.OBJECTIVE, Model.CONSTRAINT, Model.CONSTRAINT_SIMPLE)


@dataclass(frozen=True, slots=True, eq=False)
class EfficiencyKey:
    """An item's efficiency as the exact fraction ``numerator/denominator``.

    Equality is by value (cross-multiplication), so distinct field pairs
    can compare equal; instances are deliberately unhashable.
    """

    numerator: DualWeight
    denominator: DualWeight

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not DualWeight.ZERO < self.denominator:
            raise ZeroConstraintWeightError(
                f"efficiency denominator must be positive, got {self.denominator}"
            )

    def compare(self, other: "EfficiencyKey") -> int:
        return dual_compare(
            self.numerator * other.denominator, other.numerator * self.denominator
        )

    def __lt__(self, other: "EfficiencyKey") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "EfficiencyKey") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "EfficiencyKey") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "EfficiencyKey") -> bool:
        return self.compare(other) >= 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EfficiencyKey):
            return NotImplemented
        return self.compare(other) == 0


@dataclass(frozen=True, slots=True)
class _Visit:
    ref: ItemRef
    efficiency: EfficiencyKey
    objective_weight: DualWeight
    constraint_weight: DualWeight
    original_weight: int


def _visit_order(a: _Visit, b: _Visit) -> int:
    c = a.efficiency.compare(b.efficiency)
    if c:
        return -c
    c = dual_compare(a.objective_weight, b.objective_weight)
    if c:
        return -c
    if a.ref.side != b.ref.side:
        return -1 if a.ref.side == FOLLOWER else 1
    return a.ref.index - b.ref.index


def _leader_visit(model: Model, j: int, w: int, assigned: DualWeight) -> _Visit:
    ref = ItemRef(LEADER, j)
    original = DualWeight(w)
    if model is Model.OBJECTIVE:
        return _Visit(ref, EfficiencyKey(assigned, original), assigned, original, w)
    if assigned == DualWeight.ZERO:
        raise ZeroConstraintWeightError(
            f"leader item {j} has constraint weight 0; efficiency is undefined"
        )
    return _Visit(ref, EfficiencyKey(original, assigned), original, assigned, w)


def simulate(instance: Instance, assignment: WeightAssignment) -> PackingOutcome:
    """Replay greedy exactly under ``assignment``; pure and deterministic.

    The leader payoff depends on the model: ``Σ (w - w̃)`` over packed
    leader items for objective control, ``Σ (w̃ - w)`` for constraint
    control, and ``Σ w̃`` for the simple constraint variant.
    """
    validate(instance)
    if instance.model not in SIMULATABLE_MODELS:
        raise ModelMismatchError(
            f"cannot replay greedy for model {instance.model.value!r}"
        )
    if len(assignment) != len(instance.leader_weights):
        raise MissingAssignmentError(
            f"assignment covers {len(assignment)} of "
            f"{len(instance.leader_weights)} leader items"
        )

    visits = [
        _leader_visit(instance.model, j, w, assignment[j])
        for j, w in enumerate(instance.leader_weights)
    ]
    for i, w in enumerate(instance.follower_weights):
        dw = DualWeight(w)
        visits.append(_Visit(ItemRef(FOLLOWER, i), EfficiencyKey(dw, dw), dw, dw, w))
    visits.sort(key=functools.cmp_to_key(_visit_order))

    residual = DualWeight(instance.capacity)
    packed: list[ItemRef] = []
    trace: list[TraceStep] = []
    payoff = DualWeight.ZERO
    for rank, v in enumerate(visits):
        fits = v.constraint_weight <= residual
        if fits:
            residual = residual - v.constraint_weight
            packed.append(v.ref)
            if v.ref.side == LEADER:
                j = v.ref.index
                w, wt = DualWeight(instance.leader_weights[j]), assignment[j]
                if instance.model is Model.OBJECTIVE:
                    payoff = payoff + (w - wt)
                elif instance.model is Model.CONSTRAINT:
                    payoff = payoff + (wt - w)
                else:
                    payoff = payoff + wt
        trace.append(TraceStep(v.ref, rank, fits, residual))
    return PackingOutcome(frozenset(packed), tuple(trace), payoff)


@dataclass(frozen=True, slots=True)
class FillTable:
    """Greedy follower fill ``F(W1)`` for every leader prefix weight ``W1``.

    ``fill[w1]`` is the total follower weight packed into the residual
    capacity ``c - w1`` when the follower items are scanned alone in
    decreasing weight order.
    """

    capacity: int
    fill: np.ndarray

    def __getitem__(self, w1: int) -> int:
        return int(self.fill[w1])

    def residual(self, w1: int) -> int:
        return self.capacity - w1 - int(self.fill[w1])


def fill_table(instance: Instance) -> FillTable:
    """Compute ``F(W1)`` for all ``W1`` in one pass; runs in O(|F|·c)."""
    validate(instance)
    c = instance.capacity
    desc = sorted(instance.follower_weights, reverse=True)
    by_capacity = _kernels.fill_for_capacity(desc, c)
    fill = by_capacity[::-1].copy()
    fill.setflags(write=False)
    return FillTable(c, fill)
