"""Leader-optimal solution of the objective-control model.

The optimum has a three-block structure: a set ``S1`` of leader items
priced just above unit efficiency and packed first (total weight ``W1``),
the greedy follower fill ``F(W1)``, and a set ``S2`` of leader items
packed into the residual ``c̄ = c - W1 - F(W1)`` at (near-)zero price.
The solver marks every pair of disjoint-subset sums ``(W1, W2)`` with a
two-axis reaching DP, then takes the best reachable ``W2 ≤ c̄`` over all
``W1``, in O(|L|·c²) overall.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .greedy import fill_table, simulate
from .model import (
    CapacityTooLargeError,
    DualWeight,
    Instance,
    InvalidDecompositionError,
    Model,
    ModelMismatchError,
    PackingOutcome,
    WeightAssignment,
    validate,
)

#: Reject instances whose reach table would exceed this many bits.
DEFAULT_TABLE_BITS = 2**33


@dataclass(frozen=True, slots=True)
class ReachTable:
    """Reachable disjoint-pair sums of the leader weights.

    ``reach[a, b]`` is 1 iff two disjoint leader subsets with sums ``a``
    and ``b`` exist; ``ann`` stores one first-writer predecessor per cell
    (±(item index + 1), sign giving the axis) from which a witness pair
    can be walked back.
    """

    capacity: int
    reach: np.ndarray
    ann: np.ndarray
    weights: tuple[int, ...]

    def reachable(self, w1: int, w2: int) -> bool:
        return bool(self.reach[w1, w2])

    def rows_reached(self) -> np.ndarray:
        return np.flatnonzero(self.reach.any(axis=1))

    def row_max_leq(self, w1: int, cap: int) -> int | None:
        if cap < 0:
            return None
        hits = np.flatnonzero(self.reach[w1, : cap + 1])
        return int(hits[-1]) if hits.size else None

    def witness(self, w1: int, w2: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """One pair of disjoint index sets summing to ``(w1, w2)``."""
        if not self.reachable(w1, w2):
            raise InvalidDecompositionError(f"pair ({w1}, {w2}) is not reachable")
        s1: list[int] = []
        s2: list[int] = []
        while (w1, w2) != (0, 0):
            a = int(self.ann[w1, w2])
            j = abs(a) - 1
            if a > 0:
                s1.append(j)
                w1 -= self.weights[j]
            else:
                s2.append(j)
                w2 -= self.weights[j]
        return tuple(sorted(s1)), tuple(sorted(s2))


def build_reach_table(
    weights: "tuple[int, ...] | list[int]",
    capacity: int,
    *,
    max_table_bits: int = DEFAULT_TABLE_BITS,
) -> ReachTable:
    if capacity * capacity > max_table_bits:
        raise CapacityTooLargeError(
            f"reach table needs {capacity}^2 bits, over the budget of "
            f"{max_table_bits}; raise max_table_bits to override"
        )
    reach, ann = _kernels.reach_pairs(list(weights), capacity)
    reach.setflags(write=False)
    ann.setflags(write=False)
    return ReachTable(capacity, reach, ann, tuple(weights))


@dataclass(frozen=True, slots=True)
class ObjectiveSolveResult:
    value: DualWeight
    before_set: tuple[int, ...]
    follower_fill: int
    after_set: tuple[int, ...]
    residual: int
    assignment: WeightAssignment
    w1: int
    w2: int
    cell_updates: int


def reconstruct_objective(
    instance: Instance,
    w1: int,
    before_set: "tuple[int, ...] | list[int]",
    after_set: "tuple[int, ...] | list[int]",
    *,
    after_pricing: str = "auto",
) -> WeightAssignment:
    """Assignment realizing a three-block decomposition.

    Items in ``before_set`` get ``w + ε`` (efficiency just above 1), items
    outside both sets get 0.  ``after_set`` items get 0 when a replay
    check confirms greedy still packs exactly that set (``after_pricing=
    "auto"``, the default, keeping the ε cost at ``-|S1|``), and ``ε``
    otherwise; ``"zero"`` and ``"epsilon"`` force either choice.
    """
    validate(instance)
    n = len(instance.leader_weights)
    s1, s2 = frozenset(before_set), frozenset(after_set)
    if not (s1 <= set(range(n)) and s2 <= set(range(n))):
        raise InvalidDecompositionError("index out of range for leader items")
    if s1 & s2:
        raise InvalidDecompositionError(f"sets overlap on {sorted(s1 & s2)}")
    if sum(instance.leader_weights[j] for j in s1) != w1:
        raise InvalidDecompositionError("before_set does not sum to w1")
    cbar = fill_table(instance).residual(w1) if w1 <= instance.capacity else -1
    w2 = sum(instance.leader_weights[j] for j in s2)
    if w2 > cbar:
        raise InvalidDecompositionError(
            f"after_set sums to {w2}, over the residual capacity {cbar}"
        )
    if after_pricing not in ("auto", "zero", "epsilon"):
        raise ValueError(f"unknown after_pricing {after_pricing!r}")

    def build(eps_after: bool) -> WeightAssignment:
        ws = []
        for j, w in enumerate(instance.leader_weights):
            if j in s1:
                ws.append(DualWeight(w, 1))
            elif j in s2 and eps_after:
                ws.append(DualWeight(0, 1))
            else:
                ws.append(DualWeight.ZERO)
        return WeightAssignment(tuple(ws))

    if after_pricing == "zero":
        return build(False)
    if after_pricing == "epsilon":
        return build(True)
    assignment = build(False)
    outcome = simulate(instance.with_model(Model.OBJECTIVE), assignment)
    if outcome.packed_leader_indices() == s1 | s2 and outcome.leader_payoff == DualWeight(
        w2, -len(s1)
    ):
        return assignment
    return build(True)


def _replayed(
    instance: Instance, w1: int, s1: tuple[int, ...], s2: tuple[int, ...]
) -> tuple[WeightAssignment, PackingOutcome]:
    assignment = reconstruct_objective(instance, w1, s1, s2)
    return assignment, simulate(instance, assignment)


def solve_objective(
    instance: Instance, *, max_table_bits: int = DEFAULT_TABLE_BITS
) -> ObjectiveSolveResult:
    """Optimal objective-control pricing via the two-axis reaching DP.

    Ties on the integer value prefer the larger ε coefficient of the exact
    replayed payoff, then the smaller ``W1``.  The emitted assignment is
    always replay-verified: simulating it reproduces ``value`` exactly.
    """
    validate(instance)
    if instance.model is not Model.OBJECTIVE:
        raise ModelMismatchError(
            f"solve_objective requires the objective model, got {instance.model.value!r}"
        )
    c = instance.capacity
    table = build_reach_table(instance.leader_weights, c, max_table_bits=max_table_bits)
    cell_updates = len(instance.leader_weights) * (c + 1) ** 2
    fills = fill_table(instance)

    best_base = 0
    tied: list[tuple[int, int]] = []
    for w1 in table.rows_reached():
        w1 = int(w1)
        cbar = fills.residual(w1)
        w2 = table.row_max_leq(w1, cbar)
        if w2 is None:
            continue
        if w2 > best_base:
            best_base = w2
            tied = [(w1, w2)]
        elif w2 == best_base:
            tied.append((w1, w2))

    if best_base == 0:
        # Abstaining is unbeatable: every contender also has value 0 and
        # costs at least as many ε.
        assignment = WeightAssignment.zeros(len(instance.leader_weights))
        outcome = simulate(instance, assignment)
        assert outcome.leader_payoff == DualWeight.ZERO
        return ObjectiveSolveResult(
            value=DualWeight.ZERO,
            before_set=(),
            follower_fill=fills[0],
            after_set=(),
            residual=fills.residual(0),
            assignment=assignment,
            w1=0,
            w2=0,
            cell_updates=cell_updates,
        )

    best: tuple[int, int, ObjectiveSolveResult] | None = None
    for w1, w2 in tied:
        s1, s2 = table.witness(w1, w2)
        assignment, outcome = _replayed(instance, w1, s1, s2)
        value = outcome.leader_payoff
        assert value.base == best_base
        candidate = ObjectiveSolveResult(
            value=value,
            before_set=s1,
            follower_fill=fills[w1],
            after_set=s2,
            residual=fills.residual(w1),
            assignment=assignment,
            w1=w1,
            w2=w2,
            cell_updates=cell_updates,
        )
        key = (value.eps, -w1)
        if best is None or key > best[:2]:
            best = (*key, candidate)
    assert best is not None
    return best[2]
