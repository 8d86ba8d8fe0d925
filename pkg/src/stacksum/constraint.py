"""Leader-optimal solution of the constraint-control model.

The optimum submits a set ``S1`` of leader items at efficiency just above
1 (weight ``w - ε``), lets greedy fill ``F(W1)``, then inflates one
remaining item ``w'`` to consume the residual ``c̄ = c - W1 - F(W1)``
exactly, gaining ``c̄ - w'``.  Every candidate ``w'`` needs the reachable
``W1`` sums of the other leader items:

* ``solve_constraint_naive`` reruns a fresh one-dimensional reaching DP
  per candidate — O(n²·c) cell updates;
* ``solve_constraint_batched`` splits the leader items into about √n
  phases, precomputes a frozen DP over everything outside the phase once,
  and extends a private copy per in-phase candidate — O(n^{3/2}·c).

Both report the same result and expose their deterministic cell-update
counts (one count of ``c+1`` per item pass, the scan work only).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .greedy import FillTable, fill_table, simulate
from .model import (
    ChosenItemTooLargeError,
    DualWeight,
    Instance,
    InvalidDecompositionError,
    Model,
    ModelMismatchError,
    WeightAssignment,
    validate,
)


@dataclass(frozen=True, slots=True)
class PhasePlan:
    """Partition of the leader indices into near-equal contiguous groups."""

    k: int
    groups: tuple[tuple[int, ...], ...]


def phase_plan(n_leader: int) -> PhasePlan:
    if n_leader == 0:
        return PhasePlan(1, ())
    k = min(n_leader, max(1, round(math.sqrt(n_leader))))
    base, extra = divmod(n_leader, k)
    groups = []
    start = 0
    for g in range(k):
        size = base + (1 if g < extra else 0)
        groups.append(tuple(range(start, start + size)))
        start += size
    return PhasePlan(k, tuple(groups))


@dataclass(frozen=True, slots=True)
class ConstraintSolveResult:
    value: DualWeight
    before_set: tuple[int, ...]
    chosen_item: int | None
    follower_fill: int
    residual: int
    assignment: WeightAssignment
    w1: int
    cell_updates: int


def reconstruct_constraint(
    instance: Instance,
    before_set: "tuple[int, ...] | list[int]",
    chosen_item: int,
    cbar: int,
) -> WeightAssignment:
    """Assignment realizing ``(S1, w')``: S1 at ``w - ε``, the chosen item
    inflated to exactly ``c̄``, everything else parked out of reach.

    Leftovers weighing at most ``c̄`` are parked at ``c̄ + 1`` (efficiency
    below 1, and they no longer fit once greedy reaches them); a heavier
    leftover at ``c̄ + 1`` would reach efficiency 1 or more and could be
    packed mid-scan, so those are parked at ``c + 1``, which never fits.
    """
    validate(instance)
    n = len(instance.leader_weights)
    s1 = frozenset(before_set)
    if not s1 <= set(range(n)) or chosen_item not in range(n) or chosen_item in s1:
        raise InvalidDecompositionError("bad before_set/chosen_item indices")
    w1 = sum(instance.leader_weights[j] for j in s1)
    if w1 > instance.capacity or fill_table(instance).residual(w1) != cbar:
        raise InvalidDecompositionError(
            f"residual capacity for W1={w1} does not match cbar={cbar}"
        )
    if instance.leader_weights[chosen_item] >= cbar:
        raise ChosenItemTooLargeError(
            f"chosen item weighs {instance.leader_weights[chosen_item]}, "
            f"residual capacity is only {cbar}"
        )
    ws = []
    for j, w in enumerate(instance.leader_weights):
        if j in s1:
            ws.append(DualWeight(w, -1))
        elif j == chosen_item:
            ws.append(DualWeight(cbar))
        elif w <= cbar:
            ws.append(DualWeight(cbar + 1))
        else:
            ws.append(DualWeight(instance.capacity + 1))
    return WeightAssignment(tuple(ws))


# One scanned candidate: maximize base, then the ε coefficient (fewest S1
# items), then prefer smaller w', smaller W1, smaller index.
_CandidateKey = tuple[int, int, int, int, int]


def _best_for_candidate(
    p: int, w_p: int, counts: np.ndarray, fills: FillTable
) -> _CandidateKey | None:
    c = fills.capacity
    w1s = np.flatnonzero(counts < _kernels.INF_COUNT)
    cbars = c - w1s - np.asarray(fills.fill)[w1s]
    ok = cbars > w_p
    if not ok.any():
        return None
    w1s, cbars = w1s[ok], cbars[ok]
    bases = cbars - w_p
    cards = counts[w1s]
    order = np.lexsort((w1s, cards, -bases))
    i = order[0]
    return (int(bases[i]), -int(cards[i]), -w_p, -int(w1s[i]), -p)


def _zero_result(instance: Instance, fills: FillTable, cell_updates: int):
    assignment = WeightAssignment.identity(instance)
    return ConstraintSolveResult(
        value=DualWeight.ZERO,
        before_set=(),
        chosen_item=None,
        follower_fill=fills[0],
        residual=fills.residual(0),
        assignment=assignment,
        w1=0,
        cell_updates=cell_updates,
    )


def _min_cardinality_witness(
    weights: tuple[int, ...], skip: int, target: int, cap: int
) -> tuple[int, ...]:
    """Minimum-cardinality subset of ``weights`` (sans index ``skip``)
    summing exactly to ``target``; canonical across solver variants."""
    items = [(j, w) for j, w in enumerate(weights) if j != skip]
    layers = [_kernels.new_min_counts(cap)]
    for _, w in items:
        layers.append(_kernels.extend_min_counts(layers[-1], [w]))
    assert layers[-1][target] < _kernels.INF_COUNT
    chosen: list[int] = []
    t = target
    for pos in range(len(items) - 1, -1, -1):
        if layers[pos][t] == layers[pos + 1][t]:
            continue
        j, w = items[pos]
        chosen.append(j)
        t -= w
    assert t == 0
    return tuple(sorted(chosen))


def _finish(
    instance: Instance,
    fills: FillTable,
    best: _CandidateKey | None,
    cell_updates: int,
) -> ConstraintSolveResult:
    if best is None:
        return _zero_result(instance, fills, cell_updates)
    base, neg_card, neg_w, neg_w1, neg_p = best
    p, w1 = -neg_p, -neg_w1
    cbar = fills.residual(w1)
    s1 = _min_cardinality_witness(instance.leader_weights, p, w1, instance.capacity)
    assert len(s1) == -neg_card
    assignment = reconstruct_constraint(instance, s1, p, cbar)
    outcome = simulate(instance, assignment)
    value = outcome.leader_payoff
    assert value == DualWeight(base, -len(s1))
    return ConstraintSolveResult(
        value=value,
        before_set=s1,
        chosen_item=p,
        follower_fill=fills[w1],
        residual=cbar,
        assignment=assignment,
        w1=w1,
        cell_updates=cell_updates,
    )


def _map_candidates(fn, args, threads: int):
    if threads <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, args))


def solve_constraint_naive(
    instance: Instance, *, threads: int = 1
) -> ConstraintSolveResult:
    """Per-candidate reaching DP over the remaining leader items."""
    validate(instance)
    if instance.model is not Model.CONSTRAINT:
        raise ModelMismatchError(
            f"solve_constraint_naive requires the constraint model, got "
            f"{instance.model.value!r}"
        )
    c = instance.capacity
    weights = instance.leader_weights
    fills = fill_table(instance)
    start = _kernels.new_min_counts(c)

    def scan(p: int) -> _CandidateKey | None:
        rest = [w for j, w in enumerate(weights) if j != p]
        counts = _kernels.extend_min_counts(start, rest)
        return _best_for_candidate(p, weights[p], counts, fills)

    results = _map_candidates(scan, range(len(weights)), threads)
    cell_updates = len(weights) * max(0, len(weights) - 1) * (c + 1)
    best = max((r for r in results if r is not None), default=None)
    return _finish(instance, fills, best, cell_updates)


def solve_constraint_batched(
    instance: Instance, *, threads: int = 1
) -> ConstraintSolveResult:
    """Phase-batched scan: same result as the naive solver, fewer updates."""
    validate(instance)
    if instance.model is not Model.CONSTRAINT:
        raise ModelMismatchError(
            f"solve_constraint_batched requires the constraint model, got "
            f"{instance.model.value!r}"
        )
    c = instance.capacity
    weights = instance.leader_weights
    fills = fill_table(instance)
    plan = phase_plan(len(weights))
    start = _kernels.new_min_counts(c)

    cell_updates = 0
    best: _CandidateKey | None = None
    for group in plan.groups:
        in_group = set(group)
        outside = [w for j, w in enumerate(weights) if j not in in_group]
        frozen = _kernels.extend_min_counts(start, outside)
        cell_updates += len(outside) * (c + 1)

        def scan(p: int) -> _CandidateKey | None:
            rest = [weights[j] for j in group if j != p]
            counts = _kernels.extend_min_counts(frozen, rest)
            return _best_for_candidate(p, weights[p], counts, fills)

        results = _map_candidates(scan, group, threads)
        cell_updates += len(group) * (len(group) - 1) * (c + 1)
        for r in results:
            if r is not None and (best is None or r > best):
                best = r
    return _finish(instance, fills, best, cell_updates)
