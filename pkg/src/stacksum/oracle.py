"""Exhaustive ground truth for both discrete models on small instances.

The leader's strategy space is enumerated at the structure level: every
subset ``S1`` submitted ahead of the follower items, combined with either
the best subset-sum packed after the fill (objective control) or every
choice of the inflated item ``w'`` (constraint control).  Values are the
ε-neglected optima; witnesses replay exactly through the reconstructions.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .greedy import fill_table
from .model import Instance, Model, ModelMismatchError, OracleLimitError, validate

#: Hard cap on |L| for the exponential enumeration.
DEFAULT_LEADER_LIMIT = 16

#: Above this capacity the inner subset-sum switches from the reaching DP
#: to meet-in-the-middle enumeration.
DP_CAPACITY_THRESHOLD = 10_000


@dataclass(frozen=True, slots=True)
class OracleResult:
    value: int
    witness: tuple
    enumerated_count: int
    structure_ok: bool | None = None


def max_subset_sum_leq(
    weights: "tuple[int, ...] | list[int]",
    cap: int,
    *,
    dp_threshold: int = DP_CAPACITY_THRESHOLD,
) -> int:
    """Largest subset sum of ``weights`` not exceeding ``cap``."""
    if cap <= 0 or not weights:
        return 0
    if cap <= dp_threshold:
        mask = (1 << (cap + 1)) - 1
        bits = 1
        for w in weights:
            if w <= cap:
                bits |= (bits << w) & mask
        return bits.bit_length() - 1
    return _mim_best(weights, cap)


def _mim_best(weights, cap: int) -> int:
    half = len(weights) // 2
    left = _all_sums(weights[:half], cap)
    right = _all_sums(weights[half:], cap)
    right_sorted = sorted(set(right))
    best = 0
    for s in left:
        i = bisect.bisect_right(right_sorted, cap - s)
        if i:
            best = max(best, s + right_sorted[i - 1])
    return best


def _all_sums(weights, cap: int) -> list[int]:
    sums = [0]
    for w in weights:
        sums += [s + w for s in sums if s + w <= cap]
    return sums


def subset_witness_leq(
    weights: "tuple[int, ...] | list[int]", target: int
) -> tuple[int, ...]:
    """Indices of one subset summing exactly to ``target`` (skip-preferring
    backward walk over the per-item reachability layers)."""
    layers = [1]
    bits = 1
    mask = (1 << (target + 1)) - 1
    for w in weights:
        if w <= target:
            bits |= (bits << w) & mask
        layers.append(bits)
    assert bits >> target & 1
    chosen = []
    t = target
    for pos in range(len(weights) - 1, -1, -1):
        if layers[pos] >> t & 1:
            continue
        chosen.append(pos)
        t -= weights[pos]
    assert t == 0
    return tuple(sorted(chosen))


def _mask_sums(weights) -> list[int]:
    sums = [0] * (1 << len(weights))
    for j, w in enumerate(weights):
        bit = 1 << j
        for m in range(bit):
            sums[bit | m] = sums[m] + w
    return sums


def oracle_objective(
    instance: Instance,
    *,
    limit: int = DEFAULT_LEADER_LIMIT,
    dp_threshold: int = DP_CAPACITY_THRESHOLD,
) -> OracleResult:
    """Exhaustive optimum of the objective-control model.

    The witness is ``(S1, S2)`` as sorted leader index tuples, taken from
    the first strategy (in ascending S1-bitmask order) attaining the
    optimum.
    """
    validate(instance)
    if instance.model is not Model.OBJECTIVE:
        raise ModelMismatchError(
            f"oracle_objective requires the objective model, got {instance.model.value!r}"
        )
    weights = instance.leader_weights
    n = len(weights)
    if n > limit:
        raise OracleLimitError(f"|L| = {n} exceeds the oracle limit of {limit}")
    fills = fill_table(instance)
    sums = _mask_sums(weights)
    c = instance.capacity

    best = 0
    best_mask = 0
    best_cbar = 0
    enumerated = 0
    for mask in range(1 << n):
        w1 = sums[mask]
        if w1 > c:
            continue
        enumerated += 1
        cbar = fills.residual(w1)
        rest = [weights[j] for j in range(n) if not mask >> j & 1]
        w2 = max_subset_sum_leq(rest, cbar, dp_threshold=dp_threshold)
        if w2 > best:
            best, best_mask, best_cbar = w2, mask, cbar
    s1 = tuple(j for j in range(n) if best_mask >> j & 1)
    rest_idx = [j for j in range(n) if not best_mask >> j & 1]
    s2 = tuple(
        rest_idx[p]
        for p in subset_witness_leq([weights[j] for j in rest_idx], best)
    )
    return OracleResult(value=best, witness=(s1, s2), enumerated_count=enumerated)


def oracle_constraint(
    instance: Instance, *, limit: int = DEFAULT_LEADER_LIMIT
) -> OracleResult:
    """Exhaustive optimum of the constraint-control model.

    Enumerates every ``(S1, w')`` pair rather than only the smallest
    remaining item, and reports in ``structure_ok`` whether the optimum is
    also attained with ``w'`` the minimum-weight remaining item that fits
    strictly under the residual capacity.
    """
    validate(instance)
    if instance.model is not Model.CONSTRAINT:
        raise ModelMismatchError(
            f"oracle_constraint requires the constraint model, got "
            f"{instance.model.value!r}"
        )
    weights = instance.leader_weights
    n = len(weights)
    if n > limit:
        raise OracleLimitError(f"|L| = {n} exceeds the oracle limit of {limit}")
    fills = fill_table(instance)
    sums = _mask_sums(weights)
    c = instance.capacity

    best = 0
    best_witness: tuple = ((), None)
    best_by_min_rule = 0
    enumerated = 0
    for mask in range(1 << n):
        w1 = sums[mask]
        if w1 > c:
            continue
        cbar = fills.residual(w1)
        min_eligible: int | None = None
        for p in range(n):
            if mask >> p & 1:
                continue
            enumerated += 1
            w = weights[p]
            if w >= cbar:
                continue
            if cbar - w > best:
                best = cbar - w
                best_witness = (
                    tuple(j for j in range(n) if mask >> j & 1),
                    p,
                )
            if min_eligible is None or w < weights[min_eligible]:
                min_eligible = p
        if min_eligible is not None:
            best_by_min_rule = max(best_by_min_rule, cbar - weights[min_eligible])
    return OracleResult(
        value=best,
        witness=best_witness,
        enumerated_count=enumerated,
        structure_ok=(best_by_min_rule == best),
    )
