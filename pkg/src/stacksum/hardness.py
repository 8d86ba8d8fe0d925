"""Partition-reduction gadget generators and an exact Partition decider.

Both game variants are NP-hard to approximate within any constant factor;
the reductions behind those facts double here as adversarial fixture
generators with known optima.  Family 2 produces objective-control
instances whose optimum is ``M`` exactly when the source Partition
instance is a YES instance (and at most ``b - 1`` otherwise); family 4
produces constraint-control instances with optimum ``scale - 1`` on YES
and 0 on NO.

The family-4 construction uses an infinitesimally light leader item, which
cannot exist at unit granularity, so the generator scales the whole gadget
by ``scale`` and realizes that item as weight ``scale + 1``.  Because the
discrimination argument is delicate (it depends on which residuals greedy
fills exactly), every emitted gadget small enough for the oracle is
verified exhaustively at generation time and the generator refuses to
emit on mismatch; larger gadgets carry ``verified: false`` in their
provenance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .model import (
    GadgetVerificationError,
    Instance,
    InstanceFormatError,
    Model,
    MTooSmallError,
    OddTotalSumError,
    OracleLimitError,
    ScaleTooSmallError,
    ZeroOrNegativeWeightError,
    instance_to_dict,
)
from .oracle import oracle_constraint, oracle_objective, subset_witness_leq

#: Partition decisions use a reaching DP; refuse above this many numbers.
PARTITION_LIMIT = 24

#: Largest gadget the generators verify exhaustively before emitting.
SELF_CHECK_LIMIT = 8


@dataclass(frozen=True, slots=True)
class PartitionInstance:
    """A Partition question: can ``numbers`` be split into two equal halves?

    ``yes_certificate`` optionally carries index positions of a known
    half-sum subset; when present it is validated against ``half_sum``.
    """

    numbers: tuple[int, ...]
    yes_certificate: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "numbers", tuple(self.numbers))
        for i, a in enumerate(self.numbers):
            if not isinstance(a, int) or isinstance(a, bool) or a < 1:
                raise ZeroOrNegativeWeightError(
                    f"numbers[{i}] must be a positive integer, got {a!r}",
                    field=f"numbers[{i}]",
                )
        if self.yes_certificate is not None:
            object.__setattr__(self, "yes_certificate", tuple(self.yes_certificate))
            got = sum(self.numbers[i] for i in self.yes_certificate)
            if got != self.half_sum:
                raise InstanceFormatError(
                    f"yes_certificate sums to {got}, not the half sum "
                    f"{self.half_sum}"
                )

    @property
    def total(self) -> int:
        return sum(self.numbers)

    @property
    def half_sum(self) -> int:
        if self.total % 2:
            raise OddTotalSumError(
                f"total sum {self.total} is odd; no equal split exists"
            )
        return self.total // 2


@dataclass(frozen=True, slots=True)
class PartitionAnswer:
    is_yes: bool
    certificate: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.is_yes


def decide_partition(p: PartitionInstance, *, limit: int = PARTITION_LIMIT) -> PartitionAnswer:
    """Exact decision with a certificate subset on YES."""
    if len(p.numbers) > limit:
        raise OracleLimitError(
            f"{len(p.numbers)} numbers exceed the decision limit of {limit}"
        )
    b = p.half_sum
    bits = 1
    mask = (1 << (b + 1)) - 1
    for a in p.numbers:
        if a <= b:
            bits |= (bits << a) & mask
    if not bits >> b & 1:
        return PartitionAnswer(False, None)
    return PartitionAnswer(True, subset_witness_leq(p.numbers, b))


@dataclass(frozen=True, slots=True)
class GadgetBundle:
    instance: Instance
    provenance: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        data = instance_to_dict(self.instance)
        data["provenance"] = self.provenance
        return data


def default_m(p: PartitionInstance) -> int:
    """Comfortably dominates any constant-ratio gap: ``10·b + 1``."""
    return 10 * p.half_sum + 1


def gen_objective_gadget(p: PartitionInstance, m_value: int | None = None) -> GadgetBundle:
    """Objective-control gadget: optimum ``M`` iff the Partition answer is YES.

    Leader items are the Partition numbers plus one heavy item ``M``; the
    follower owns a single blocker of weight ``M + 1``; capacity ``M + b``.
    """
    b = p.half_sum
    if m_value is None:
        m_value = default_m(p)
    if m_value <= 2 * b:
        raise MTooSmallError(f"M must exceed 2*b = {2 * b}, got {m_value}")
    instance = Instance(
        capacity=m_value + b,
        leader_weights=(*p.numbers, m_value),
        follower_weights=(m_value + 1,),
        model=Model.OBJECTIVE,
    )
    answer = (
        decide_partition(p) if len(p.numbers) <= PARTITION_LIMIT else None
    )
    provenance: dict[str, Any] = {
        "theorem": 2,
        "parameters": {"M": m_value, "b": b, "m": len(p.numbers)},
        "partition_answer": None if answer is None else answer.is_yes,
        "predicted": {"yes_value": m_value, "no_upper_bound": b - 1},
        "verified": False,
    }
    if answer is not None and len(p.numbers) <= SELF_CHECK_LIMIT:
        got = oracle_objective(instance).value
        ok = got == m_value if answer.is_yes else got <= b - 1
        if not ok:
            raise GadgetVerificationError(
                f"objective gadget self-check failed: oracle={got}, "
                f"partition_answer={answer.is_yes}"
            )
        provenance["verified"] = True
    return GadgetBundle(instance, provenance)


def gen_constraint_gadget(p: PartitionInstance, scale: int = 2) -> GadgetBundle:
    """Constraint-control gadget: optimum ``scale - 1`` iff YES, else 0.

    Unscaled, the leader holds ``2aᵢ`` for each Partition number, an
    infinitesimally light item, and a filler ``2^k - 2b``; the follower
    holds the powers of two ``2..2^{k-1}`` plus a big item ``2^k + 2``;
    the capacity is ``2^{k+1}``.  Every integer quantity is even, and the
    big-item-then-binary greedy fill covers every even residual exactly,
    except a unique gap of 2 at residual ``2^k`` — reachable by the leader
    iff some subset of the ``2aᵢ`` plus the filler sums to ``2^k``, i.e.
    iff the Partition answer is YES.

    The emitted instance multiplies everything by ``scale`` and realizes
    the light item as weight ``scale + 1``, so harvesting the scaled gap
    of ``2·scale`` gains exactly ``scale - 1``.  Side paths that spend the
    light item ahead of the follower leave gaps of at most ``3·scale - 1``
    and pay off only when a spare ``2·scale`` item coexists with a subset
    summing to ``b - 1`` — which itself certifies a YES instance and again
    yields exactly ``scale - 1``.
    """
    if scale < 2:
        raise ScaleTooSmallError(f"scale must be >= 2, got {scale}")
    b = p.half_sum
    m = len(p.numbers)
    doubled = [2 * a for a in p.numbers]
    # k = smallest exponent with 2^k strictly above the doubled numbers'
    # total 4b; then no subset of them alone can reach 2^k.
    k = max(1, (4 * b).bit_length())
    big = 2**k
    unscaled_leader: list[Any] = [*doubled, "eps", big - 2 * b]
    unscaled_follower = [2**i for i in range(1, k)] + [big + 2]
    unscaled_capacity = 2 * big

    k_bound = math.ceil(math.log2(2 * m * max(p.numbers) + 2)) + 1 if m else 2
    assert k <= k_bound, f"gadget exponent {k} over the polynomial bound {k_bound}"

    instance = Instance(
        capacity=unscaled_capacity * scale,
        leader_weights=(
            *(w * scale for w in doubled),
            scale + 1,
            (big - 2 * b) * scale,
        ),
        follower_weights=tuple(w * scale for w in unscaled_follower),
        model=Model.CONSTRAINT,
    )
    answer = decide_partition(p) if m <= PARTITION_LIMIT else None
    provenance: dict[str, Any] = {
        "theorem": 4,
        "parameters": {"k": k, "scale": scale, "b": b, "m": m},
        "unscaled": {
            "leader": unscaled_leader,
            "follower": unscaled_follower,
            "capacity": unscaled_capacity,
        },
        "partition_answer": None if answer is None else answer.is_yes,
        "predicted": {"yes_value": scale - 1, "no_value": 0},
        "verified": False,
    }
    if answer is not None and m <= SELF_CHECK_LIMIT:
        got = oracle_constraint(instance).value
        want = scale - 1 if answer.is_yes else 0
        if got != want:
            raise GadgetVerificationError(
                f"constraint gadget self-check failed: oracle={got}, expected {want}"
            )
        provenance["verified"] = True
    return GadgetBundle(instance, provenance)


def parse_partition(text: str) -> PartitionInstance:
    """Parse ``{1,2,3}``/``1,2,3`` inline forms or a JSON numbers object."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}") and '"' not in text:
        text = text[1:-1]
    if text.startswith("{") or text.startswith("["):
        import json

        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("numbers")
        if not isinstance(data, list):
            raise InstanceFormatError("partition file must hold a numbers list")
        return PartitionInstance(tuple(data))
    try:
        numbers = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise InstanceFormatError(f"cannot parse partition numbers: {text!r}") from exc
    if not numbers:
        raise InstanceFormatError("no partition numbers given")
    return PartitionInstance(numbers)
