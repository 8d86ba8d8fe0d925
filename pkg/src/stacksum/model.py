"""Core data types: instances, the exact dual-weight number system, and the
instance/assignment file formats.

Every quantity of the form ``w ± ε`` is represented exactly as a
:class:`DualWeight` ``base + eps·ε`` with ``ε`` an unnamed positive
infinitesimal; the order is lexicographic, so the sign of the ε term
decides ties that the integer parts cannot.  Reported "limit" values read
only the ``base`` component.

All types are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Any, ClassVar, Iterator, NamedTuple


# ---------------------------------------------------------------------------
# Errors


class StacksumError(Exception):
    """Base class for all library errors."""


class InvalidInstanceError(StacksumError):
    """An instance violates a structural invariant; ``field`` names the culprit."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ZeroCapacityError(InvalidInstanceError):
    pass


class ZeroOrNegativeWeightError(InvalidInstanceError):
    pass


class EmptyInstanceError(InvalidInstanceError):
    pass


class InstanceFormatError(StacksumError):
    """Malformed instance or assignment file."""


class MissingAssignmentError(StacksumError):
    pass


class ZeroConstraintWeightError(StacksumError):
    """Constraint-side weight of exactly zero: efficiency is undefined."""


class InvalidDecompositionError(StacksumError):
    pass


class ChosenItemTooLargeError(StacksumError):
    pass


class CapacityTooLargeError(StacksumError):
    pass


class ModelMismatchError(StacksumError):
    """Solver invoked on an instance whose model it does not handle."""


class OracleLimitError(StacksumError):
    """Instance too large for exhaustive enumeration."""


class OddTotalSumError(StacksumError):
    pass


class MTooSmallError(StacksumError):
    pass


class ScaleTooSmallError(StacksumError):
    pass


class GadgetVerificationError(StacksumError):
    """A generated gadget failed its exhaustive self-check."""


# ---------------------------------------------------------------------------
# Models and item identity


class Model(enum.Enum):
    """Which game variant an instance is posed in."""

    OBJECTIVE = "objective"
    CONSTRAINT = "constraint"
    CONSTRAINT_SIMPLE = "constraint-simple"
    LP_OBJECTIVE = "lp-objective"
    LP_CONSTRAINT = "lp-constraint"
    LP_CONSTRAINT_SIMPLE = "lp-constraint-simple"


LEADER = "L"
FOLLOWER = "F"


class ItemRef(NamedTuple):
    """Positional item identity: side ``L``/``F`` plus index within the side."""

    side: str
    index: int

    @property
    def label(self) -> str:
        return f"{self.side}{self.index}"

    @staticmethod
    def parse(label: str) -> "ItemRef":
        side, idx = label[:1], label[1:]
        if side not in (LEADER, FOLLOWER) or not idx.isdigit():
            raise InstanceFormatError(f"bad item label {label!r}")
        return ItemRef(side, int(idx))


# ---------------------------------------------------------------------------
# Dual weights


@dataclass(frozen=True, slots=True)
class DualWeight:
    """Exact number ``base + eps·ε`` with lexicographic total order.

    Addition and subtraction are componentwise; multiplying two dual
    weights drops the ε² term, which is exact in every comparison this
    library performs because at least one factor is always ε-free.
    """

    base: int
    eps: int = 0

    ZERO: ClassVar[DualWeight]

    def __add__(self, other: "DualWeight") -> "DualWeight":
        return DualWeight(self.base + other.base, self.eps + other.eps)

    def __sub__(self, other: "DualWeight") -> "DualWeight":
        return DualWeight(self.base - other.base, self.eps - other.eps)

    def __neg__(self) -> "DualWeight":
        return DualWeight(-self.base, -self.eps)

    def __mul__(self, other: "int | DualWeight") -> "DualWeight":
        if isinstance(other, int):
            return DualWeight(self.base * other, self.eps * other)
        if isinstance(other, DualWeight):
            return DualWeight(
                self.base * other.base, self.base * other.eps + self.eps * other.base
            )
        return NotImplemented

    def __rmul__(self, other: int) -> "DualWeight":
        return self.__mul__(other)

    def _key(self) -> tuple[int, int]:
        return (self.base, self.eps)

    def __lt__(self, other: "DualWeight") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "DualWeight") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "DualWeight") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "DualWeight") -> bool:
        return self._key() >= other._key()

    def is_nonnegative(self) -> bool:
        return self._key() >= (0, 0)

    def __str__(self) -> str:
        if self.eps == 0:
            return str(self.base)
        sign = "+" if self.eps > 0 else "-"
        mag = abs(self.eps)
        eps_part = "e" if mag == 1 else f"{mag}e"
        return f"{self.base}{sign}{eps_part}"

    def to_dict(self) -> dict[str, int]:
        return {"base": self.base, "eps_coeff": self.eps}

    @staticmethod
    def from_dict(data: Any, where: str = "weight") -> "DualWeight":
        if not isinstance(data, dict):
            raise InstanceFormatError(f"{where}: expected a base/eps_coeff pair")
        extra = set(data) - {"base", "eps_coeff"}
        if extra:
            raise InstanceFormatError(f"{where}: unknown field {sorted(extra)[0]!r}")
        try:
            base, eps = data["base"], data["eps_coeff"]
        except KeyError as exc:
            raise InstanceFormatError(f"{where}: missing field {exc.args[0]!r}") from exc
        if not _is_int(base) or not _is_int(eps):
            raise InstanceFormatError(f"{where}: base and eps_coeff must be integers")
        return DualWeight(base, eps)


DualWeight.ZERO = DualWeight(0, 0)


def dual_compare(a: DualWeight, b: DualWeight) -> int:
    """Lexicographic comparison: -1 for less, 0 for equal, +1 for greater."""
    ka, kb = a._key(), b._key()
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# Instances


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True, slots=True)
class Instance:
    """A pricing-game instance: capacity plus the two weight lists."""

    capacity: int
    leader_weights: tuple[int, ...]
    follower_weights: tuple[int, ...]
    model: Model

    def __post_init__(self) -> None:
        object.__setattr__(self, "leader_weights", tuple(self.leader_weights))
        object.__setattr__(self, "follower_weights", tuple(self.follower_weights))

    @property
    def n(self) -> int:
        return len(self.leader_weights) + len(self.follower_weights)

    def leader_refs(self) -> Iterator[ItemRef]:
        return (ItemRef(LEADER, j) for j in range(len(self.leader_weights)))

    def with_model(self, model: Model) -> "Instance":
        return Instance(self.capacity, self.leader_weights, self.follower_weights, model)


def validate(instance: Instance) -> Instance:
    """Check all structural invariants; returns the instance unchanged."""
    if not _is_int(instance.capacity):
        raise InvalidInstanceError("capacity must be an integer", field="capacity")
    if instance.capacity < 1:
        raise ZeroCapacityError(
            f"capacity must be >= 1, got {instance.capacity}", field="capacity"
        )
    if not instance.leader_weights and not instance.follower_weights:
        raise EmptyInstanceError(
            "leader and follower item lists are both empty", field="leader"
        )
    for name, weights in (
        ("leader", instance.leader_weights),
        ("follower", instance.follower_weights),
    ):
        for i, w in enumerate(weights):
            if not _is_int(w):
                raise InvalidInstanceError(
                    f"{name}[{i}] must be an integer", field=f"{name}[{i}]"
                )
            if w < 1:
                raise ZeroOrNegativeWeightError(
                    f"{name}[{i}] must be >= 1, got {w}", field=f"{name}[{i}]"
                )
    if not isinstance(instance.model, Model):
        raise InvalidInstanceError("model must be a Model value", field="model")
    return instance


# ---------------------------------------------------------------------------
# Assignments


@dataclass(frozen=True, slots=True)
class WeightAssignment:
    """The leader's revised weight per leader item, in leader order."""

    weights: tuple[DualWeight, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        for j, w in enumerate(self.weights):
            if not w.is_nonnegative():
                raise InvalidInstanceError(
                    f"assigned weight for leader item {j} is negative: {w}",
                    field=f"assignment[{j}]",
                )

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, j: int) -> DualWeight:
        return self.weights[j]

    def __iter__(self) -> Iterator[DualWeight]:
        return iter(self.weights)

    @staticmethod
    def identity(instance: Instance) -> "WeightAssignment":
        return WeightAssignment(tuple(DualWeight(w) for w in instance.leader_weights))

    @staticmethod
    def zeros(n: int) -> "WeightAssignment":
        return WeightAssignment((DualWeight.ZERO,) * n)

    def to_list(self) -> list[dict[str, int]]:
        return [w.to_dict() for w in self.weights]


# ---------------------------------------------------------------------------
# Packing outcomes


@dataclass(frozen=True, slots=True)
class TraceStep:
    """One greedy visit: the item, its visit rank, and the fit decision."""

    item: ItemRef
    rank: int
    packed: bool
    residual_after: DualWeight


@dataclass(frozen=True, slots=True)
class PackingOutcome:
    """Full greedy replay result under one assignment."""

    packed: frozenset[ItemRef]
    trace: tuple[TraceStep, ...]
    leader_payoff: DualWeight

    def packed_leader_indices(self) -> frozenset[int]:
        return frozenset(r.index for r in self.packed if r.side == LEADER)

    def packed_follower_indices(self) -> frozenset[int]:
        return frozenset(r.index for r in self.packed if r.side == FOLLOWER)


# ---------------------------------------------------------------------------
# File formats

_INSTANCE_FIELDS = {"model", "capacity", "leader", "follower"}


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    return {
        "model": instance.model.value,
        "capacity": instance.capacity,
        "leader": list(instance.leader_weights),
        "follower": list(instance.follower_weights),
    }


def instance_to_json(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def parse_instance(data: "str | bytes | dict[str, Any]") -> Instance:
    """Parse and validate an instance file.

    Accepts the documented four fields plus an optional ``provenance``
    object (emitted by the gadget generators and ignored here); any other
    field is rejected.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError("instance file must hold a JSON object")
    extra = set(data) - _INSTANCE_FIELDS - {"provenance"}
    if extra:
        raise InstanceFormatError(f"unknown field {sorted(extra)[0]!r}")
    missing = _INSTANCE_FIELDS - set(data)
    if missing:
        raise InstanceFormatError(f"missing field {sorted(missing)[0]!r}")
    try:
        model = Model(data["model"])
    except ValueError as exc:
        raise InstanceFormatError(
            f"model: unknown value {data['model']!r}; expected one of "
            f"{[m.value for m in Model]}"
        ) from exc
    capacity = data["capacity"]
    if not _is_int(capacity):
        raise InstanceFormatError("capacity: expected an integer")
    for name in ("leader", "follower"):
        if not isinstance(data[name], list) or not all(_is_int(w) for w in data[name]):
            raise InstanceFormatError(f"{name}: expected a list of integers")
    instance = Instance(capacity, tuple(data["leader"]), tuple(data["follower"]), model)
    return validate(instance)


def assignment_to_dict(assignment: WeightAssignment) -> dict[str, Any]:
    return {"weights": assignment.to_list()}


def assignment_to_json(assignment: WeightAssignment) -> str:
    return json.dumps(assignment_to_dict(assignment), indent=2) + "\n"


def parse_assignment(
    data: "str | bytes | dict[str, Any]", instance: Instance
) -> WeightAssignment:
    """Parse an assignment file; must cover every leader item exactly."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError("assignment file must hold a JSON object")
    extra = set(data) - {"weights"}
    if extra:
        raise InstanceFormatError(f"unknown field {sorted(extra)[0]!r}")
    if "weights" not in data or not isinstance(data["weights"], list):
        raise InstanceFormatError("missing or malformed field 'weights'")
    weights = tuple(
        DualWeight.from_dict(entry, where=f"weights[{i}]")
        for i, entry in enumerate(data["weights"])
    )
    if len(weights) != len(instance.leader_weights):
        raise MissingAssignmentError(
            f"assignment covers {len(weights)} leader items, instance has "
            f"{len(instance.leader_weights)}"
        )
    return WeightAssignment(weights)
