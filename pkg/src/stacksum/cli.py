"""Command-line front end: solve, verify, generate, bench.

All commands emit schema-stable JSON (field names are pinned by
``docs/solve_report_schema.json``).  Exit codes: 0 success, 1 failed
verify claim, 2 parse/validation error, 3 incompatible algorithm/model,
4 oracle size limit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Any, Sequence

from .constraint import solve_constraint_batched, solve_constraint_naive
from .greedy import SIMULATABLE_MODELS, simulate
from .hardness import (
    gen_constraint_gadget,
    gen_objective_gadget,
    parse_partition,
)
from .model import (
    DualWeight,
    Instance,
    InstanceFormatError,
    InvalidInstanceError,
    MissingAssignmentError,
    Model,
    ModelMismatchError,
    OracleLimitError,
    StacksumError,
    WeightAssignment,
    instance_to_dict,
    parse_assignment,
    parse_instance,
)
from .objective import reconstruct_objective, solve_objective
from .oracle import oracle_constraint, oracle_objective
from .variants import LP_MODELS, solve_constraint_simple, solve_lp

EXIT_OK = 0
EXIT_CLAIM_MISMATCH = 1
EXIT_INPUT_ERROR = 2
EXIT_INCOMPATIBLE = 3
EXIT_ORACLE_LIMIT = 4

_DEFAULT_ALGORITHM = {
    Model.OBJECTIVE: "dp",
    Model.CONSTRAINT: "dp",
    Model.CONSTRAINT_SIMPLE: "closed-form",
    Model.LP_OBJECTIVE: "closed-form",
    Model.LP_CONSTRAINT: "closed-form",
    Model.LP_CONSTRAINT_SIMPLE: "closed-form",
}

_COMPATIBLE = {
    Model.OBJECTIVE: {"dp", "oracle"},
    Model.CONSTRAINT: {"dp", "dp-batched", "oracle"},
    Model.CONSTRAINT_SIMPLE: {"closed-form"},
    Model.LP_OBJECTIVE: {"closed-form"},
    Model.LP_CONSTRAINT: {"closed-form"},
    Model.LP_CONSTRAINT_SIMPLE: {"closed-form"},
}


class _CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliFailure(EXIT_INPUT_ERROR, f"cannot read {path}: {exc}") from exc


def _load_instance(path: str, model_override: str | None) -> Instance:
    instance = parse_instance(_read_file(path))
    if model_override is not None:
        instance = instance.with_model(Model(model_override))
    return instance


def _emit(data: dict[str, Any], out=sys.stdout) -> None:
    json.dump(data, out, indent=2)
    out.write("\n")


def _structure_dict(instance: Instance, **kw: Any) -> dict[str, Any]:
    def weights_of(indices):
        if indices is None:
            return None
        return [instance.leader_weights[j] for j in indices]

    before = kw.get("before_set")
    after = kw.get("after_set")
    chosen = kw.get("chosen_item")
    return {
        "before_set": list(before) if before is not None else None,
        "before_weights": weights_of(before),
        "after_set": list(after) if after is not None else None,
        "after_weights": weights_of(after),
        "chosen_item": chosen,
        "chosen_weight": (
            instance.leader_weights[chosen] if chosen is not None else None
        ),
        "follower_packed": kw.get("follower_packed"),
        "follower_fill": kw.get("follower_fill"),
        "residual": kw.get("residual"),
    }


def _report(
    instance: Instance,
    algorithm: str,
    value: DualWeight,
    structure: dict[str, Any],
    assignment: WeightAssignment,
    elapsed: float,
    cell_updates: int,
    extra: dict[str, Any] | None = None,
) -> dict[str, Any]:
    replay_model = instance.model
    if replay_model in LP_MODELS:
        confirmed = None
    else:
        outcome = simulate(instance, assignment)
        confirmed = outcome.leader_payoff == value
    report = {
        "input": instance_to_dict(instance),
        "model": instance.model.value,
        "algorithm": algorithm,
        "value": value.to_dict(),
        "structure": structure,
        "assignment": assignment.to_list(),
        "replay_confirmed": confirmed,
        "timing_seconds": elapsed,
        "cell_updates": cell_updates,
    }
    if extra:
        report.update(extra)
    return report


def _follower_packed(instance: Instance, assignment: WeightAssignment) -> list[int]:
    if instance.model not in SIMULATABLE_MODELS:
        return []
    outcome = simulate(instance, assignment)
    return sorted(outcome.packed_follower_indices())


def cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_instance(args.file, args.model)
    algorithm = args.algorithm or _DEFAULT_ALGORITHM[instance.model]
    if algorithm not in _COMPATIBLE[instance.model]:
        raise _CliFailure(
            EXIT_INCOMPATIBLE,
            f"algorithm {algorithm!r} is not compatible with model "
            f"{instance.model.value!r}",
        )
    started = time.perf_counter()

    if algorithm == "dp" and instance.model is Model.OBJECTIVE:
        res = solve_objective(instance)
        elapsed = time.perf_counter() - started
        structure = _structure_dict(
            instance,
            before_set=res.before_set,
            after_set=res.after_set,
            follower_packed=_follower_packed(instance, res.assignment),
            follower_fill=res.follower_fill,
            residual=res.residual,
        )
        report = _report(
            instance, algorithm, res.value, structure, res.assignment, elapsed,
            res.cell_updates,
        )
    elif algorithm in ("dp", "dp-batched"):
        solver = (
            solve_constraint_naive if algorithm == "dp" else solve_constraint_batched
        )
        res = solver(instance, threads=args.threads)
        elapsed = time.perf_counter() - started
        structure = _structure_dict(
            instance,
            before_set=res.before_set,
            chosen_item=res.chosen_item,
            follower_packed=_follower_packed(instance, res.assignment),
            follower_fill=res.follower_fill,
            residual=res.residual,
        )
        report = _report(
            instance, algorithm, res.value, structure, res.assignment, elapsed,
            res.cell_updates,
        )
    elif algorithm == "oracle":
        report = _solve_with_oracle(instance, started)
    else:
        report = _solve_closed_form(instance, started)
    _emit(report)
    return EXIT_OK


def _solve_with_oracle(instance: Instance, started: float) -> dict[str, Any]:
    from .constraint import reconstruct_constraint
    from .greedy import fill_table

    if instance.model is Model.OBJECTIVE:
        res = oracle_objective(instance)
        s1, s2 = res.witness
        w1 = sum(instance.leader_weights[j] for j in s1)
        assignment = reconstruct_objective(instance, w1, s1, s2)
        fills = fill_table(instance)
        structure = _structure_dict(
            instance,
            before_set=s1,
            after_set=s2,
            follower_packed=_follower_packed(instance, assignment),
            follower_fill=fills[w1],
            residual=fills.residual(w1),
        )
    else:
        res = oracle_constraint(instance)
        s1, chosen = res.witness
        fills = fill_table(instance)
        w1 = sum(instance.leader_weights[j] for j in s1)
        if res.value > 0:
            assignment = reconstruct_constraint(instance, s1, chosen, fills.residual(w1))
        else:
            s1, chosen, w1 = (), None, 0
            assignment = WeightAssignment.identity(instance)
        structure = _structure_dict(
            instance,
            before_set=s1,
            chosen_item=chosen,
            follower_packed=_follower_packed(instance, assignment),
            follower_fill=fills[w1],
            residual=fills.residual(w1),
        )
    outcome = simulate(instance, assignment)
    elapsed = time.perf_counter() - started
    return _report(
        instance,
        "oracle",
        outcome.leader_payoff,
        structure,
        assignment,
        elapsed,
        0,
        extra={"enumerated_strategies": res.enumerated_count},
    )


def _solve_closed_form(instance: Instance, started: float) -> dict[str, Any]:
    if instance.model is Model.CONSTRAINT_SIMPLE:
        res = solve_constraint_simple(instance)
    else:
        res = solve_lp(instance)
    elapsed = time.perf_counter() - started
    structure = _structure_dict(
        instance,
        follower_packed=_follower_packed(instance, res.assignment),
    )
    return _report(
        instance,
        "closed-form",
        res.value,
        structure,
        res.assignment,
        elapsed,
        0,
        extra={"branch": res.branch, "detail": res.detail},
    )


def cmd_verify(args: argparse.Namespace) -> int:
    instance = _load_instance(args.file, args.model)
    if instance.model not in SIMULATABLE_MODELS:
        raise _CliFailure(
            EXIT_INPUT_ERROR,
            f"model {instance.model.value!r} has no discrete greedy replay",
        )
    assignment = parse_assignment(_read_file(args.assignment), instance)
    outcome = simulate(instance, assignment)
    claim = None
    matched = None
    if args.claim is not None:
        try:
            base_s, eps_s = args.claim.split(",")
            claim = DualWeight(int(base_s), int(eps_s))
        except ValueError as exc:
            raise _CliFailure(
                EXIT_INPUT_ERROR, f"--claim must look like '5,-2', got {args.claim!r}"
            ) from exc
        matched = outcome.leader_payoff == claim
    _emit(
        {
            "model": instance.model.value,
            "trace": [
                {
                    "item": step.item.label,
                    "rank": step.rank,
                    "packed": step.packed,
                    "residual": step.residual_after.to_dict(),
                }
                for step in outcome.trace
            ],
            "packed": sorted(ref.label for ref in outcome.packed),
            "leader_payoff": outcome.leader_payoff.to_dict(),
            "claim": claim.to_dict() if claim is not None else None,
            "claim_matched": matched,
        }
    )
    if matched is False:
        return EXIT_CLAIM_MISMATCH
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    if (args.random is None) == (args.from_partition is None):
        raise _CliFailure(
            EXIT_INPUT_ERROR, "exactly one of --random or --from-partition is required"
        )
    if args.random is not None:
        if args.seed is None:
            raise _CliFailure(EXIT_INPUT_ERROR, "--seed is required with --random")
        n_l, n_f, w_max, cap = args.random
        if min(n_l, n_f) < 0 or w_max < 1 or cap < 1 or n_l + n_f < 1:
            raise _CliFailure(EXIT_INPUT_ERROR, "bad --random parameters")
        rng = random.Random(args.seed)
        instance = Instance(
            capacity=cap,
            leader_weights=tuple(rng.randint(1, w_max) for _ in range(n_l)),
            follower_weights=tuple(rng.randint(1, w_max) for _ in range(n_f)),
            model=Model(args.model or "objective"),
        )
        payload = instance_to_dict(instance)
    else:
        p = parse_partition(
            _read_file(args.from_partition)
            if _looks_like_path(args.from_partition)
            else args.from_partition
        )
        if args.theorem == 2:
            bundle = gen_objective_gadget(p, args.M)
        else:
            bundle = gen_constraint_gadget(p, args.scale)
        payload = bundle.to_dict()
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _looks_like_path(value: str) -> bool:
    import os

    return os.path.exists(value)


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError as exc:
        raise _CliFailure(EXIT_INPUT_ERROR, f"malformed --sizes {args.sizes!r}") from exc
    if not sizes or min(sizes) < 1:
        raise _CliFailure(EXIT_INPUT_ERROR, f"malformed --sizes {args.sizes!r}")
    rows = []
    for n in sizes:
        instance = bench_instance(n, args.capacity, args.seed, args.follower, args.wmax)
        naive = solve_constraint_naive(instance, threads=args.threads)
        batched = solve_constraint_batched(instance, threads=args.threads)
        if naive.value != batched.value:
            raise _CliFailure(
                EXIT_INPUT_ERROR,
                f"internal inconsistency at n={n}: naive and batched values differ",
            )
        rows.append(
            {
                "n": n,
                "value_base": naive.value.base,
                "naive_cell_updates": naive.cell_updates,
                "batched_cell_updates": batched.cell_updates,
                "ratio": (
                    naive.cell_updates / batched.cell_updates
                    if batched.cell_updates
                    else 1.0
                ),
            }
        )
    _emit(
        {
            "model": "constraint",
            "capacity": args.capacity,
            "seed": args.seed,
            "follower_items": args.follower,
            "max_weight": args.wmax,
            "rows": rows,
        }
    )
    return EXIT_OK


def bench_instance(
    n: int, capacity: int, seed: int, n_follower: int = 8, w_max: int = 50
) -> Instance:
    """Deterministic constraint-model instance for the DP-count benchmark."""
    rng = random.Random(f"{seed}:{n}")
    return Instance(
        capacity=capacity,
        leader_weights=tuple(rng.randint(1, w_max) for _ in range(n)),
        follower_weights=tuple(rng.randint(1, w_max) for _ in range(n_follower)),
        model=Model.CONSTRAINT,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacksum",
        description="Stackelberg subset-sum pricing: solve, verify, generate, bench.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    model_values = [m.value for m in Model]

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("file")
    p_solve.add_argument("--model", choices=model_values)
    p_solve.add_argument(
        "--algorithm", choices=["dp", "dp-batched", "oracle", "closed-form"]
    )
    p_solve.add_argument("--threads", type=int, default=1)
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="replay an assignment file")
    p_verify.add_argument("file")
    p_verify.add_argument("assignment")
    p_verify.add_argument("--model", choices=model_values)
    p_verify.add_argument("--claim", help="expected payoff as 'base,eps'")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("generate", help="write an instance file")
    p_gen.add_argument(
        "--random",
        nargs=4,
        type=int,
        metavar=("N_L", "N_F", "W_MAX", "C"),
        help="random instance with the given sizes",
    )
    p_gen.add_argument("--from-partition", help="partition numbers (inline or file)")
    p_gen.add_argument(
        "--theorem",
        type=int,
        choices=[2, 4],
        default=2,
        help="gadget family: 2 = objective-control, 4 = constraint-control",
    )
    p_gen.add_argument("--M", type=int, default=None, help="family-2 heavy weight")
    p_gen.add_argument("--scale", type=int, default=2, help="family-4 scale factor")
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--model", choices=model_values)
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_generate)

    p_bench = sub.add_parser("bench", help="naive vs batched DP cell-update counts")
    p_bench.add_argument("--model", choices=["constraint"], default="constraint")
    p_bench.add_argument("--sizes", required=True, help="comma-separated leader sizes")
    p_bench.add_argument("--capacity", type=int, required=True)
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument("--follower", type=int, default=8)
    p_bench.add_argument("--wmax", type=int, default=50)
    p_bench.add_argument("--threads", type=int, default=1)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_LIMIT
    except ModelMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except (
        InstanceFormatError,
        InvalidInstanceError,
        MissingAssignmentError,
        StacksumError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
