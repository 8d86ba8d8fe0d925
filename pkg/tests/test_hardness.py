import math
import random

import pytest

from stacksum import (
    Model,
    decide_partition,
    gen_constraint_gadget,
    gen_objective_gadget,
    oracle_constraint,
    oracle_objective,
    solve_constraint_batched,
    solve_constraint_naive,
    solve_objective,
)
from stacksum.hardness import PartitionInstance, parse_partition
from stacksum.model import (
    MTooSmallError,
    OddTotalSumError,
    ScaleTooSmallError,
)


def even_partition(rng: random.Random, m: int, a_max: int = 12) -> PartitionInstance:
    nums = [rng.randint(1, a_max) for _ in range(m)]
    if sum(nums) % 2:
        nums[0] += 1
    return PartitionInstance(tuple(nums))


class TestDecidePartition:
    def test_yes_with_certificate(self):
        ans = decide_partition(PartitionInstance((1, 2, 3)))
        assert ans.is_yes
        nums = (1, 2, 3)
        assert sum(nums[i] for i in ans.certificate) == 3

    def test_no_by_parity_structure(self):
        assert not decide_partition(PartitionInstance((2, 2, 2))).is_yes

    def test_larger_yes(self):
        ans = decide_partition(PartitionInstance((3, 1, 1, 2, 2, 1)))
        assert ans.is_yes
        assert sum((3, 1, 1, 2, 2, 1)[i] for i in ans.certificate) == 5

    def test_odd_sum(self):
        with pytest.raises(OddTotalSumError):
            decide_partition(PartitionInstance((1, 2)))

    def test_certificate_field_validated(self):
        p = PartitionInstance((1, 2, 3), yes_certificate=(0, 1))
        assert p.yes_certificate == (0, 1)
        with pytest.raises(Exception, match="half sum"):
            PartitionInstance((1, 2, 3), yes_certificate=(0,))
        with pytest.raises(OddTotalSumError):
            PartitionInstance((1, 2), yes_certificate=(0,))

    def test_brute_force_agreement(self):
        rng = random.Random(3)
        for _ in range(40):
            p = even_partition(rng, rng.randint(1, 10), a_max=9)
            b = p.half_sum
            expect = any(
                sum(a for i, a in enumerate(p.numbers) if mask >> i & 1) == b
                for mask in range(1 << len(p.numbers))
            )
            assert decide_partition(p).is_yes == expect


class TestObjectiveGadget:
    def test_reference_construction(self):
        bundle = gen_objective_gadget(PartitionInstance((1, 2, 3)), 100)
        inst = bundle.instance
        assert inst.model is Model.OBJECTIVE
        assert inst.capacity == 103
        assert inst.leader_weights == (1, 2, 3, 100)
        assert inst.follower_weights == (101,)
        assert bundle.provenance["partition_answer"] is True
        assert bundle.provenance["verified"]

    def test_small_yes_gadget(self):
        bundle = gen_objective_gadget(PartitionInstance((1, 1)), 10)
        assert bundle.instance.capacity == 11
        assert oracle_objective(bundle.instance).value == 10

    def test_m_too_small(self):
        with pytest.raises(MTooSmallError):
            gen_objective_gadget(PartitionInstance((1, 2, 3)), 6)

    def test_default_m(self):
        bundle = gen_objective_gadget(PartitionInstance((1, 1)))
        assert bundle.provenance["parameters"]["M"] == 11


class TestConstraintGadget:
    def test_unscaled_description(self):
        bundle = gen_constraint_gadget(PartitionInstance((1, 1)), 2)
        un = bundle.provenance["unscaled"]
        assert un["leader"] == [2, 2, "eps", 6]
        assert un["follower"] == [2, 4, 10]
        assert un["capacity"] == 16
        inst = bundle.instance
        assert inst.leader_weights == (4, 4, 3, 12)
        assert inst.follower_weights == (4, 8, 20)
        assert inst.capacity == 32

    def test_yes_gadget_verified(self):
        bundle = gen_constraint_gadget(PartitionInstance((1, 1)), 2)
        assert bundle.provenance["verified"]
        assert oracle_constraint(bundle.instance).value == 1

    def test_no_gadget_value_zero(self):
        bundle = gen_constraint_gadget(PartitionInstance((2, 2, 2)), 2)
        assert bundle.provenance["verified"]
        assert oracle_constraint(bundle.instance).value == 0

    def test_scale_too_small(self):
        with pytest.raises(ScaleTooSmallError):
            gen_constraint_gadget(PartitionInstance((1, 1)), 1)

    def test_exponent_is_polynomial(self):
        rng = random.Random(11)
        for _ in range(30):
            p = even_partition(rng, rng.randint(1, 12))
            bundle = gen_constraint_gadget(p, 2)
            k = bundle.provenance["parameters"]["k"]
            bound = math.ceil(math.log2(2 * len(p.numbers) * max(p.numbers) + 2)) + 1
            assert k <= bound


class TestDiscrimination:
    def test_objective_family(self):
        rng = random.Random(20)
        seen = set()
        for _ in range(40):
            p = even_partition(rng, rng.randint(2, 8))
            ans = decide_partition(p)
            seen.add(ans.is_yes)
            bundle = gen_objective_gadget(p)
            m_value = bundle.provenance["parameters"]["M"]
            got = solve_objective(bundle.instance).value.base
            if ans.is_yes:
                assert got == m_value
            else:
                assert got <= p.half_sum - 1
        assert seen == {True, False}

    def test_constraint_family(self):
        rng = random.Random(21)
        seen = set()
        for _ in range(40):
            p = even_partition(rng, rng.randint(2, 8))
            ans = decide_partition(p)
            seen.add(ans.is_yes)
            for scale in (2, 3):
                bundle = gen_constraint_gadget(p, scale)
                assert bundle.provenance["verified"]
                naive = solve_constraint_naive(bundle.instance).value.base
                batched = solve_constraint_batched(bundle.instance).value.base
                want = scale - 1 if ans.is_yes else 0
                assert naive == batched == want
        assert seen == {True, False}


class TestParsePartition:
    def test_inline_forms(self):
        assert parse_partition("1,2,3").numbers == (1, 2, 3)
        assert parse_partition("{2,2}").numbers == (2, 2)
        assert parse_partition("[4, 6]").numbers == (4, 6)

    def test_json_object(self):
        assert parse_partition('{"numbers": [1, 5]}').numbers == (1, 5)
