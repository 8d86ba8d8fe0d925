import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacksum import (
    DualWeight,
    Instance,
    Model,
    WeightAssignment,
    fill_table,
    simulate,
)
from stacksum.greedy import EfficiencyKey
from stacksum.model import MissingAssignmentError, ZeroConstraintWeightError


def assignment(*pairs) -> WeightAssignment:
    return WeightAssignment(tuple(DualWeight(b, e) for b, e in pairs))


class TestEfficiencyKey:
    def test_cross_multiplication(self):
        # (8+e)/8 vs (3+e)/3: the lighter item is strictly more efficient.
        heavy = EfficiencyKey(DualWeight(8, 1), DualWeight(8))
        light = EfficiencyKey(DualWeight(3, 1), DualWeight(3))
        assert light > heavy

    def test_unit_efficiency_ties(self):
        a = EfficiencyKey(DualWeight(12), DualWeight(12))
        b = EfficiencyKey(DualWeight(4), DualWeight(4))
        assert a == b

    def test_epsilon_above_one(self):
        # (w+e)/w > v/v: the exact mechanism placing an item ahead of the
        # unit-efficiency block.
        bumped = EfficiencyKey(DualWeight(9, 1), DualWeight(9))
        unit = EfficiencyKey(DualWeight(12), DualWeight(12))
        assert bumped > unit

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroConstraintWeightError):
            EfficiencyKey(DualWeight(1), DualWeight(0))


class TestSimulateObjective:
    def test_reference_suboptimal_play(self, example1):
        # Submit the two heaviest items, nothing from the follower fits,
        # then collect the weight-3 item for free: payoff 3-2e.
        out = simulate(example1, assignment((9, 1), (8, 1), (0, 0), (0, 0)))
        assert out.leader_payoff == DualWeight(3, -2)
        assert out.packed_leader_indices() == {0, 1, 3}
        assert out.packed_follower_indices() == set()

    def test_reference_optimal_play(self, example1):
        # Submit 8 and 3, the follower only fits its 4, then collect 5.
        out = simulate(example1, assignment((0, 0), (8, 1), (0, 0), (3, 1)))
        assert out.leader_payoff == DualWeight(5, -2)
        assert out.packed_leader_indices() == {1, 2, 3}
        assert out.packed_follower_indices() == {3}

    def test_no_leader_items(self):
        inst = Instance(20, (), (12, 11, 10, 4), Model.OBJECTIVE)
        out = simulate(inst, WeightAssignment(()))
        assert out.leader_payoff == DualWeight.ZERO
        # Greedy prefix by decreasing weight: 12 fits, then only 4.
        assert out.packed_follower_indices() == {0, 3}

    def test_zero_priced_items_visit_last_but_still_pack(self):
        inst = Instance(10, (7,), (), Model.OBJECTIVE)
        out = simulate(inst, assignment((0, 0)))
        assert out.leader_payoff == DualWeight(7, 0)
        assert out.packed_leader_indices() == {0}

    def test_missing_assignment(self, example1):
        with pytest.raises(MissingAssignmentError):
            simulate(example1, assignment((9, 1)))


class TestSimulateConstraint:
    def test_inflated_item_fills_residual(self):
        inst = Instance(10, (3, 4), (5,), Model.CONSTRAINT)
        out = simulate(inst, assignment((5, 0), (6, 0)))
        assert out.leader_payoff == DualWeight(2, 0)
        assert out.packed_leader_indices() == {0}
        assert out.packed_follower_indices() == {0}

    def test_zero_constraint_weight_is_an_error(self):
        inst = Instance(10, (3,), (5,), Model.CONSTRAINT)
        with pytest.raises(ZeroConstraintWeightError):
            simulate(inst, assignment((0, 0)))

    def test_identity_assignment_gains_nothing(self):
        inst = Instance(10, (3, 4), (5,), Model.CONSTRAINT)
        out = simulate(inst, WeightAssignment.identity(inst))
        assert out.leader_payoff == DualWeight.ZERO


class TestTieBreaks:
    def test_equal_efficiency_by_objective_weight_desc(self):
        # Both leader items at identity weights tie with the follower at
        # efficiency 1; heavier objective weight goes first.
        inst = Instance(12, (5, 9), (7,), Model.OBJECTIVE)
        out = simulate(inst, assignment((5, 0), (9, 0)))
        order = [s.item.label for s in out.trace]
        assert order == ["L1", "F0", "L0"]

    def test_follower_before_leader_on_full_tie(self):
        inst = Instance(12, (7,), (7,), Model.OBJECTIVE)
        out = simulate(inst, assignment((7, 0)))
        order = [s.item.label for s in out.trace]
        assert order == ["F0", "L0"]

    def test_lower_index_on_leader_tie(self):
        inst = Instance(3, (5, 5), (), Model.OBJECTIVE)
        out = simulate(inst, assignment((0, 0), (0, 0)))
        order = [s.item.label for s in out.trace]
        assert order == ["L0", "L1"]

    def test_determinism(self, example1):
        a = assignment((9, 1), (8, 1), (0, 0), (0, 1))
        assert simulate(example1, a) == simulate(example1, a)


class TestFillTable:
    def test_reference_values(self, example1):
        ft = fill_table(example1)
        assert ft[11] == 4  # capacity 9: 12, 11, 10 skipped, 4 packed
        assert ft[17] == 0  # capacity 3: nothing fits
        assert ft[0] == 16  # capacity 20: 12 then 4
        assert ft[example1.capacity] == 0

    def test_residual_helper(self, example1):
        ft = fill_table(example1)
        assert ft.residual(11) == 20 - 11 - 4

    @given(
        st.lists(st.integers(1, 30), min_size=1, max_size=8),
        st.integers(1, 80),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=60, deadline=None)
    def test_bounds_and_padding_agreement(self, follower, cap, rng):
        inst = Instance(cap, (), tuple(follower), Model.OBJECTIVE)
        ft = fill_table(inst)
        for w1 in range(cap + 1):
            assert 0 <= ft[w1] <= cap - w1
        # Realize one random W1 by an epsilon-priced leader item packed
        # ahead of everything; the follower then fills exactly F(W1).
        w1 = rng.randint(1, cap)
        padded = Instance(cap, (w1,), tuple(follower), Model.OBJECTIVE)
        out = simulate(padded, assignment((w1, 1)))
        follower_weight = sum(
            follower[i] for i in out.packed_follower_indices()
        )
        assert follower_weight == ft[w1]

    def test_monotone_residual_along_trace(self, example1):
        out = simulate(example1, assignment((9, 1), (8, 1), (0, 1), (0, 0)))
        residuals = [s.residual_after for s in out.trace]
        for earlier, later in zip(residuals, residuals[1:]):
            assert later <= earlier


def test_simulate_and_fill_table_agree_on_random_instances():
    rng = random.Random(4242)
    for _ in range(80):
        n_f = rng.randint(1, 6)
        cap = rng.randint(2, 50)
        follower = tuple(rng.randint(1, 20) for _ in range(n_f))
        inst = Instance(cap, (), follower, Model.OBJECTIVE)
        ft = fill_table(inst)
        out = simulate(inst, WeightAssignment(()))
        packed_weight = sum(follower[i] for i in out.packed_follower_indices())
        assert packed_weight == ft[0]
