import random

import pytest

from stacksum import Instance, Model


@pytest.fixture
def example1() -> Instance:
    """The c=20 reference instance used throughout the docs."""
    return Instance(20, (9, 8, 5, 3), (12, 11, 10, 4), Model.OBJECTIVE)


def random_instance(rng: random.Random, model: Model, *, max_leader=8,
                    max_follower=6, max_weight=25, max_capacity=60) -> Instance:
    n_l = rng.randint(0, max_leader)
    n_f = rng.randint(0, max_follower)
    if n_l + n_f == 0:
        n_f = 1
    return Instance(
        capacity=rng.randint(1, max_capacity),
        leader_weights=tuple(rng.randint(1, max_weight) for _ in range(n_l)),
        follower_weights=tuple(rng.randint(1, max_weight) for _ in range(n_f)),
        model=model,
    )
