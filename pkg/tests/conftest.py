import random
from pathlib import Path

import pytest

import bnetsynth as b

GOLDEN = Path(__file__).parent / "golden"

TYPE_1 = frozenset({"nop", "swap", "used", "set"})
TYPE_0 = frozenset({"nop", "inp", "free"})


@pytest.fixture
def a1():
    return b.build_ts(["s0", "s1"], ["a"],
                      [("s0", "a", "s1"), ("s1", "a", "s0")], "s0")


@pytest.fixture
def a2():
    return b.build_ts(["r0", "r1"], ["b", "c"],
                      [("r0", "b", "r1"), ("r1", "c", "r0")], "r0")


@pytest.fixture
def a3():
    return b.build_ts(
        ["s0", "s1", "s2", "s3"], ["a", "b", "c"],
        [("s0", "a", "s1"), ("s1", "b", "s2"), ("s2", "c", "s3")], "s0")


@pytest.fixture
def demo_net():
    return b.build_net(
        places=["R_1", "R_2"],
        transitions=["a", "b"],
        net_type=frozenset({"nop", "inp", "swap"}),
        flow={("R_1", "a"): "inp", ("R_2", "a"): "swap", ("R_2", "b"): "inp"},
        initial_marking={"R_1": 1, "R_2": 0},
    )


@pytest.fixture
def demo_hs():
    return b.build_hs_instance(
        ["X1", "X2", "X3", "X4"],
        [["X1", "X2"], ["X2", "X3"], ["X1", "X4"], ["X1", "X3", "X4"]],
        2)


@pytest.fixture
def a1_net_golden():
    return (GOLDEN / "a1.net").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def hs_corpus():
    """Fifty seeded random hitting-set instances with their brute-force
    answers, shared by the cross-validation and acceptance suites."""
    rng = random.Random(20260816)
    instances = []
    while len(instances) < 50:
        n = rng.randint(1, 4)
        universe = [f"X{i}" for i in range(1, n + 1)]
        m = rng.randint(0, 3)
        sets = []
        for _ in range(m):
            size = rng.randint(1, min(3, n))
            sets.append(sorted(rng.sample(universe, size)))
        kappa = rng.randint(0, 2)
        instances.append(b.build_hs_instance(universe, sets, kappa))
    return [(inst, b.hs_brute_force(inst)) for inst in instances]
