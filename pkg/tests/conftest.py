"""Shared fixtures: bundled benchmarks, hand-built micro domains, and the
four-action delivery-style chain used across the consistency/learner tests."""

import pytest
from hypothesis import HealthCheck, settings

from stripslearn import benchmarks
from stripslearn.core import (
    ActionSchema,
    PredicateSymbol,
    StripsDomain,
    StripsInstance,
    SchemaLiteral,
)
from stripslearn.tracegraph import TraceGraph

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("suite")


def L(pred, *args, positive=True):
    return SchemaLiteral(pred, tuple(args), positive)


# One package carried between two cells: pick/drop toggle a unary "holding"
# predicate, move relocates the hand.  Mirrors the worked example used for
# the consistency walk-through.
PREVIEW_TRACE = [
    ("pick", ("o1", "c1")),
    ("move", ("c1", "c2")),
    ("drop", ("o1", "c2")),
    ("pick", ("o1", "c2")),
]


@pytest.fixture
def preview_graph() -> TraceGraph:
    return TraceGraph.from_traces([PREVIEW_TRACE])


@pytest.fixture(scope="session")
def gripper_bench():
    return benchmarks.get_benchmark("gripper").load()


@pytest.fixture(scope="session")
def blocks3_bench():
    return benchmarks.get_benchmark("blocks3").load()


def make_mini_gripper(balls=1, rooms=2, grippers=1):
    """A hand-scale gripper for exhaustive tests (full graph in milliseconds)."""
    predicates = [
        PredicateSymbol("at", 2),
        PredicateSymbol("at-robby", 1),
        PredicateSymbol("carry", 2),
        PredicateSymbol("free", 1),
        PredicateSymbol("room", 1),
    ]
    schemas = [
        ActionSchema(
            "move", 2,
            (L("at-robby", 0), L("at-robby", 1, positive=False), L("room", 1)),
            (L("at-robby", 0, positive=False), L("at-robby", 1)),
        ),
        ActionSchema(
            "pick", 3,
            (L("at", 0, 1), L("at-robby", 1), L("free", 2), L("carry", 0, 2, positive=False)),
            (L("at", 0, 1, positive=False), L("carry", 0, 2), L("free", 2, positive=False)),
        ),
        ActionSchema(
            "drop", 3,
            (L("carry", 0, 2), L("at-robby", 1), L("at", 0, 1, positive=False), L("free", 2, positive=False)),
            (L("carry", 0, 2, positive=False), L("at", 0, 1), L("free", 2)),
        ),
    ]
    domain = StripsDomain.from_schemas("mini-gripper", predicates, schemas)
    ball_names = [f"b{i}" for i in range(1, balls + 1)]
    room_names = [f"r{i}" for i in range(1, rooms + 1)]
    grip_names = [f"g{i}" for i in range(1, grippers + 1)]
    init = (
        {("at", (b, "r1")) for b in ball_names}
        | {("at-robby", ("r1",))}
        | {("free", (g,)) for g in grip_names}
        | {("room", (r,)) for r in room_names}
    )
    instance = StripsInstance(
        "mini", "mini-gripper", tuple(ball_names + room_names + grip_names), frozenset(init)
    )
    return domain, instance


@pytest.fixture
def mini_gripper():
    return make_mini_gripper()


def make_footnote_domain():
    """Four nullary-to-binary toggles over r, p1, p2 (the smallest well-formed
    domain exercising every sign combination):
        a: ~r -> r ; b: r,~p1 -> ~r,p1 ; c: r,~p2 -> ~r,p2 ; d: p1,p2 -> ~p1,~p2
    """
    predicates = [PredicateSymbol("r", 0), PredicateSymbol("p1", 0), PredicateSymbol("p2", 0)]
    schemas = [
        ActionSchema("a", 0, (L("r", positive=False),), (L("r"),)),
        ActionSchema("b", 0, (L("r"), L("p1", positive=False)), (L("r", positive=False), L("p1"))),
        ActionSchema("c", 0, (L("r"), L("p2", positive=False)), (L("r", positive=False), L("p2"))),
        ActionSchema("d", 0, (L("p1"), L("p2")), (L("p1", positive=False), L("p2", positive=False))),
    ]
    domain = StripsDomain.from_schemas("footnote", predicates, schemas)
    instance = StripsInstance("footnote-init", "footnote", (), frozenset())
    return domain, instance


@pytest.fixture
def footnote():
    return make_footnote_domain()
