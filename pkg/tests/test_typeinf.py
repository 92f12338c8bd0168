"""Argument-type inference by iterated slot merging."""

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from stripslearn.tracegraph import TraceGraph
from stripslearn.typeinf import ArgSlot, TypeInferenceError, infer_types


def graph_of(*traces):
    return TraceGraph.from_traces(list(traces))


def test_gripper_slots_partition_into_three_types(gripper_bench):
    from stripslearn.sampling import SampleConfig, sample_traces

    domain, train, _ = gripper_bench
    g = sample_traces(domain, train, SampleConfig(kind="traces", n=2, L=120, seed=0))
    types = infer_types(g)
    assert types.num_types == 3
    groups = {frozenset(map(str, slots)) for slots in types.members}
    assert groups == {
        frozenset({"pick.1", "drop.1"}),
        frozenset({"pick.2", "drop.2", "move.1", "move.2"}),
        frozenset({"pick.3", "drop.3"}),
    }


def test_single_action_single_type():
    g = graph_of([("a", ("x",)), ("a", ("y",))])
    types = infer_types(g)
    assert types.num_types == 1
    assert types.object_type == {"x": 0, "y": 0}


def test_transitive_merge_through_shared_object():
    # k appears as pick.3 in one trace and move.1 in another: the two room
    # slots collapse, and move.2 follows because r2 also occurs as move.1.
    g = graph_of(
        [("pick", ("b", "g", "k"))],
        [("move", ("k", "r2"))],
        [("move", ("r2", "k"))],
    )
    types = infer_types(g)
    tt = types.slot_type
    assert tt[ArgSlot("pick", 3)] == tt[ArgSlot("move", 1)] == tt[ArgSlot("move", 2)]
    assert tt[ArgSlot("pick", 1)] != tt[ArgSlot("pick", 3)]


def test_inconsistent_arity_rejected():
    # caught at graph construction, before type inference can ever see it
    from stripslearn.tracegraph import TraceGraphError

    with pytest.raises(TraceGraphError):
        graph_of([("a", ("x",)), ("a", ("x", "y"))])


def test_fixpoint_rerunning_changes_nothing(gripper_bench):
    from stripslearn.sampling import SampleConfig, sample_traces

    domain, train, _ = gripper_bench
    g = sample_traces(domain, train, SampleConfig(kind="traces", n=1, L=80, seed=1))
    t1 = infer_types(g)
    t2 = infer_types(g)
    assert t1.slot_type == t2.slot_type
    assert t1.object_type == t2.object_type


def test_describe_lists_every_type(gripper_bench):
    from stripslearn.sampling import SampleConfig, sample_traces

    domain, train, _ = gripper_bench
    g = sample_traces(domain, train, SampleConfig(kind="traces", n=1, L=60, seed=2))
    text = infer_types(g).describe()
    assert text.count("\n") + 1 == infer_types(g).num_types


# ----------------------------------------------------- randomized vs oracle


def brute_force_types(edges):
    """Partition refinement oracle: repeatedly merge any two slots sharing
    an object until nothing changes.  Quadratic and obviously correct."""
    slots = sorted({(a, i) for a, args in edges for i in range(1, len(args) + 1)})
    parent = {s: s for s in slots}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    changed = True
    while changed:
        changed = False
        occ = {}
        for a, args in edges:
            for i, o in enumerate(args, start=1):
                occ.setdefault(o, set()).add(find((a, i)))
        for roots in occ.values():
            roots = sorted(roots)
            for other in roots[1:]:
                if find(other) != find(roots[0]):
                    parent[find(other)] = find(roots[0])
                    changed = True
    groups = {}
    for s in slots:
        groups.setdefault(find(s), set()).add(s)
    return {frozenset(g) for g in groups.values()}


@given(st.integers(0, 10_000))
def test_partition_matches_brute_force(seed):
    rng = random.Random(seed)
    actions = {name: rng.randint(1, 3) for name in ["a", "b", "c"][: rng.randint(1, 3)]}
    objects = [f"o{i}" for i in range(rng.randint(1, 6))]
    edges = []
    for _ in range(rng.randint(1, 12)):
        name = rng.choice(sorted(actions))
        edges.append((name, tuple(rng.choice(objects) for _ in range(actions[name]))))
    g = TraceGraph.from_traces([[e] for e in edges])
    types = infer_types(g)
    got = {
        frozenset((s.action, s.index) for s in slots)
        for slots in types.members
    }
    assert got == brute_force_types(edges)
    # soundness: all slots an object occupies share one type
    for a, args in edges:
        for i, o in enumerate(args, start=1):
            assert types.slot_type[ArgSlot(a, i)] == types.object_type[o]


def test_type_order_is_by_smallest_slot():
    g = graph_of([("zeta", ("x",))], [("alpha", ("y",))])
    types = infer_types(g)
    # type 0 owns the lexicographically smallest slot (alpha.1)
    assert ArgSlot("alpha", 1) in types.members[0]
    assert ArgSlot("zeta", 1) in types.members[1]
