"""Samplers: plain random traces, BFS partial graphs, full state graphs."""

import pytest

from stripslearn.core import GroundAction, is_applicable
from stripslearn.sampling import (
    SampleConfig,
    SamplingError,
    bfs_partial_graph,
    derive_seed,
    full_state_graph,
    generate,
    sample_traces,
    stream_rng,
)

from conftest import make_mini_gripper


def test_config_validation():
    with pytest.raises(SamplingError):
        SampleConfig(kind="walks")
    with pytest.raises(SamplingError):
        SampleConfig(n=0)
    with pytest.raises(SamplingError):
        SampleConfig(L=0)
    with pytest.raises(SamplingError):
        SampleConfig(bfs_budget=0)


def test_gripper_trace_shape(gripper_bench):
    domain, train, _ = gripper_bench
    cfg = SampleConfig(kind="traces", n=5, L=250, seed=0)
    g = sample_traces(domain, train, cfg)
    assert len(g.traces) == 5
    assert all(len(t) == 250 for t in g.traces)
    assert len(g.edges) == 1250
    assert len(g.connected_components()) == 5
    assert len(g.initial) == 1


def test_single_step_trace(mini_gripper):
    domain, instance = mini_gripper
    g = sample_traces(domain, instance, SampleConfig(kind="traces", n=1, L=1, seed=3))
    assert len(g.edges) == 1
    assert g.edges[0].src == 0


def test_determinism_byte_identical(gripper_bench):
    domain, train, _ = gripper_bench
    cfg = SampleConfig(kind="traces", n=2, L=40, seed=11)
    a = sample_traces(domain, train, cfg).to_json()
    b = sample_traces(domain, train, cfg).to_json()
    assert a == b
    c = sample_traces(domain, train, SampleConfig(kind="traces", n=2, L=40, seed=12)).to_json()
    assert c != a


def test_every_sampled_edge_is_a_legal_transition(gripper_bench):
    domain, train, _ = gripper_bench
    for kind, cfg in [
        ("traces", SampleConfig(kind="traces", n=3, L=30, seed=5)),
        ("partial", SampleConfig(kind="partial_graph", bfs_budget=120, sample_roots=3, seed=5)),
    ]:
        g = generate(domain, train, cfg)
        states = g.hidden_states
        assert states is not None and len(states) == g.num_nodes
        for e in g.edges:
            action = GroundAction(e.action, e.args)
            assert is_applicable(domain, states[e.src], action), (kind, e)


def test_full_graph_mini_gripper_counts(mini_gripper):
    domain, instance = mini_gripper
    g = full_state_graph(domain, instance, SampleConfig(kind="full_graph"))
    # independent count: exhaustive closed BFS
    from stripslearn.core import applicable_actions, apply

    seen, frontier, edges = {instance.initial_state}, [instance.initial_state], 0
    while frontier:
        s = frontier.pop()
        for a in applicable_actions(domain, instance, s):
            edges += 1
            nxt = apply(domain, s, a)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    assert g.num_nodes == len(seen)
    assert len(g.edges) == edges
    # every edge its own length-1 trace, all states pre-merged
    assert all(len(t) == 1 for t in g.traces)


def test_full_graph_node_cap(mini_gripper):
    domain, instance = mini_gripper
    with pytest.raises(SamplingError):
        full_state_graph(domain, instance, SampleConfig(kind="full_graph", node_cap=3))


def test_bfs_with_big_budget_equals_full_graph(mini_gripper):
    domain, instance = mini_gripper
    full = full_state_graph(domain, instance, SampleConfig(kind="full_graph"))
    bfs = bfs_partial_graph(
        domain, instance, SampleConfig(kind="partial_graph", bfs_budget=10**6, sample_roots=1, seed=0)
    )
    assert bfs.num_nodes == full.num_nodes
    assert len(bfs.edges) == len(full.edges)
    assert sorted((e.action, e.args) for e in bfs.edges) == sorted(
        (e.action, e.args) for e in full.edges
    )


def test_bfs_budget_respected(gripper_bench):
    domain, train, _ = gripper_bench
    cfg = SampleConfig(kind="partial_graph", bfs_budget=230, sample_roots=5, seed=1)
    g = bfs_partial_graph(domain, train, cfg)
    assert len(g.edges) <= 230
    assert len(g.edges) >= 200  # budget nearly exhausted on this instance


def test_dead_end_truncation_recorded():
    """Walks that exhaust all applicable actions keep the partial trace and
    flag it, rather than failing the sample."""
    from stripslearn.core import ActionSchema, PredicateSymbol, StripsDomain, StripsInstance
    from conftest import L

    burn = StripsDomain.from_schemas(
        "burn",
        [PredicateSymbol("fresh", 1)],
        [ActionSchema("burn", 1, (L("fresh", 0),), (L("fresh", 0, positive=False),))],
    )
    inst = StripsInstance(
        "i", "burn", ("t1", "t2", "t3"), frozenset({("fresh", (t,)) for t in ("t1", "t2", "t3")})
    )
    g = sample_traces(burn, inst, SampleConfig(kind="traces", n=1, L=10, seed=0))
    assert g.truncated == (0,)
    assert len(g.traces[0]) == 3  # burned all three tokens, then stuck


def test_initial_dead_end_is_an_error():
    from stripslearn.core import ActionSchema, PredicateSymbol, StripsDomain, StripsInstance
    from conftest import L

    d = StripsDomain.from_schemas(
        "stuck",
        [PredicateSymbol("p", 0)],
        [ActionSchema("a", 0, (L("p"),), (L("p", positive=False),))],
    )
    inst = StripsInstance("i", "stuck", (), frozenset())
    with pytest.raises(SamplingError):
        sample_traces(d, inst, SampleConfig(kind="traces", n=1, L=1, seed=0))


def test_offset_walks_leave_initial_state(gripper_bench):
    """Later traces start 2L..5L random steps away from s0, so with L big
    enough they rarely begin where the first trace does."""
    domain, train, _ = gripper_bench
    g = sample_traces(domain, train, SampleConfig(kind="traces", n=4, L=30, seed=9))
    states = g.hidden_states
    heads = [states[g.edges[t[0]].src] for t in g.traces]
    assert heads[0] == train.initial_state
    assert any(h != heads[0] for h in heads[1:])


# ----------------------------------------------------------------- seeding


def test_derive_seed_and_stream_rng_are_independent():
    assert derive_seed(1, "a") != derive_seed(1, "b")
    assert derive_seed(1, "a") != derive_seed(2, "a")
    assert derive_seed(3, "x") == derive_seed(3, "x")
    assert 0 <= derive_seed(0, "run/0/train") < 2**63
    r1 = stream_rng(5, "walk")
    r2 = stream_rng(5, "walk")
    assert [r1.random() for _ in range(4)] == [r2.random() for _ in range(4)]
    assert stream_rng(5, "walk").random() != stream_rng(5, "other").random()
