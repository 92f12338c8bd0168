"""Sign-consistency checking, compared throughout against the brute-force
reference implementation (which shares no machinery with the fast path)."""

import random

import pytest

from stripslearn.consistency import (
    ConsistencyError,
    Inconsistent,
    SignAssignment,
    admissible_features,
    brute_force_check,
    build_reduced_graph,
    check_feature,
)
from stripslearn.features import ActionPattern, enumerate_features, make_feature
from stripslearn.sampling import SampleConfig, sample_traces
from stripslearn.tracegraph import TraceGraph
from stripslearn.typeinf import infer_types

PICK1 = ActionPattern("pick", (1,))
DROP1 = ActionPattern("drop", (1,))


def test_preview_carry_feature_consistent(preview_graph):
    res = check_feature(preview_graph, make_feature([PICK1, DROP1]))
    assert isinstance(res, SignAssignment)
    assert res[PICK1] != res[DROP1]
    # brute force agrees, including on the signs up to global flip
    ref = brute_force_check(preview_graph, make_feature([PICK1, DROP1]))
    assert res == ref or res == {p: 1 - s for p, s in ref.items()}


def test_preview_pick_alone_inconsistent(preview_graph):
    res = check_feature(preview_graph, make_feature([PICK1]))
    assert isinstance(res, Inconsistent)
    assert not res
    c = res.conflict
    assert c.feature == make_feature([PICK1])
    assert c.grounding == ("o1",)
    # both witnesses are pick occurrences on the same object
    assert c.first[0] == PICK1 and c.second[0] == PICK1
    assert isinstance(brute_force_check(preview_graph, make_feature([PICK1])),
                      Inconsistent)


def test_single_occurrence_defaults_to_sign_one():
    g = TraceGraph.from_traces([[("ignite", ("m",))]])
    res = check_feature(g, make_feature([ActionPattern("ignite", (1,))]))
    assert isinstance(res, SignAssignment)
    assert res[ActionPattern("ignite", (1,))] == 1


def test_empty_grounding_feature_is_consistent(preview_graph):
    # no move edge binds index (1, 2) to the same object twice, but a
    # pattern over an action absent from the graph grounds nowhere at all
    ghost = make_feature([ActionPattern("teleport", (1,))])
    assert isinstance(check_feature(preview_graph, ghost), SignAssignment)
    assert isinstance(brute_force_check(preview_graph, ghost), SignAssignment)


def test_reduced_graph_preview_package_type(preview_graph):
    red = build_reduced_graph(preview_graph, (0,), [PICK1, DROP1])
    assert len(red.relevant_edges) == 3  # two picks and a drop; move contracted
    assert red.num_classes == 4
    assert red.node_map.max() == red.num_classes - 1


def test_reduced_graph_identity_when_all_actions_kept(preview_graph):
    pats = [PICK1, DROP1, ActionPattern("move", (1,))]
    red = build_reduced_graph(preview_graph, (0,), pats)
    assert red.num_classes == preview_graph.num_nodes
    assert len(red.relevant_edges) == len(preview_graph.edges)


def test_reduced_graph_arity_mismatch_rejected(preview_graph):
    with pytest.raises(ConsistencyError):
        build_reduced_graph(preview_graph, (0, 0), [PICK1])


def test_oracle_cap_enforced(preview_graph):
    pats = [ActionPattern(f"a{i}", (1,)) for i in range(9)]
    with pytest.raises(ConsistencyError):
        brute_force_check(preview_graph, make_feature(pats))


def _random_graph(rng: random.Random) -> TraceGraph:
    """Small random trace set over few actions and objects, tuned so that
    repeated groundings (the interesting case) actually happen."""
    names = ["a", "b", "c"][: rng.randint(1, 3)]
    objs = ["x", "y", "z"][: rng.randint(1, 3)]
    traces = []
    for _ in range(rng.randint(1, 3)):
        steps = []
        for _ in range(rng.randint(1, 6)):
            act = rng.choice(names)
            arity = 1 + (hash(act) % 2)
            steps.append((act, tuple(rng.choice(objs) for _ in range(arity))))
        traces.append(steps)
    return TraceGraph.from_traces(traces)


def _random_feature(rng: random.Random, graph: TraceGraph):
    arities = graph.action_names()
    k = rng.randint(1, 2)
    pool = [
        ActionPattern(a, idx)
        for a, ar in arities.items()
        if ar >= k
        for idx in ([(1,), (2,)] if k == 1 else [(1, 2), (2, 1)])
        if not idx or max(idx) <= ar
    ]
    if not pool:
        return None
    support = rng.sample(pool, min(len(pool), rng.randint(1, 3)))
    return make_feature(support)


def test_fast_check_matches_oracle_on_random_cases():
    rng = random.Random(20260815)
    agreements = 0
    for _ in range(300):
        g = _random_graph(rng)
        f = _random_feature(rng, g)
        if f is None:
            continue
        fast = check_feature(g, f)
        slow = brute_force_check(g, f)
        assert isinstance(fast, SignAssignment) == isinstance(slow, SignAssignment), (
            g.to_json(), f)
        if isinstance(fast, SignAssignment):
            # signs match up to an independent flip per free component
            for comp in fast.components:
                deltas = {fast[p] ^ slow[p] for p in comp}
                assert len(deltas) == 1, (comp, dict(fast), dict(slow))
        agreements += 1
    assert agreements > 200


def test_consistency_monotone_under_support_superset():
    # if a superset is consistent, dropping patterns cannot create a conflict
    # on groundings the smaller support still covers -- not true in general!
    # what IS true: adding patterns can only remove admissibility on shared
    # groundings; verify on the preview example where {pick1} alone fails
    # but {pick1, drop1} passes because drop occurrences split the classes.
    rng = random.Random(7)
    flips = 0
    for _ in range(200):
        g = _random_graph(rng)
        f = _random_feature(rng, g)
        if f is None or len(f.support) < 2:
            continue
        whole = check_feature(g, f)
        part = check_feature(g, make_feature(f.support[:1]))
        if isinstance(whole, SignAssignment) != isinstance(part, SignAssignment):
            flips += 1
        # no invariant to assert per case; just exercise both paths and the
        # oracle on the subset to keep the pair honest
        assert isinstance(brute_force_check(g, make_feature(f.support[:1])),
                          type(part))
    assert flips >= 0


@pytest.fixture(scope="module")
def gripper_graph(gripper_bench):
    domain, train, _ = gripper_bench
    return sample_traces(domain, train, SampleConfig(kind="traces", n=3, L=120, seed=9))


def test_admissible_features_preserves_order(gripper_graph):
    g = gripper_graph
    types = infer_types(g)
    cands = enumerate_features(types, 3)
    kept = admissible_features(g, cands)
    feats = [f for f, _ in kept]
    assert feats == [f for f in cands if f in set(feats)]
    assert all(isinstance(s, SignAssignment) for _, s in kept)


def test_admissible_features_worker_invariance(gripper_graph):
    g = gripper_graph
    types = infer_types(g)
    cands = enumerate_features(types, 3)
    serial = admissible_features(g, cands)
    parallel = admissible_features(g, cands, workers=2)
    assert [f for f, _ in serial] == [f for f, _ in parallel]
    for (_, s1), (_, s2) in zip(serial, parallel):
        assert s1 == s2


def test_sign_assignment_components_granularity(preview_graph):
    res = check_feature(preview_graph, make_feature([PICK1, DROP1]))
    assert isinstance(res, SignAssignment)
    comps = res.components
    assert all(isinstance(c, frozenset) for c in comps)
    assert {p for c in comps for p in c} == {PICK1, DROP1}
