"""TraceGraph construction, merging, and the two on-disk formats."""

import pytest

from stripslearn.tracegraph import (
    TraceGraph,
    TraceGraphError,
    emit_trace_text,
    parse_trace_text,
)

from conftest import PREVIEW_TRACE


def test_preview_trace_is_a_chain(preview_graph):
    assert preview_graph.num_nodes == 5
    assert len(preview_graph.edges) == 4
    for i, e in enumerate(preview_graph.edges):
        assert (e.src, e.dst) == (i, i + 1)
    assert preview_graph.initial == (0,)
    assert preview_graph.objects == ("c1", "c2", "o1")


def test_empty_trace_list():
    g = TraceGraph.from_traces([])
    assert g.num_nodes == 0
    assert g.edges == []
    assert g.initial == ()


def test_duplicate_traces_stay_disjoint():
    g = TraceGraph.from_traces([PREVIEW_TRACE, PREVIEW_TRACE])
    assert g.num_nodes == 10
    assert len(g.connected_components()) == 2


def test_merge_heads_makes_one_component():
    traces = [PREVIEW_TRACE] * 5
    g = TraceGraph.from_traces(traces)
    assert len(g.connected_components()) == 5
    heads = [t[0] for t in g.traces]
    merged, node_map = g.merge_states([(g.edges[heads[0]].src, g.edges[h].src) for h in heads[1:]])
    assert len(merged.connected_components()) == 1
    assert node_map[g.edges[heads[0]].src] == node_map[g.edges[heads[1]].src]


def test_merge_self_pair_is_identity():
    g = TraceGraph.from_traces([PREVIEW_TRACE])
    merged, _ = g.merge_states([(2, 2)])
    assert merged.num_nodes == g.num_nodes
    assert merged.edges == g.edges


def test_merge_preserves_edge_multiset_and_order():
    g = TraceGraph.from_traces([PREVIEW_TRACE, PREVIEW_TRACE])
    merged, node_map = g.merge_states([(0, 5), (4, 9)])
    assert len(merged.edges) == len(g.edges)
    for old, new in zip(g.edges, merged.edges):
        assert (new.action, new.args) == (old.action, old.args)
        assert new.src == node_map[old.src] and new.dst == node_map[old.dst]
    # provenance: traces still index the same actions in the same order
    assert merged.split_into_traces() == g.split_into_traces()


def test_merge_unknown_node_rejected():
    g = TraceGraph.from_traces([PREVIEW_TRACE])
    with pytest.raises(TraceGraphError):
        g.merge_states([(0, 99)])


def test_split_inverts_from_traces():
    traces = [PREVIEW_TRACE, [("move", ("c2", "c1"))]]
    g = TraceGraph.from_traces(traces)
    assert g.split_into_traces() == [list(t) for t in traces]


def test_empty_action_name_rejected():
    with pytest.raises(TraceGraphError):
        TraceGraph.from_traces([[("", ("a",))]])


# ------------------------------------------------------------ serialization


def test_json_round_trip(preview_graph):
    g2 = TraceGraph.from_json(preview_graph.to_json())
    assert g2.num_nodes == preview_graph.num_nodes
    assert g2.edges == preview_graph.edges
    assert g2.traces == preview_graph.traces
    assert g2.initial == preview_graph.initial
    assert g2.objects == preview_graph.objects


def test_json_rejects_unknown_version(preview_graph):
    text = preview_graph.to_json().replace('"version": 1', '"version": 2')
    with pytest.raises(TraceGraphError):
        TraceGraph.from_json(text)


def test_json_rejects_garbage():
    with pytest.raises(TraceGraphError):
        TraceGraph.from_json("{not json")
    with pytest.raises(TraceGraphError):
        TraceGraph.from_json("[1, 2]")
    with pytest.raises(TraceGraphError):
        TraceGraph.from_json('{"version": 1, "nodes": 2}')


def test_plain_text_round_trip():
    traces = [PREVIEW_TRACE, [("move", ("c2", "c1")), ("move", ("c1", "c2"))]]
    text = emit_trace_text(traces)
    assert parse_trace_text(text) == [list(t) for t in traces]


def test_plain_text_comments_and_blank_lines():
    text = "# a comment\npick o1 c1\n\nmove c1 c2  # trailing\n"
    assert parse_trace_text(text) == [[("pick", ("o1", "c1"))], [("move", ("c1", "c2"))]]


def test_plain_text_rejects_sexpr_tokens():
    with pytest.raises(TraceGraphError):
        parse_trace_text("pick (o1) c1\n")


def test_validation_rejects_bad_edge_endpoints():
    with pytest.raises(TraceGraphError):
        TraceGraph(1, [(0, 5, "a", ("x",))], [[0]])


def test_action_names_report_arities(preview_graph):
    assert preview_graph.action_names() == {"pick": 2, "move": 2, "drop": 2}
