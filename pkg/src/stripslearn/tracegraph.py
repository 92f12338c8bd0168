"""Labeled multigraphs of observed action applications.

A TraceGraph is the learner's only view of the world: nodes are anonymous
states, directed edges carry ground action labels, and traces record which
consecutive edge runs were observed together.  Nodes obtained by merging
(extended traces, BFS expansions, full state graphs) simply share ids.

Two serializations are supported: a JSON document (schema version 1) that
preserves graph structure exactly, and a plain text format for raw traces
(one ground action per line, blank line between traces).
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, NamedTuple, Sequence

from .core import StripsError

NodeId = int


class Edge(NamedTuple):
    src: NodeId
    dst: NodeId
    action: str
    args: tuple[str, ...]


class TraceGraphError(StripsError):
    """Malformed trace graph structure or serialization."""


class TraceGraph:
    """Immutable-by-convention container; consumers must not mutate fields."""

    def __init__(
        self,
        num_nodes: int,
        edges: Sequence[Edge],
        traces: Sequence[Sequence[int]],
        initial: Sequence[NodeId] = (0,),
        objects: Iterable[str] = (),
        truncated: Sequence[int] = (),
    ):
        self.num_nodes = int(num_nodes)
        self.edges: list[Edge] = [Edge(e[0], e[1], e[2], tuple(e[3])) for e in edges]
        self.traces: list[list[int]] = [list(t) for t in traces]
        self.initial: tuple[NodeId, ...] = tuple(sorted(set(initial)))
        self.truncated: tuple[int, ...] = tuple(sorted(set(truncated)))
        occurring = {a for e in self.edges for a in e.args}
        self.objects: tuple[str, ...] = tuple(sorted(occurring | set(objects)))
        # Hidden per-node states, attached by the samplers that know them;
        # runtime provenance only, never serialized.
        self.hidden_states = None
        self._incident: list[list[int]] | None = None
        self._validate()

    def _validate(self) -> None:
        if self.num_nodes < 0:
            raise TraceGraphError("negative node count")
        arities: dict[str, int] = {}
        for i, e in enumerate(self.edges):
            if not (0 <= e.src < self.num_nodes and 0 <= e.dst < self.num_nodes):
                raise TraceGraphError(f"edge {i} endpoint out of range")
            if not e.action:
                raise TraceGraphError(f"edge {i} has an empty action name")
            seen = arities.setdefault(e.action, len(e.args))
            if seen != len(e.args):
                raise TraceGraphError(
                    f"action {e.action!r} used with both {seen} and {len(e.args)} arguments"
                )
        used = [0] * len(self.edges)
        for ti, trace in enumerate(self.traces):
            for pos, ei in enumerate(trace):
                if not (0 <= ei < len(self.edges)):
                    raise TraceGraphError(f"trace {ti} references unknown edge {ei}")
                used[ei] += 1
                if pos > 0 and self.edges[trace[pos - 1]].dst != self.edges[ei].src:
                    raise TraceGraphError(f"trace {ti} is not a connected edge run at step {pos}")
        if any(u != 1 for u in used):
            bad = next(i for i, u in enumerate(used) if u != 1)
            raise TraceGraphError(f"edge {bad} must belong to exactly one trace")
        for t in self.truncated:
            if not (0 <= t < len(self.traces)):
                raise TraceGraphError(f"unknown truncated trace id {t}")
        for n in self.initial:
            if not (0 <= n < self.num_nodes):
                raise TraceGraphError(f"initial node {n} out of range")

    # ------------------------------------------------------------------ build

    @classmethod
    def from_traces(
        cls,
        traces: Sequence[Sequence[tuple]],
        equalities: Iterable[tuple[tuple[int, int], tuple[int, int]]] = (),
        objects: Iterable[str] = (),
        truncated: Sequence[int] = (),
        mark_initial: bool = True,
    ) -> "TraceGraph":
        """Build a graph from ground action runs.

        ``traces[i]`` is a sequence of (name, args) pairs; trace i visits
        node coordinates (i, 0) .. (i, len).  ``equalities`` merges pairs of
        coordinates that are known to denote the same state.  When
        ``mark_initial`` is set the head of the first trace becomes the
        initial node; pass False for samples whose traces start mid-walk.
        """
        coord_ids: dict[tuple[int, int], int] = {}
        for ti, tr in enumerate(traces):
            for pos in range(len(tr) + 1):
                coord_ids[(ti, pos)] = len(coord_ids)
        edges: list[Edge] = []
        trace_ids: list[list[int]] = []
        for ti, tr in enumerate(traces):
            ids = []
            for pos, (name, args) in enumerate(tr):
                ids.append(len(edges))
                edges.append(Edge(coord_ids[(ti, pos)], coord_ids[(ti, pos + 1)], name, tuple(args)))
            trace_ids.append(ids)
        initial = [coord_ids[(0, 0)]] if traces and mark_initial else []
        graph = cls(len(coord_ids), edges, trace_ids, initial, objects, truncated)
        pairs = []
        for a, b in equalities:
            if a not in coord_ids or b not in coord_ids:
                raise TraceGraphError(f"equality {a} = {b} references unknown coordinates")
            pairs.append((coord_ids[a], coord_ids[b]))
        if pairs:
            graph, _ = graph.merge_states(pairs)
        return graph

    def merge_states(
        self, pairs: Iterable[tuple[NodeId, NodeId]]
    ) -> tuple["TraceGraph", list[NodeId]]:
        """Union the given node pairs; returns (new graph, old->new node map)."""
        parent = list(range(self.num_nodes))

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for a, b in pairs:
            if not (0 <= a < self.num_nodes and 0 <= b < self.num_nodes):
                raise TraceGraphError(f"merge pair ({a}, {b}) out of range")
            parent[find(a)] = find(b)

        remap: dict[int, int] = {}
        node_map = [0] * self.num_nodes
        for n in range(self.num_nodes):
            r = find(n)
            if r not in remap:
                remap[r] = len(remap)
            node_map[n] = remap[r]
        edges = [Edge(node_map[e.src], node_map[e.dst], e.action, e.args) for e in self.edges]
        merged = TraceGraph(
            len(remap),
            edges,
            self.traces,
            [node_map[n] for n in self.initial],
            self.objects,
            self.truncated,
        )
        return merged, node_map

    # ------------------------------------------------------------ structure

    def incident_edges(self) -> list[list[int]]:
        """Edge ids touching each node (both directions), built lazily."""
        if self._incident is None:
            inc: list[list[int]] = [[] for _ in range(self.num_nodes)]
            for i, e in enumerate(self.edges):
                inc[e.src].append(i)
                if e.dst != e.src:
                    inc[e.dst].append(i)
            self._incident = inc
        return self._incident

    def connected_components(self) -> list[list[NodeId]]:
        """Weakly connected components, each sorted, ordered by smallest node."""
        incident = self.incident_edges()
        seen = [False] * self.num_nodes
        components: list[list[NodeId]] = []
        for start in range(self.num_nodes):
            if seen[start]:
                continue
            seen[start] = True
            frontier = [start]
            comp = []
            while frontier:
                n = frontier.pop()
                comp.append(n)
                for ei in incident[n]:
                    e = self.edges[ei]
                    for other in (e.src, e.dst):
                        if not seen[other]:
                            seen[other] = True
                            frontier.append(other)
            components.append(sorted(comp))
        return components

    def action_names(self) -> dict[str, int]:
        """Observed action names mapped to their arities."""
        return {e.action: len(e.args) for e in self.edges}

    def split_into_traces(self) -> list[list[tuple[str, tuple[str, ...]]]]:
        """Recover the observed runs as (name, args) lists."""
        return [[(self.edges[ei].action, self.edges[ei].args) for ei in t] for t in self.traces]

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_incident"] = None
        state.pop("_index", None)  # numpy caches are rebuilt per process
        return state

    # --------------------------------------------------------- serialization

    def to_json(self) -> str:
        doc = {
            "version": 1,
            "nodes": self.num_nodes,
            "objects": list(self.objects),
            "initial": list(self.initial),
            "edges": [
                {"src": e.src, "dst": e.dst, "action": e.action, "args": list(e.args)}
                for e in self.edges
            ],
            "traces": self.traces,
            "truncated": list(self.truncated),
        }
        return json.dumps(doc, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "TraceGraph":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TraceGraphError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise TraceGraphError("top-level JSON value must be an object")
        version = doc.get("version", 1)
        if version != 1:
            raise TraceGraphError(f"unsupported trace graph version {version!r}")
        try:
            edges = [
                Edge(int(e["src"]), int(e["dst"]), str(e["action"]), tuple(map(str, e["args"])))
                for e in doc["edges"]
            ]
            return cls(
                int(doc["nodes"]),
                edges,
                [list(map(int, t)) for t in doc["traces"]],
                [int(n) for n in doc.get("initial", [])],
                [str(o) for o in doc.get("objects", [])],
                [int(t) for t in doc.get("truncated", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TraceGraphError(f"malformed trace graph document: {exc}") from exc

    def __repr__(self) -> str:
        return (
            f"TraceGraph(nodes={self.num_nodes}, edges={len(self.edges)}, "
            f"traces={len(self.traces)})"
        )


def parse_trace_text(text: str) -> list[list[tuple[str, tuple[str, ...]]]]:
    """Parse the plain trace format: one ground action per line, blank line
    between traces, '#' starts a comment."""
    traces: list[list[tuple[str, tuple[str, ...]]]] = []
    current: list[tuple[str, tuple[str, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current:
                traces.append(current)
                current = []
            continue
        parts = line.split()
        name, args = parts[0], tuple(parts[1:])
        for tok in parts:
            if any(c in tok for c in "()?;"):
                raise TraceGraphError(f"line {lineno}: invalid token {tok!r}")
        current.append((name, args))
    if current:
        traces.append(current)
    return traces


def emit_trace_text(traces: Sequence[Sequence[tuple[str, tuple[str, ...]]]]) -> str:
    blocks = []
    for trace in traces:
        blocks.append("\n".join(" ".join([name, *args]) for name, args in trace))
    return "\n\n".join(blocks) + "\n"
