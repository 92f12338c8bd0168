"""Feature consistency checking.

A feature claims that some unknown predicate is written exactly by the
patterns in its support, each either always making the atom true or
always making it false.  Deciding whether such signs exist reduces to a
0-1 coloring problem, solved independently per grounding: nodes that
reach each other without crossing a member edge must agree on the
atom's value, while a member edge forces value sign(p) at its head and
the inverse at its tail.  A parity union-find over pattern signs and
node-group tokens detects contradictions in near-linear time.

The numeric heavy lifting (node contraction, per-grounding connected
components) runs on numpy/scipy arrays cached per graph in GraphIndex.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _scipy_cc

from .core import StripsError
from .features import ActionPattern, Feature
from .tracegraph import TraceGraph


class ConsistencyError(StripsError):
    pass


# --------------------------------------------------------------------- index


class _ActionEdges(NamedTuple):
    ids: np.ndarray  # original edge ids, int64
    src: np.ndarray
    dst: np.ndarray
    args: np.ndarray  # (n_edges, arity) object ids, int64


class GraphIndex:
    """Array view of a TraceGraph: per-action edge tables, interned objects,
    and caches for node contractions and pattern grounding keys."""

    def __init__(self, graph: TraceGraph):
        self.graph = graph
        self.num_nodes = graph.num_nodes
        self.objects = sorted({o for e in graph.edges for o in e.args})
        self.object_ids = {o: i for i, o in enumerate(self.objects)}
        self.radix = max(len(self.objects), 1)
        self.by_action: dict[str, _ActionEdges] = {}
        rows: dict[str, list[int]] = {}
        for ei, e in enumerate(graph.edges):
            rows.setdefault(e.action, []).append(ei)
        for action, ids in rows.items():
            edges = [graph.edges[i] for i in ids]
            arity = len(edges[0].args)
            args = np.array(
                [[self.object_ids[o] for o in e.args] for e in edges], np.int64
            ).reshape(len(edges), arity)
            self.by_action[action] = _ActionEdges(
                np.array(ids, np.int64),
                np.array([e.src for e in edges], np.int64),
                np.array([e.dst for e in edges], np.int64),
                args,
            )
        self._contractions: dict[frozenset[str], tuple[int, np.ndarray]] = {}
        self._keys: dict[tuple[str, tuple[int, ...]], np.ndarray] = {}

    def contraction(self, kept_actions: frozenset[str]) -> tuple[int, np.ndarray]:
        """Merge nodes along every edge whose action is not in kept_actions.

        Returns (class count, node -> class labels); classes are numbered
        by first touched node, which scipy guarantees deterministically.
        """
        cached = self._contractions.get(kept_actions)
        if cached is None:
            src = [a.src for name, a in self.by_action.items() if name not in kept_actions]
            dst = [a.dst for name, a in self.by_action.items() if name not in kept_actions]
            if src:
                cached = _cc(self.num_nodes, np.concatenate(src), np.concatenate(dst))
            else:
                cached = self.num_nodes, np.arange(self.num_nodes)
            self._contractions[kept_actions] = cached
        return cached

    def pattern_keys(self, pattern: ActionPattern) -> np.ndarray:
        """Grounding of the pattern on every edge of its action, encoded as
        one mixed-radix int64 key per edge (same tuple ⇒ same key)."""
        cache_key = (pattern.action, pattern.indexes)
        keys = self._keys.get(cache_key)
        if keys is None:
            table = self.by_action[pattern.action]
            arity = table.args.shape[1]
            if pattern.indexes and max(pattern.indexes) > arity:
                raise ConsistencyError(
                    f"pattern {pattern} exceeds observed arity {arity}"
                )
            if self.radix ** len(pattern.indexes) > 2**62:
                raise ConsistencyError(f"grounding key overflow for {pattern}")
            keys = np.zeros(len(table.ids), np.int64)
            for i in reversed(pattern.indexes):
                keys = keys * self.radix + table.args[:, i - 1]
            self._keys[cache_key] = keys
        return keys

    def decode_key(self, key: int, k: int) -> tuple[str, ...]:
        out = []
        for _ in range(k):
            out.append(self.objects[key % self.radix])
            key //= self.radix
        return tuple(out)


def get_index(graph: TraceGraph) -> GraphIndex:
    index = graph.__dict__.get("_index")
    if index is None:
        index = GraphIndex(graph)
        graph.__dict__["_index"] = index
    return index


def _cc(num_nodes: int, src: np.ndarray, dst: np.ndarray) -> tuple[int, np.ndarray]:
    if len(src) == 0:
        return num_nodes, np.arange(num_nodes)
    adj = csr_matrix(
        (np.ones(len(src), np.int8), (src, dst)), shape=(num_nodes, num_nodes)
    )
    return _scipy_cc(adj, directed=False)


# ------------------------------------------------------------------- results


@dataclass(frozen=True)
class Conflict:
    """Why a feature was rejected: two occurrences of one grounding whose
    forced values cannot be reconciled."""

    feature: Feature
    grounding: tuple[str, ...]
    first: tuple[ActionPattern, int]  # (pattern, edge id)
    second: tuple[ActionPattern, int]

    def __str__(self) -> str:
        args = ", ".join(self.grounding)
        (p1, e1), (p2, e2) = self.first, self.second
        return (
            f"grounding ({args}): {p1} at edge {e1} "
            f"clashes with {p2} at edge {e2}"
        )


@dataclass(frozen=True)
class Inconsistent:
    conflict: Conflict | None = None

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"INCONSISTENT({self.conflict})"


class SignAssignment(Mapping):
    """Pattern -> sign map; sign 1 makes the atom true, 0 makes it false.

    ``components`` groups patterns whose signs were linked by constraints:
    flipping every sign inside one component gives another valid
    assignment, and nothing finer-grained does.
    """

    def __init__(
        self,
        signs: Mapping[ActionPattern, int],
        components: Sequence[frozenset[ActionPattern]] = (),
    ):
        self._signs = dict(signs)
        self.components = tuple(components)

    def __getitem__(self, pattern: ActionPattern) -> int:
        return self._signs[pattern]

    def __iter__(self):
        return iter(self._signs)

    def __len__(self) -> int:
        return len(self._signs)

    def __eq__(self, other) -> bool:
        if isinstance(other, SignAssignment):
            return self._signs == other._signs
        if isinstance(other, Mapping):
            return self._signs == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}={s}" for p, s in sorted(self._signs.items()))
        return f"SignAssignment({inner})"


CheckResult = SignAssignment | Inconsistent


# ------------------------------------------------------------ reduced graphs


@dataclass(frozen=True)
class ReducedGraph:
    """Node contraction shared by every feature of one type group."""

    num_classes: int
    node_map: np.ndarray  # original node -> contracted class
    relevant_edges: tuple[int, ...]  # edge ids of actions in the group


def build_reduced_graph(
    graph: TraceGraph, ftype: tuple[int, ...], patterns: Iterable[ActionPattern]
) -> ReducedGraph:
    """Contract every edge whose action contributes no pattern to the group."""
    patterns = tuple(patterns)
    for p in patterns:
        if len(p.indexes) != len(ftype):
            raise ConsistencyError(f"pattern {p} does not fit type tuple {ftype}")
    actions = frozenset(p.action for p in patterns)
    index = get_index(graph)
    num_classes, labels = index.contraction(actions)
    relevant = tuple(
        int(i)
        for a in sorted(actions & set(index.by_action))
        for i in index.by_action[a].ids
    )
    return ReducedGraph(num_classes, labels, relevant)


# ------------------------------------------------------------- parity DSU


class _ParityDSU:
    """Union-find over 0/1 variables related by equalities and inequalities."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n  # parity of the edge to the parent

    def add(self) -> int:
        self.parent.append(len(self.parent))
        self.parity.append(0)
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        parent, parity = self.parent, self.parity
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        p = 0
        for node in reversed(path):
            p ^= parity[node]
            parent[node] = x
            parity[node] = p
        return x

    def to_root(self, x: int) -> int:
        return 0 if self.parent[x] == x else self.parity[x]

    def union(self, x: int, y: int, rel: int) -> bool:
        """Require value(x) = value(y) XOR rel; False on contradiction."""
        rx, ry = self.find(x), self.find(y)
        px, py = self.to_root(x), self.to_root(y)
        if rx == ry:
            return px ^ py == rel
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel
        return True


# ------------------------------------------------------------ check_feature


def check_feature(graph: TraceGraph, feature: Feature) -> CheckResult:
    """Decide feature consistency and recover one canonical sign map.

    Per grounding, nodes connected through non-member edges are collapsed
    (value must persist across them); each member occurrence then pins the
    collapsed tail to 1-sign(p) and the collapsed head to sign(p).  All
    groundings share the pattern sign variables, so the whole feature is
    one parity-union-find instance.  Free components are seeded so their
    first pattern gets sign 1.
    """
    index = get_index(graph)
    patterns = feature.support
    present = [p for p in patterns if p.action in index.by_action]
    actions = frozenset(p.action for p in present)
    dsu = _ParityDSU(len(patterns))
    anchors: dict[int, tuple[ActionPattern, int]] = {}

    if present:
        _, labels1 = index.contraction(actions)
        names = sorted(actions)
        offsets = {}
        total = 0
        for a in names:
            offsets[a] = total
            total += len(index.by_action[a].ids)
        cat_src = np.concatenate([labels1[index.by_action[a].src] for a in names])
        cat_dst = np.concatenate([labels1[index.by_action[a].dst] for a in names])
        cat_ids = np.concatenate([index.by_action[a].ids for a in names])
        # Number the contracted classes densely over just these endpoints.
        touched, inverse = np.unique(
            np.concatenate([cat_src, cat_dst]), return_inverse=True
        )
        cat_src = inverse[: len(cat_src)]
        cat_dst = inverse[len(cat_src):]
        num_classes = len(touched)

        rows = []  # per present pattern: (var, keys sorted by grounding, order)
        for p in present:
            keys = index.pattern_keys(p)
            rows.append((patterns.index(p), keys))
        space = np.unique(np.concatenate([k for _, k in rows]))
        per_pattern = []
        for var, keys in rows:
            gids = np.searchsorted(space, keys)
            order = np.argsort(gids, kind="stable")
            per_pattern.append((var, gids[order], order))

        kept = np.ones(total, bool)
        for g in range(len(space)):
            occs: list[tuple[int, np.ndarray]] = []
            for var, sorted_gids, order in per_pattern:
                lo = np.searchsorted(sorted_gids, g)
                hi = np.searchsorted(sorted_gids, g + 1)
                if lo < hi:
                    pos = order[lo:hi] + offsets[patterns[var].action]
                    occs.append((var, pos))
                    kept[pos] = False
            comp_labels = _cc(num_classes, cat_src[kept], cat_dst[kept])[1]
            conflict = None
            tokens: dict[int, int] = {}
            for var, pos in occs:
                pattern = patterns[var]
                for row in pos:
                    for comp, rel in (
                        (comp_labels[cat_src[row]], 1),
                        (comp_labels[cat_dst[row]], 0),
                    ):
                        tok = tokens.get(comp)
                        occurrence = (pattern, int(cat_ids[row]))
                        if tok is None:
                            tok = tokens[comp] = dsu.add()
                            anchors[tok] = occurrence
                        if not dsu.union(tok, var, rel):
                            conflict = Conflict(
                                feature,
                                index.decode_key(int(space[g]), feature.arity),
                                anchors.get(dsu.find(tok), occurrence),
                                occurrence,
                            )
                            break
                    if conflict:
                        break
                if conflict:
                    break
            for _, pos in occs:
                kept[pos] = True
            if conflict:
                return Inconsistent(conflict)

    signs: dict[ActionPattern, int] = {}
    root_value: dict[int, int] = {}
    groups: dict[int, list[ActionPattern]] = {}
    for i, p in enumerate(patterns):
        root = dsu.find(i)
        parity = dsu.to_root(i)
        if root not in root_value:
            root_value[root] = parity ^ 1  # seed: first pattern gets sign 1
        signs[p] = root_value[root] ^ parity
        groups.setdefault(root, []).append(p)
    components = [frozenset(v) for v in groups.values()]
    components.sort(key=lambda c: min(c))
    return SignAssignment(signs, components)


# ------------------------------------------------------------------- oracle


def brute_force_check(
    graph: TraceGraph, feature: Feature, *, cap: int = 8
) -> CheckResult:
    """Exhaustive reference check: try every sign map, verify every grounding
    by plain union-find value propagation over the original graph.

    Deliberately shares no machinery with check_feature; quadratic-ish and
    only meant for small supports (|B| <= cap).
    """
    patterns = feature.support
    if len(patterns) > cap:
        raise ConsistencyError(f"support size {len(patterns)} exceeds oracle cap {cap}")
    groundings: dict[tuple[str, ...], list[tuple[int, int]]] = {}
    for ei, e in enumerate(graph.edges):
        for pi, p in enumerate(patterns):
            if p.action != e.action:
                continue
            if p.indexes and max(p.indexes) > len(e.args):
                raise ConsistencyError(
                    f"pattern {p} exceeds observed arity {len(e.args)}"
                )
            obj = tuple(e.args[i - 1] for i in p.indexes)
            groundings.setdefault(obj, []).append((pi, ei))

    def satisfiable(member: list[tuple[int, int]], sigma: Sequence[int]) -> bool:
        member_ids = {ei for _, ei in member}
        parent = list(range(graph.num_nodes))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ei, e in enumerate(graph.edges):
            if ei not in member_ids:
                parent[find(e.src)] = find(e.dst)
        value: dict[int, int] = {}
        for pi, ei in member:
            e = graph.edges[ei]
            for node, val in ((e.src, 1 - sigma[pi]), (e.dst, sigma[pi])):
                root = find(node)
                if value.setdefault(root, val) != val:
                    return False
        return True

    for mask in range(1 << len(patterns)):
        sigma = [(mask >> i) & 1 for i in range(len(patterns))]
        if all(satisfiable(member, sigma) for member in groundings.values()):
            return SignAssignment({p: sigma[i] for i, p in enumerate(patterns)})
    return Inconsistent()


# ------------------------------------------------------------- admissibility


_WORKER_GRAPH: TraceGraph | None = None


def _worker_init(graph: TraceGraph) -> None:
    global _WORKER_GRAPH
    _WORKER_GRAPH = graph


def _worker_check(chunk: list[Feature]) -> list[CheckResult]:
    assert _WORKER_GRAPH is not None
    return [check_feature(_WORKER_GRAPH, f) for f in chunk]


def admissible_features(
    graph: TraceGraph,
    candidates: Sequence[Feature],
    *,
    workers: int | None = None,
) -> list[tuple[Feature, SignAssignment]]:
    """Filter candidates by consistency, preserving enumeration order.

    With workers > 1 the candidate set is checked by a process pool; the
    result is identical to the serial run.
    """
    candidates = list(candidates)
    if workers is None or workers <= 1 or len(candidates) < 2 * (workers or 1):
        results = (check_feature(graph, f) for f in candidates)
        return [
            (f, res) for f, res in zip(candidates, results)
            if isinstance(res, SignAssignment)
        ]
    chunk_size = max(1, (len(candidates) + workers * 8 - 1) // (workers * 8))
    chunks = [
        candidates[i : i + chunk_size] for i in range(0, len(candidates), chunk_size)
    ]
    out: list[tuple[Feature, SignAssignment]] = []
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_worker_init, initargs=(graph,)
    ) as pool:
        for chunk, results in zip(chunks, pool.map(_worker_check, chunks)):
            out.extend(
                (f, res)
                for f, res in zip(chunk, results)
                if isinstance(res, SignAssignment)
            )
    return out
