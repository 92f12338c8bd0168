"""From admissible features to a STRIPS domain and instance.

Admissible features become predicates.  Effects fall out of the supports
and their sign maps; truth values of every ground atom are propagated over
the input graph (they flip across the grounding's member edges and persist
across everything else); preconditions are voted per action and index
tuple over the propagated pre-state values; finally one static predicate
per action memorizes which argument tuples were observed at all.  The
initial state of the learned instance reads the propagated values at the
input's designated initial node.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .consistency import SignAssignment, _cc, admissible_features, get_index
from .core import (
    Atom,
    ActionSchema,
    PredicateSymbol,
    SchemaLiteral,
    StripsDomain,
    StripsError,
    StripsInstance,
)
from .features import ActionPattern, Feature, enumerate_features, make_feature
from .tracegraph import TraceGraph
from .typeinf import TypeAssignment, infer_types


class LearnerError(StripsError):
    pass


class PropagationConflict(LearnerError):
    """Truth propagation hit two irreconcilable pins for one grounding.

    Cannot happen when the feature is admissible with the given signs on
    the same graph; on a different graph it means the sign map contradicts
    the observed behavior, which verification treats as a failed check.
    """

    def __init__(self, feature, grounding, edge_id, pattern, sign, at_src):
        self.feature = feature
        self.grounding = grounding
        self.edge_id = edge_id
        self.pattern = pattern
        self.sign = sign
        self.at_src = at_src
        where = "before" if at_src else "after"
        super().__init__(
            f"conflicting values for {feature} on grounding {grounding} "
            f"{where} edge {edge_id} ({pattern} with sign {sign})"
        )


# ----------------------------------------------------------------- valuation


class AtomValuation:
    """Truth values of one feature's ground atoms at every node.

    The table is dense: rows are nodes, columns are the groundings that
    occur in the input (encoded with the graph index's key scheme), and
    entries are 1 (true), 0 (false) or -1 (undefined).  A grounding is
    defined on exactly the connected components that contain one of its
    member edges.
    """

    def __init__(self, graph, feature, signs, keys, table):
        self.graph = graph
        self.feature = feature
        self.signs = dict(signs)
        self._index = get_index(graph)
        self._keys = keys
        self._table = table

    def groundings(self) -> list[tuple[str, ...]]:
        k = self.feature.arity
        return [self._index.decode_key(int(key), k) for key in self._keys]

    def value(self, node: int, objects: Sequence[str]) -> int:
        """The value of feature(objects) at one node; -1 when undefined."""
        ids = self._index.object_ids
        key = 0
        for o in reversed(tuple(objects)):
            oid = ids.get(o)
            if oid is None:
                return -1
            key = key * self._index.radix + oid
        j = int(np.searchsorted(self._keys, key))
        if j == len(self._keys) or self._keys[j] != key:
            return -1
        return int(self._table[node, j])

    def values(self, nodes: np.ndarray, keys: np.ndarray) -> np.ndarray:
        """Batch lookup: one int8 value per (node, grounding key) pair."""
        out = np.full(len(nodes), -1, np.int8)
        if len(self._keys) == 0 or len(nodes) == 0:
            return out
        j = np.searchsorted(self._keys, keys)
        j[j == len(self._keys)] = 0
        found = self._keys[j] == keys
        out[found] = self._table[np.asarray(nodes)[found], j[found]]
        return out

    def values_at(self, node: int) -> dict[tuple[str, ...], bool]:
        """All defined ground atoms of the feature at one node."""
        row = self._table[node]
        k = self.feature.arity
        return {
            self._index.decode_key(int(self._keys[j]), k): bool(row[j])
            for j in np.nonzero(row >= 0)[0]
        }


def propagate_truth(
    graph: TraceGraph, feature: Feature, signs: Mapping[ActionPattern, int]
) -> AtomValuation:
    """Derive the value of every grounding of ``feature`` at every node.

    Right after a member edge for grounding o the atom holds iff the
    pattern's sign is 1; right before, the inverse; across every other
    edge the value persists, in both directions.  The feature must be
    admissible under ``signs`` on this graph — a clash raises LearnerError.
    """
    index = get_index(graph)
    present = [p for p in feature.support if p.action in index.by_action]
    if not present:
        keys = np.empty(0, np.int64)
        table = np.full((graph.num_nodes, 0), -1, np.int8)
        return AtomValuation(graph, feature, signs, keys, table)

    actions = frozenset(p.action for p in present)
    _, labels1 = index.contraction(actions)
    names = sorted(actions)
    offsets = {}
    total = 0
    for a in names:
        offsets[a] = total
        total += len(index.by_action[a].ids)
    cat_ids = np.concatenate([index.by_action[a].ids for a in names])
    cat_src = np.concatenate([labels1[index.by_action[a].src] for a in names])
    cat_dst = np.concatenate([labels1[index.by_action[a].dst] for a in names])
    touched, inverse = np.unique(np.concatenate([cat_src, cat_dst]), return_inverse=True)
    cat_src = inverse[:total]
    cat_dst = inverse[total:]
    num_classes = len(touched)

    per_pattern = []
    all_keys = []
    for p in present:
        keys = index.pattern_keys(p)
        all_keys.append(keys)
        per_pattern.append((int(signs[p]), p, keys))
    space = np.unique(np.concatenate(all_keys))
    lookups = []
    for sign, p, keys in per_pattern:
        gids = np.searchsorted(space, keys)
        order = np.argsort(gids, kind="stable")
        lookups.append((sign, p, gids[order], order))

    # Where each node lands among the member-edge endpoint classes; nodes
    # whose class never touches a member edge stay undefined throughout.
    dense_of = np.searchsorted(touched, labels1)
    dense_of[dense_of == num_classes] = 0
    ok = touched[dense_of] == labels1
    ok_nodes = np.nonzero(ok)[0]
    ok_dense = dense_of[ok_nodes]

    table = np.full((graph.num_nodes, len(space)), -1, np.int8)
    kept = np.ones(total, bool)
    for g in range(len(space)):
        occs = []
        for sign, p, sorted_gids, order in lookups:
            lo = np.searchsorted(sorted_gids, g)
            hi = np.searchsorted(sorted_gids, g + 1)
            if lo < hi:
                rows = order[lo:hi] + offsets[p.action]
                occs.append((sign, p, rows))
                kept[rows] = False
        _, comp = _cc(num_classes, cat_src[kept], cat_dst[kept])
        class_value = np.full(comp.max() + 1, -1, np.int8)
        for sign, p, rows in occs:
            for at_src, classes, val in (
                (True, comp[cat_src[rows]], np.int8(1 - sign)),
                (False, comp[cat_dst[rows]], np.int8(sign)),
            ):
                prior = class_value[classes]
                clash = (prior >= 0) & (prior != val)
                if clash.any():
                    row = rows[int(np.argmax(clash))]
                    raise PropagationConflict(
                        feature,
                        index.decode_key(int(space[g]), feature.arity),
                        int(cat_ids[row]),
                        p,
                        sign,
                        at_src,
                    )
                class_value[classes] = val
        for _, _, rows in occs:
            kept[rows] = True
        col = class_value[comp]
        table[ok_nodes, g] = col[ok_dense]
    return AtomValuation(graph, feature, signs, space, table)


# -------------------------------------------------------------------- voting


def _feature_votes(
    graph: TraceGraph,
    types: TypeAssignment,
    pname: str,
    feature: Feature,
    valuation: AtomValuation,
) -> dict[str, set[SchemaLiteral]]:
    """Precondition votes for one feature, per action schema.

    For every action a and injective index tuple t of the feature's arity,
    collect the value of feature(t[o]) at the pre-state of every a(o) in
    the input; unanimously true occurrences yield a positive precondition,
    unanimously false a negative one, anything else nothing.  Tuples whose
    argument types cannot match any grounding are skipped outright.
    """
    index = get_index(graph)
    k = feature.arity
    ftt = feature.type_tuple(types)
    out: dict[str, set[SchemaLiteral]] = {}
    for action in sorted(index.by_action):
        arity = types.arities[action]
        if k > arity:
            continue
        src = index.by_action[action].src
        for t in permutations(range(1, arity + 1), k):
            if types.type_tuple(action, t) != ftt:
                continue
            keys = index.pattern_keys(ActionPattern(action, t))
            vals = valuation.values(src, keys)
            defined = vals[vals >= 0]
            if len(defined) == 0:
                continue
            args = tuple(i - 1 for i in t)
            if (defined == 1).all():
                out.setdefault(action, set()).add(SchemaLiteral(pname, args, True))
            elif (defined == 0).all():
                out.setdefault(action, set()).add(SchemaLiteral(pname, args, False))
    return out


def infer_preconditions(
    graph: TraceGraph,
    admissible: Sequence[Feature],
    valuations: Sequence[AtomValuation],
) -> dict[str, set[SchemaLiteral]]:
    """Vote preconditions for every (action, index tuple, feature) triple.

    ``valuations`` must align with ``admissible``; feature i becomes
    predicate ``fi``.  Every effect's complement is recovered here, since
    pre-state values of a support pattern's own occurrences are pinned to
    the inverted sign.
    """
    if len(admissible) != len(valuations):
        raise LearnerError("one valuation per admissible feature, in order")
    types = infer_types(graph)
    merged: dict[str, set[SchemaLiteral]] = {a: set() for a in types.arities}
    for i, (feature, valuation) in enumerate(zip(admissible, valuations)):
        if valuation.feature != feature:
            raise LearnerError(f"valuation {i} is for {valuation.feature}, not {feature}")
        for action, lits in _feature_votes(graph, types, f"f{i}", feature, valuation).items():
            merged[action] |= lits
    return merged


# ----------------------------------------------------------------- assembly


@dataclass(frozen=True)
class LearnedDomain:
    """A learned StripsDomain plus the metadata that produced it.

    ``features[i]`` is the support of predicate ``fi``; ``signs[i]`` maps
    each support pattern to the sign its effects carry.  ``statics`` maps
    action names to their memorizing predicate, once added.
    """

    domain: StripsDomain
    features: tuple[Feature, ...]
    signs: tuple[Mapping[ActionPattern, int], ...]
    param_types: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    statics: Mapping[str, str] = field(default_factory=dict)

    def predicate_name(self, i: int) -> str:
        return f"f{i}"

    def metadata(self) -> dict:
        """JSON-ready sidecar: supports, signs, statics and types."""
        preds = {}
        for i, (feature, signs) in enumerate(zip(self.features, self.signs)):
            preds[f"f{i}"] = {
                "arity": feature.arity,
                "support": {str(p): int(signs[p]) for p in feature.support},
            }
        return {
            "domain": self.domain.name,
            "predicates": preds,
            "static": {p: a for a, p in sorted(self.statics.items())},
            "parameter_types": {a: list(ts) for a, ts in sorted(self.param_types.items())},
        }


LearnedInstance = StripsInstance


def build_domain(
    graph: TraceGraph,
    admissible: Sequence[Feature],
    signs: Sequence[Mapping[ActionPattern, int]],
    preconds: Mapping[str, Iterable[SchemaLiteral]],
    *,
    name: str = "learned",
) -> LearnedDomain:
    """Assemble the learned domain: feature predicates, signed effects,
    voted preconditions.  Schemas carry the arities observed in the input."""
    if len(admissible) != len(signs):
        raise LearnerError("one sign map per admissible feature, in order")
    types = infer_types(graph)
    arities = types.arities
    predicates = [PredicateSymbol(f"f{i}", f.arity) for i, f in enumerate(admissible)]
    effects: dict[str, list[SchemaLiteral]] = {a: [] for a in arities}
    for i, (feature, sign_map) in enumerate(zip(admissible, signs)):
        for p in feature.support:
            if p.action not in arities:
                continue
            args = tuple(j - 1 for j in p.indexes)
            effects[p.action].append(SchemaLiteral(f"f{i}", args, bool(sign_map[p])))
    schemas = []
    for action in sorted(arities):
        schemas.append(
            ActionSchema(
                action,
                arities[action],
                tuple(sorted(set(preconds.get(action, ())))),
                tuple(effects[action]),
            )
        )
    domain = StripsDomain.from_schemas(name, predicates, schemas)
    param_types = {
        a: tuple(f"t{t}" for t in types.type_tuple(a, tuple(range(1, arities[a] + 1))))
        for a in sorted(arities)
    }
    return LearnedDomain(domain, tuple(admissible), tuple(dict(s) for s in signs), param_types)


_PATTERN_RE = re.compile(r"^([A-Za-z0-9_-]+)\[([0-9,]*)\]$")


def _parse_pattern(text: str) -> ActionPattern:
    m = _PATTERN_RE.match(text)
    if m is None:
        raise LearnerError(f"malformed pattern string {text!r}")
    indexes = tuple(int(s) for s in m.group(2).split(",")) if m.group(2) else ()
    return ActionPattern(m.group(1), indexes)


def learned_from_metadata(domain: StripsDomain, meta: Mapping) -> LearnedDomain:
    """Rebuild a LearnedDomain from a parsed domain and its metadata sidecar.

    The inverse of :meth:`LearnedDomain.metadata`, used to pick up a
    previously written domain for fresh verification runs.
    """
    preds = meta.get("predicates", {})
    features: list[Feature] = []
    signs: list[dict[ActionPattern, int]] = []
    for i in range(len(preds)):
        name = f"f{i}"
        if name not in preds:
            raise LearnerError(f"metadata predicates are not contiguous: missing {name}")
        entry = preds[name]
        sign_map = {_parse_pattern(s): int(v) for s, v in entry["support"].items()}
        feature = make_feature(sign_map)
        if feature.arity != int(entry["arity"]):
            raise LearnerError(f"{name}: support arity disagrees with recorded arity")
        if domain.predicates.get(name) != feature.arity:
            raise LearnerError(f"{name}: no matching predicate in the domain")
        features.append(feature)
        signs.append(sign_map)
    statics = {a: p for p, a in meta.get("static", {}).items()}
    param_types = {a: tuple(ts) for a, ts in meta.get("parameter_types", {}).items()}
    return LearnedDomain(domain, tuple(features), tuple(signs), param_types, statics)


def add_static_predicates(
    learned: LearnedDomain, graph: TraceGraph
) -> tuple[LearnedDomain, frozenset[Atom]]:
    """Give every action a memorizing predicate over its full argument list.

    ``p_a(x1..xk)`` becomes a positive precondition of ``a`` and is true in
    the initial state for exactly the argument tuples observed in the input.
    """
    arities = graph.action_names()
    predicates = dict(learned.domain.predicates)
    schemas = {}
    statics = dict(learned.statics)
    for action, schema in learned.domain.schemas.items():
        pname = f"p_{action}"
        if pname in predicates:
            raise LearnerError(f"static predicate name {pname} already taken")
        predicates[pname] = schema.arity
        statics[action] = pname
        guard = SchemaLiteral(pname, tuple(range(schema.arity)), True)
        schemas[action] = ActionSchema(
            action, schema.arity, schema.preconditions + (guard,), schema.effects
        )
    domain = StripsDomain(learned.domain.name, predicates, schemas)
    atoms = frozenset((f"p_{e.action}", e.args) for e in graph.edges if e.action in arities)
    return (
        LearnedDomain(domain, learned.features, learned.signs, learned.param_types, statics),
        atoms,
    )


def build_instance(
    graph: TraceGraph,
    learned: LearnedDomain,
    valuations: Sequence[AtomValuation],
    *,
    name: str = "learned-init",
) -> LearnedInstance:
    """Read the initial state off the designated initial node.

    Defined-true atoms land in init, defined-false ones become explicit
    negations, undefined ones are omitted entirely (absence means unknown,
    not false).  Static atoms record the observed ground actions.
    """
    if not graph.initial:
        raise LearnerError("the input graph has no designated initial node")
    node = graph.initial[0]
    init_true: set[Atom] = set()
    init_false: set[Atom] = set()
    if len(valuations) != len(learned.features):
        raise LearnerError("one valuation per learned feature, in order")
    for i, valuation in enumerate(valuations):
        if valuation.feature != learned.features[i]:
            raise LearnerError(f"valuation {i} does not match feature f{i}")
        pname = f"f{i}"
        for objects, value in valuation.values_at(node).items():
            (init_true if value else init_false).add((pname, objects))
    for action, pname in learned.statics.items():
        init_true |= {(pname, e.args) for e in graph.edges if e.action == action}
    return StripsInstance(name, learned.domain.name, graph.objects, init_true, init_false)


# ------------------------------------------------------------------ pipeline


@dataclass
class LearnResult:
    learned: LearnedDomain
    instance: LearnedInstance
    types: TypeAssignment
    num_candidates: int
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def num_admissible(self) -> int:
        return len(self.learned.features)


def learn(
    graph: TraceGraph,
    *,
    max_arity: int | None = None,
    group_cap: int = 20,
    workers: int | None = None,
    name: str = "learned",
) -> LearnResult:
    """The whole pipeline: types, candidates, admissibility, assembly.

    ``max_arity`` defaults to the largest observed action arity.  Features
    are processed one at a time after the admissibility filter, so peak
    memory stays proportional to a single valuation table.
    """
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    types = infer_types(graph)
    timings["types"] = time.perf_counter() - t0
    if max_arity is None:
        max_arity = max(types.arities.values(), default=0)

    t0 = time.perf_counter()
    candidates = enumerate_features(types, max_arity, group_cap=group_cap)
    timings["enumerate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    admitted = admissible_features(graph, candidates, workers=workers)
    timings["filter"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    features = [f for f, _ in admitted]
    signs = [s for _, s in admitted]
    initial = graph.initial[0] if graph.initial else None
    merged: dict[str, set[SchemaLiteral]] = {a: set() for a in types.arities}
    init_true: set[Atom] = set()
    init_false: set[Atom] = set()
    for i, (feature, sign_map) in enumerate(admitted):
        valuation = propagate_truth(graph, feature, sign_map)
        for action, lits in _feature_votes(graph, types, f"f{i}", feature, valuation).items():
            merged[action] |= lits
        if initial is not None:
            for objects, value in valuation.values_at(initial).items():
                (init_true if value else init_false).add((f"f{i}", objects))
    timings["propagate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    learned = build_domain(graph, features, signs, merged, name=name)
    learned, static_atoms = add_static_predicates(learned, graph)
    if initial is None:
        raise LearnerError("the input graph has no designated initial node")
    instance = StripsInstance(
        f"{name}-init", learned.domain.name, graph.objects,
        init_true | static_atoms, init_false,
    )
    timings["assemble"] = time.perf_counter() - t0
    return LearnResult(learned, instance, types, len(candidates), timings)


# -------------------------------------------------------------------- replay


@dataclass(frozen=True)
class ReplayFailure:
    step: int
    action: str
    args: tuple[str, ...]
    literal: SchemaLiteral

    def __str__(self) -> str:
        call = f"{self.action}({', '.join(self.args)})"
        return f"step {self.step}: {call} requires {self.literal}, known false"


def replay_trace(
    learned: LearnedDomain,
    instance: LearnedInstance,
    actions: Iterable[tuple[str, tuple[str, ...]]],
) -> ReplayFailure | None:
    """Execute ground actions from the learned initial state.

    States are partial: an atom is known-true, known-false, or unknown.
    A precondition only blocks when its atom is known and disagrees;
    effects overwrite knowledge.  Returns the first failure, else None.
    """
    known: dict[Atom, bool] = {}
    for atom in instance.init_true:
        known[atom] = True
    for atom in instance.init_false:
        known[atom] = False
    for step, (action, args) in enumerate(actions):
        schema = learned.domain.schemas.get(action)
        if schema is None:
            raise LearnerError(f"replay step {step}: unknown action {action!r}")
        if len(args) != schema.arity:
            raise LearnerError(
                f"replay step {step}: {action} expects {schema.arity} args, got {len(args)}"
            )
        for lit in schema.preconditions:
            value = known.get(lit.ground(args))
            if value is not None and value != lit.positive:
                return ReplayFailure(step, action, tuple(args), lit)
        for lit in schema.effects:
            known[lit.ground(args)] = lit.positive
    return None
