"""Training-input generation from a hidden domain and instance.

Three regimes: plain random traces, breadth-first partial state graphs
grown from a handful of sampled roots, and the full reachable state
graph.  All of them are deterministic functions of the config seed;
independent random decisions draw from named SHA-256 streams so that,
e.g., trace 3 is identical no matter how many traces are requested.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace

from .core import (
    GroundState,
    StripsDomain,
    StripsInstance,
    StripsError,
    applicable_actions,
    apply,
)
from .tracegraph import Edge, TraceGraph

_KINDS = ("traces", "partial_graph", "full_graph")


class SamplingError(StripsError):
    pass


@dataclass(frozen=True)
class SampleConfig:
    kind: str = "traces"
    n: int = 5  # trace count
    L: int = 50  # actions per trace
    seed: int = 0
    bfs_budget: int = 1000  # total edges across all BFS roots
    sample_roots: int = 1
    node_cap: int = 5_000_000  # full-graph safety valve

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise SamplingError(f"unknown sample kind {self.kind!r}")
        if self.n < 1 or self.L < 1:
            raise SamplingError("need n >= 1 traces of length L >= 1")
        if self.bfs_budget < 1 or self.sample_roots < 1 or self.node_cap < 1:
            raise SamplingError("budgets must be positive")


def stream_rng(seed: int, name: str) -> random.Random:
    """An independent generator for one named random decision stream."""
    digest = hashlib.sha256(f"{seed}/{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def derive_seed(seed: int, name: str) -> int:
    """A child seed for one named sub-experiment.

    Distinct from stream_rng's state for the same name, so deriving a seed
    and consuming a stream under one name never alias.
    """
    digest = hashlib.sha256(f"{seed}/{name}".encode()).digest()
    return int.from_bytes(digest[8:16], "big") >> 1


def generate(domain: StripsDomain, instance: StripsInstance, cfg: SampleConfig) -> TraceGraph:
    if cfg.kind == "traces":
        return sample_traces(domain, instance, cfg)
    if cfg.kind == "partial_graph":
        return bfs_partial_graph(domain, instance, cfg)
    return full_state_graph(domain, instance, cfg)


def _offset_walk(
    domain: StripsDomain,
    instance: StripsInstance,
    state: GroundState,
    steps: int,
    rng: random.Random,
) -> GroundState:
    for _ in range(steps):
        acts = applicable_actions(domain, instance, state)
        if not acts:
            break
        state = apply(domain, state, rng.choice(acts), check=False)
    return state


def sample_traces(
    domain: StripsDomain, instance: StripsInstance, cfg: SampleConfig
) -> TraceGraph:
    """n random applicable walks of length L.

    The first starts at the initial state; each other trace starts where a
    fresh uniform walk of m ~ U{2L..5L} steps from the initial state ends.
    Walks that hit a state with no applicable action stop early and the
    trace is flagged as truncated.
    """
    s0 = instance.initial_state
    if not applicable_actions(domain, instance, s0):
        raise SamplingError("no action is applicable in the initial state")
    traces: list[list[tuple[str, tuple[str, ...]]]] = []
    truncated: list[int] = []
    states: list[GroundState] = []
    for i in range(cfg.n):
        rng = stream_rng(cfg.seed, f"trace/{i}")
        state = s0
        if i > 0:
            state = _offset_walk(
                domain, instance, s0, rng.randint(2 * cfg.L, 5 * cfg.L), rng
            )
        trace: list[tuple[str, tuple[str, ...]]] = []
        states.append(state)
        for _ in range(cfg.L):
            acts = applicable_actions(domain, instance, state)
            if not acts:
                truncated.append(i)
                break
            action = rng.choice(acts)
            trace.append((action.name, action.args))
            state = apply(domain, state, action, check=False)
            states.append(state)
        traces.append(trace)
    graph = TraceGraph.from_traces(
        traces, objects=instance.objects, truncated=truncated
    )
    graph.hidden_states = states  # ground truth for verification probes
    return graph


def bfs_partial_graph(
    domain: StripsDomain, instance: StripsInstance, cfg: SampleConfig
) -> TraceGraph:
    """Breadth-first expansions around sample_roots roots.

    The edge budget is split evenly across roots (remainder to the first).
    States are deduplicated within one expansion, not across roots: two
    expansions that visit the same hidden state keep separate nodes, since
    a learner cannot know they coincide.  Every edge becomes a one-action
    trace so downstream code needs no special casing.
    """
    s0 = instance.initial_state
    if not applicable_actions(domain, instance, s0):
        raise SamplingError("no action is applicable in the initial state")
    per_root = cfg.bfs_budget // cfg.sample_roots
    if per_root < 1:
        raise SamplingError("bfs_budget smaller than the number of roots")
    remainder = cfg.bfs_budget - per_root * cfg.sample_roots

    edges: list[Edge] = []
    node_states: list[GroundState] = []
    initial: list[int] = []
    for r in range(cfg.sample_roots):
        rng = stream_rng(cfg.seed, f"root/{r}")
        root_state = s0
        if r > 0:
            steps = rng.randint(2 * cfg.bfs_budget, 5 * cfg.bfs_budget)
            root_state = _offset_walk(domain, instance, s0, steps, rng)
        budget = per_root + (remainder if r == 0 else 0)
        ids: dict[GroundState, int] = {root_state: len(node_states)}
        if r == 0:
            initial.append(len(node_states))
        node_states.append(root_state)
        frontier = [root_state]
        spent = 0
        while frontier and spent < budget:
            next_frontier: list[GroundState] = []
            for state in frontier:
                for action in applicable_actions(domain, instance, state):
                    succ = apply(domain, state, action, check=False)
                    tgt = ids.get(succ)
                    if tgt is None:
                        tgt = ids[succ] = len(node_states)
                        node_states.append(succ)
                        next_frontier.append(succ)
                    edges.append(Edge(ids[state], tgt, action.name, action.args))
                    spent += 1
                    if spent >= budget:
                        break
                if spent >= budget:
                    break
            frontier = next_frontier
    traces = [[i] for i in range(len(edges))]
    graph = TraceGraph(len(node_states), edges, traces, initial, instance.objects)
    graph.hidden_states = node_states
    return graph


def full_state_graph(
    domain: StripsDomain,
    instance: StripsInstance,
    cfg: SampleConfig | None = None,
) -> TraceGraph:
    """Every reachable state and transition, BFS order from the initial state."""
    cap = cfg.node_cap if cfg is not None else SampleConfig().node_cap
    s0 = instance.initial_state
    ids: dict[GroundState, int] = {s0: 0}
    node_states: list[GroundState] = [s0]
    edges: list[Edge] = []
    frontier = [s0]
    while frontier:
        next_frontier: list[GroundState] = []
        for state in frontier:
            for action in applicable_actions(domain, instance, state):
                succ = apply(domain, state, action, check=False)
                tgt = ids.get(succ)
                if tgt is None:
                    if len(node_states) >= cap:
                        raise SamplingError(
                            f"reachable state space exceeds the cap of {cap} nodes"
                        )
                    tgt = ids[succ] = len(node_states)
                    node_states.append(succ)
                    next_frontier.append(succ)
                edges.append(Edge(ids[state], tgt, action.name, action.args))
        frontier = next_frontier
    traces = [[i] for i in range(len(edges))]
    graph = TraceGraph(len(node_states), edges, traces, [0], instance.objects)
    graph.hidden_states = node_states
    return graph
