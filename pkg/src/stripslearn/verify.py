"""Verification of learned domains on held-out inputs.

Two checks run against test data sampled from a larger hidden instance.
Compatibility asks for no false positives: propagating each learned
predicate's truth values over the test graph, no executed action may have
a learned precondition that is defined and false at its pre-state (true
or undefined both pass — test information is incomplete).  Inapplicability
asks for no false negatives: wherever the hidden domain says an action
occurring in a test trace cannot fire at some prefix end-node, at least
one learned precondition must be defined and false there.

A verification run resamples training data, learns, and applies both
checks to a fixed family of test inputs; the verification rate is the
fraction of runs in which every check passes.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .consistency import get_index
from .core import (
    GroundAction,
    SchemaLiteral,
    StripsDomain,
    StripsError,
    StripsInstance,
    is_applicable,
)
from .features import ActionPattern
from .learner import LearnedDomain, LearnResult, PropagationConflict, learn, propagate_truth
from .sampling import SampleConfig, derive_seed, generate
from .tracegraph import TraceGraph

_WITNESS_CAP = 20  # stored per check; the count still reflects all of them


class VerifyError(StripsError):
    pass


# ------------------------------------------------------------------- results


@dataclass(frozen=True)
class Witness:
    """One concrete disagreement between the learned domain and test data."""

    node: int
    action: str
    args: tuple[str, ...]
    literal: SchemaLiteral | None  # violated precondition, when one exists

    def __str__(self) -> str:
        call = f"{self.action}({', '.join(self.args)})"
        if self.literal is None:
            return f"node {self.node}: {call} not rejected by any learned precondition"
        return f"node {self.node}: {call} violates {self.literal}"

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "action": self.action,
            "args": list(self.args),
            "literal": str(self.literal) if self.literal is not None else None,
        }


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check against one test input."""

    input_name: str
    kind: str  # "compatibility" | "inapplicability"
    passed: bool
    checked: int  # obligations examined (pre-states or probes)
    failures: int
    witnesses: tuple[Witness, ...]  # capped sample of the failures
    incomparable: tuple[str, ...] = ()  # action names with nothing to say

    def to_json(self) -> dict:
        return {
            "input": self.input_name,
            "kind": self.kind,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "witnesses": [w.to_json() for w in self.witnesses],
            "incomparable": list(self.incomparable),
        }


@dataclass(frozen=True)
class RunRecord:
    index: int
    train_seed: int
    train_edges: int
    num_candidates: int
    num_admissible: int
    learn_seconds: float
    checks: tuple[CheckReport, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        # Timings stay out: report files must be byte-stable across machines.
        return {
            "index": self.index,
            "train_seed": self.train_seed,
            "train_edges": self.train_edges,
            "candidates": self.num_candidates,
            "admissible": self.num_admissible,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass(frozen=True)
class VerificationReport:
    runs: tuple[RunRecord, ...]

    @property
    def verification_rate(self) -> float:
        return verification_rate(self.runs)

    @property
    def mean_admissible(self) -> float:
        return sum(r.num_admissible for r in self.runs) / len(self.runs)

    @property
    def mean_train_edges(self) -> float:
        return sum(r.train_edges for r in self.runs) / len(self.runs)

    @property
    def mean_seconds(self) -> float:
        return sum(r.learn_seconds for r in self.runs) / len(self.runs)

    def table(self, label: str = "") -> str:
        """One text row in the shape of the experiment tables:
        admissible count, training edges, learn time, verification rate."""
        head = f"{'':16s} {'#F_a':>8s} {'#E':>10s} {'time':>8s} {'Verif':>7s}"
        row = (
            f"{label:16s} {self.mean_admissible:8.1f} {self.mean_train_edges:10.1f} "
            f"{self.mean_seconds:7.1f}s {100 * self.verification_rate:6.0f}%"
        )
        return head + "\n" + row

    def to_json(self) -> dict:
        return {
            "runs": [r.to_json() for r in self.runs],
            "verification_rate": self.verification_rate,
            "mean_admissible": self.mean_admissible,
            "mean_train_edges": self.mean_train_edges,
        }


def verification_rate(runs: Sequence[RunRecord]) -> float:
    if not runs:
        raise VerifyError("verification rate over zero runs is undefined")
    return sum(1 for r in runs if r.passed) / len(runs)


# -------------------------------------------------------------------- checks


def _feature_literals(learned: LearnedDomain) -> dict[int, dict[str, list[SchemaLiteral]]]:
    """Per feature index: learned precondition literals grouped by action."""
    out: dict[int, dict[str, list[SchemaLiteral]]] = {i: {} for i in range(len(learned.features))}
    names = {f"f{i}": i for i in range(len(learned.features))}
    for action, schema in learned.domain.schemas.items():
        for lit in schema.preconditions:
            i = names.get(lit.predicate)
            if i is not None:
                out[i].setdefault(action, []).append(lit)
    return out


def check_compatibility(learned: LearnedDomain, test_graph: TraceGraph, *, name: str = "test") -> CheckReport:
    """No false positives: every executed test action must pass the learned
    preconditions under truth values propagated from the test graph itself.

    Static memorizing predicates never fail here: an argument tuple unseen
    in training leaves them undefined, and undefined passes.  Actions whose
    name never occurred in training are reported as incomparable.
    """
    index = get_index(test_graph)
    incomparable = tuple(
        sorted(
            a
            for a in index.by_action
            if a not in learned.domain.schemas
            or learned.domain.schemas[a].arity != index.by_action[a].args.shape[1]
        )
    )
    witnesses: list[Witness] = []
    failures = 0
    checked = 0
    by_feature = _feature_literals(learned)
    for i, (feature, signs) in enumerate(zip(learned.features, learned.signs)):
        try:
            valuation = propagate_truth(test_graph, feature, signs)
        except PropagationConflict as conflict:
            edge = test_graph.edges[conflict.edge_id]
            node = edge.src if conflict.at_src else edge.dst
            pinned = (1 - conflict.sign) if conflict.at_src else conflict.sign
            literal = SchemaLiteral(
                f"f{i}", tuple(j - 1 for j in conflict.pattern.indexes), bool(pinned)
            )
            failures += 1
            checked += 1
            if len(witnesses) < _WITNESS_CAP:
                witnesses.append(Witness(node, edge.action, edge.args, literal))
            continue
        for action, lits in sorted(by_feature[i].items()):
            table = index.by_action.get(action)
            if table is None or action in incomparable:
                continue
            src = table.src
            for lit in lits:
                t = tuple(j + 1 for j in lit.args)
                keys = index.pattern_keys(ActionPattern(action, t))
                vals = valuation.values(src, keys)
                bad = (vals >= 0) & (vals != int(lit.positive))
                checked += len(src)
                if bad.any():
                    failures += int(bad.sum())
                    for row in list(map(int, bad.nonzero()[0]))[
                        : max(0, _WITNESS_CAP - len(witnesses))
                    ]:
                        edge = test_graph.edges[int(table.ids[row])]
                        witnesses.append(Witness(edge.src, action, edge.args, lit))
    return CheckReport(
        name, "compatibility", failures == 0, checked, failures, tuple(witnesses), incomparable
    )


def _probe_points(
    hidden_domain: StripsDomain, test_graph: TraceGraph
) -> list[tuple[int, str, tuple[str, ...]]]:
    """Hidden-inapplicable (node, action, args) triples along test traces.

    For every trace and every ground action occurring in it, each prefix
    end-node where the hidden domain rejects that action is a probe; nodes
    where it is applicable prove nothing and are skipped.
    """
    states = test_graph.hidden_states
    if states is None:
        raise VerifyError(
            "test graph carries no hidden states; generate it with the bundled samplers"
        )
    probes: set[tuple[int, str, tuple[str, ...]]] = set()
    seen: set[tuple[int, str, tuple[str, ...]]] = set()
    for trace in test_graph.traces:
        if not trace:
            continue
        nodes = [test_graph.edges[trace[0]].src]
        nodes.extend(test_graph.edges[ei].dst for ei in trace)
        actions = sorted({(test_graph.edges[ei].action, test_graph.edges[ei].args) for ei in trace})
        for node in nodes:
            for action, args in actions:
                key = (node, action, args)
                if key in seen:
                    continue
                seen.add(key)
                if not is_applicable(hidden_domain, states[node], GroundAction(action, args)):
                    probes.add(key)
    return sorted(probes)


def check_inapplicability(
    learned: LearnedDomain,
    hidden: tuple[StripsDomain, StripsInstance],
    test_graph: TraceGraph,
    *,
    name: str = "test",
) -> CheckReport:
    """No false negatives: wherever the hidden domain rejects an action seen
    in a test trace, some learned precondition must be defined and false.

    Static predicates are ignored as rejection evidence — their atoms are
    unknown rather than false outside the observed tuples — so rejection
    must come from the feature predicates.  Only ``hidden[0]`` is consulted:
    the states to test against ride along inside the graph itself.
    """
    hidden_domain, _ = hidden
    return _check_probes(learned, test_graph, _probe_points(hidden_domain, test_graph), name)


def _check_probes(
    learned: LearnedDomain,
    test_graph: TraceGraph,
    probes: Sequence[tuple[int, str, tuple[str, ...]]],
    name: str,
) -> CheckReport:
    unsat = set(probes)
    by_feature = _feature_literals(learned)
    for i, (feature, signs) in enumerate(zip(learned.features, learned.signs)):
        if not unsat:
            break
        try:
            valuation = propagate_truth(test_graph, feature, signs)
        except PropagationConflict:
            continue  # surfaces as a compatibility failure instead
        lits_by_action = by_feature[i]
        for node, action, args in list(unsat):
            for lit in lits_by_action.get(action, ()):
                objects = tuple(args[j] for j in lit.args)
                value = valuation.value(node, objects)
                if value >= 0 and bool(value) != lit.positive:
                    unsat.discard((node, action, args))
                    break
    failed = sorted(unsat)
    witnesses = tuple(Witness(n, a, o, None) for n, a, o in failed[:_WITNESS_CAP])
    return CheckReport(
        name, "inapplicability", not failed, len(probes), len(failed), witnesses
    )


# ---------------------------------------------------------------------- runs


def default_test_configs(train_cfg: SampleConfig, master_seed: int) -> tuple[SampleConfig, ...]:
    """The fixed test inputs every run is checked against: one batch of
    traces and one partial-graph expansion, sized like the training data."""
    base = SampleConfig()
    traces = SampleConfig(
        kind="traces",
        n=train_cfg.n if train_cfg.kind == "traces" else base.n,
        L=train_cfg.L if train_cfg.kind == "traces" else base.L,
        seed=derive_seed(master_seed, "test/traces"),
    )
    partial = SampleConfig(
        kind="partial_graph",
        bfs_budget=train_cfg.bfs_budget if train_cfg.kind == "partial_graph" else base.bfs_budget,
        sample_roots=train_cfg.sample_roots if train_cfg.kind == "partial_graph" else base.sample_roots,
        seed=derive_seed(master_seed, "test/partial"),
    )
    return traces, partial


def run_once(
    hidden_domain: StripsDomain,
    train_instance: StripsInstance,
    train_cfg: SampleConfig,
    test_graphs: Sequence[tuple[str, TraceGraph]],
    *,
    probes: dict[str, list] | None = None,
    index: int = 0,
    max_arity: int | None = None,
    group_cap: int = 20,
    workers: int | None = None,
) -> RunRecord:
    """One verification run: sample training data, learn, check everything.

    ``probes`` may carry precomputed probe points per test input name; they
    only depend on the hidden domain and the test graphs, so the caller can
    share them across runs.
    """
    train_graph = generate(hidden_domain, train_instance, train_cfg)
    t0 = time.perf_counter()
    result: LearnResult = learn(
        train_graph, max_arity=max_arity, group_cap=group_cap, workers=workers
    )
    seconds = time.perf_counter() - t0
    checks: list[CheckReport] = []
    for input_name, graph in test_graphs:
        checks.append(check_compatibility(result.learned, graph, name=input_name))
        if probes is not None and input_name in probes:
            points = probes[input_name]
        else:
            points = _probe_points(hidden_domain, graph)
        checks.append(_check_probes(result.learned, graph, points, input_name))
    return RunRecord(
        index,
        train_cfg.seed,
        len(train_graph.edges),
        result.num_candidates,
        result.num_admissible,
        seconds,
        tuple(checks),
    )


_RUN_CTX: dict | None = None


def _init_run_worker(ctx: dict) -> None:
    global _RUN_CTX
    _RUN_CTX = ctx


def _run_in_worker(task: tuple[int, int]) -> RunRecord:
    assert _RUN_CTX is not None
    index, seed = task
    ctx = _RUN_CTX
    return run_once(
        ctx["domain"],
        ctx["train_instance"],
        replace(ctx["train_cfg"], seed=seed),
        ctx["test_graphs"],
        probes=ctx["probes"],
        index=index,
        max_arity=ctx["max_arity"],
        group_cap=ctx["group_cap"],
        workers=1,
    )


def run_verification(
    hidden_domain: StripsDomain,
    train_instance: StripsInstance,
    test_instance: StripsInstance,
    *,
    train_cfg: SampleConfig,
    runs: int,
    master_seed: int,
    test_cfgs: Sequence[SampleConfig] | None = None,
    max_arity: int | None = None,
    group_cap: int = 20,
    workers: int | None = None,
) -> VerificationReport:
    """R fresh training samples, each learned and checked against the same
    test inputs.  Test inputs are sampled once from the test instance (both
    regimes by default) with seeds derived from the master seed; training
    seeds derive per run.  ``workers`` parallelizes across runs.
    """
    if runs < 1:
        raise VerifyError("need at least one verification run")
    if test_cfgs is None:
        test_cfgs = default_test_configs(train_cfg, master_seed)
    test_graphs = [
        (f"{cfg.kind}(seed={cfg.seed})", generate(hidden_domain, test_instance, cfg))
        for cfg in test_cfgs
    ]
    probes = {name: _probe_points(hidden_domain, g) for name, g in test_graphs}
    tasks = [(i, derive_seed(master_seed, f"run/{i}/train")) for i in range(runs)]
    if workers is None or workers <= 1 or runs == 1:
        records = [
            run_once(
                hidden_domain,
                train_instance,
                replace(train_cfg, seed=seed),
                test_graphs,
                probes=probes,
                index=i,
                max_arity=max_arity,
                group_cap=group_cap,
                workers=workers,
            )
            for i, seed in tasks
        ]
    else:
        ctx = {
            "domain": hidden_domain,
            "train_instance": train_instance,
            "train_cfg": train_cfg,
            "test_graphs": test_graphs,
            "probes": probes,
            "max_arity": max_arity,
            "group_cap": group_cap,
        }
        with ProcessPoolExecutor(
            max_workers=min(workers, runs), initializer=_init_run_worker, initargs=(ctx,)
        ) as pool:
            records = list(pool.map(_run_in_worker, tasks))
    return VerificationReport(tuple(records))
