"""Command line front end: generate, learn, verify, pipeline.

``generate`` samples a training input from a hidden instance and writes a
trace graph file; ``learn`` turns such a file into a domain, an instance
and a metadata sidecar; ``verify`` replays a previously learned domain
against fresh test inputs; ``pipeline`` chains all three over R seeded
runs and prints one averaged table row.

Exit codes: 2 bad configuration, 3 generation failure, 4 empty input
graph, 5 verification below threshold.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import benchmarks
from .core import StripsDomain, StripsError, StripsInstance
from .learner import learn, learned_from_metadata
from .pddl import emit_domain, emit_instance, parse_domain, parse_instance
from .sampling import SampleConfig, SamplingError, derive_seed, generate
from .tracegraph import TraceGraph
from .verify import check_compatibility, check_inapplicability, run_verification

EXIT_CONFIG = 2
EXIT_GENERATION = 3
EXIT_EMPTY_GRAPH = 4
EXIT_VERIFICATION = 5

_KIND_ALIASES = {
    "full": "full_graph",
    "partial": "partial_graph",
    "traces": "traces",
    "full_graph": "full_graph",
    "partial_graph": "partial_graph",
}


class CliError(Exception):
    """A configuration problem reportable to the user (exit code 2)."""


# ------------------------------------------------------------- configuration


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one batch needs: inputs, sampling, budgets, seed, output."""

    label: str
    domain: StripsDomain
    train: StripsInstance
    test: StripsInstance | None
    train_cfg: SampleConfig
    max_arity: int | None
    group_cap: int
    workers: int
    seed: int
    out: Path


def _resolve_workers(flag: int | None) -> int:
    env = os.environ.get("SIFT_WORKERS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"SIFT_WORKERS must be an integer, got {env!r}") from None
    if flag is not None:
        return max(1, flag)
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover - non-linux fallback
        return os.cpu_count() or 1


def _read_text(path: str, what: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"{what} file not found: {path}")
    return p.read_text(encoding="utf-8")


def _load_inputs(args, *, need_test: bool) -> tuple[str, StripsDomain, StripsInstance, StripsInstance | None]:
    """Resolve (label, domain, train instance, test instance) from either a
    bundled benchmark name or explicit PDDL file paths."""
    if args.benchmark:
        try:
            entry = benchmarks.get_benchmark(args.benchmark)
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from None
        domain, train, test = entry.load()
        return entry.name, domain, train, test
    if not args.domain:
        raise CliError("either --benchmark or --domain is required")
    domain = parse_domain(_read_text(args.domain, "domain"))
    if not args.train:
        raise CliError("--train is required when --domain is given")
    train = parse_instance(_read_text(args.train, "training instance"), domain=domain)
    test = None
    if need_test:
        if not args.test:
            raise CliError("--test is required for this command")
        test = parse_instance(_read_text(args.test, "test instance"), domain=domain)
    return domain.name, domain, train, test


def _benchmark_defaults(args) -> dict:
    if not args.benchmark:
        return {}
    try:
        entry = benchmarks.get_benchmark(args.benchmark)
    except KeyError:
        return {}
    return dict(entry.expected)


def _sample_config(args, *, defaults: dict | None = None) -> SampleConfig:
    """Build a SampleConfig from flags, falling back to the benchmark's
    recorded operating point and then the library defaults."""
    kind = _KIND_ALIASES.get(args.kind)
    if kind is None:
        raise CliError(f"unknown sample kind {args.kind!r}")
    defaults = defaults or {}
    base = SampleConfig()
    traces = defaults.get("traces", {})
    partial = defaults.get("partial", {})
    n = args.n if args.n is not None else traces.get("count", base.n)
    L = args.L if args.L is not None else traces.get("length", base.L)
    budget = args.bfs_budget if args.bfs_budget is not None else partial.get("budget", base.bfs_budget)
    roots = args.roots if args.roots is not None else partial.get("roots", base.sample_roots)
    try:
        return SampleConfig(
            kind=kind,
            n=n,
            L=L,
            seed=args.seed,
            bfs_budget=budget,
            sample_roots=roots,
            node_cap=args.node_cap,
        )
    except SamplingError as exc:
        raise CliError(str(exc)) from None


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")


# ----------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    label, domain, train, _ = _load_inputs(args, need_test=False)
    cfg = _sample_config(args, defaults=_benchmark_defaults(args))
    try:
        graph = generate(domain, train, cfg)
    except (SamplingError, StripsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    out = _out_dir(args)
    path = out / f"{label}-{cfg.kind}-seed{cfg.seed}.tracegraph.json"
    path.write_text(graph.to_json() + "\n", encoding="utf-8")
    print(f"{label}: {cfg.kind} sample, V={graph.num_nodes} E={len(graph.edges)}")
    print(f"wrote {path}")
    return 0


def cmd_learn(args) -> int:
    text = _read_text(args.graph, "trace graph")
    graph = TraceGraph.from_json(text)
    if not graph.edges:
        print("error: the input graph has no edges to learn from", file=sys.stderr)
        return EXIT_EMPTY_GRAPH
    workers = _resolve_workers(args.workers)
    result = learn(
        graph,
        max_arity=args.max_arity,
        group_cap=args.group_cap,
        workers=workers,
        name=args.name,
    )
    print(f"#F  = {result.num_candidates} candidate features")
    print(f"#F_a = {result.num_admissible} admissible")
    for stage, seconds in result.timings.items():
        print(f"  {stage:10s} {seconds:8.2f}s")
    out = _out_dir(args)
    comments = [f"learned from {Path(args.graph).name}"]
    (out / "domain.pddl").write_text(
        emit_domain(result.learned.domain, comments, param_types=result.learned.param_types),
        encoding="utf-8",
    )
    (out / "instance.pddl").write_text(emit_instance(result.instance, comments), encoding="utf-8")
    _write_json(out / "metadata.json", result.learned.metadata())
    print(f"wrote {out / 'domain.pddl'}, {out / 'instance.pddl'}, {out / 'metadata.json'}")
    return 0


def cmd_verify(args) -> int:
    label, domain, train, test = _load_inputs(args, need_test=True)
    learned_dir = Path(args.learned)
    domain_text = _read_text(str(learned_dir / "domain.pddl"), "learned domain")
    meta_text = _read_text(str(learned_dir / "metadata.json"), "metadata")
    learned = learned_from_metadata(parse_domain(domain_text), json.loads(meta_text))

    defaults = _benchmark_defaults(args)
    traces = defaults.get("traces", {})
    partial = defaults.get("partial", {})
    base = SampleConfig()
    test_cfgs = (
        SampleConfig(
            kind="traces",
            n=args.n if args.n is not None else traces.get("count", base.n),
            L=args.L if args.L is not None else traces.get("length", base.L),
            seed=derive_seed(args.seed, "test/traces"),
        ),
        SampleConfig(
            kind="partial_graph",
            bfs_budget=args.bfs_budget if args.bfs_budget is not None else partial.get("budget", base.bfs_budget),
            sample_roots=args.roots if args.roots is not None else partial.get("roots", base.sample_roots),
            seed=derive_seed(args.seed, "test/partial"),
        ),
    )
    checks = []
    for cfg in test_cfgs:
        try:
            test_graph = generate(domain, test, cfg)
        except (SamplingError, StripsError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_GENERATION
        input_name = f"{cfg.kind}(seed={cfg.seed})"
        checks.append(check_compatibility(learned, test_graph, name=input_name))
        checks.append(check_inapplicability(learned, (domain, test), test_graph, name=input_name))
    rate = 1.0 if all(c.passed for c in checks) else 0.0
    for c in checks:
        status = "ok" if c.passed else "FAIL"
        print(f"{c.kind:16s} {c.input_name:28s} {status}  ({c.failures}/{c.checked} violations)")
        for w in c.witnesses[:3]:
            print(f"    {w}")
    print(f"verification rate: {100 * rate:.0f}%  (threshold {100 * args.threshold:.0f}%)")
    out = _out_dir(args)
    _write_json(
        out / "verification.json",
        {
            "label": label,
            "learned": learned_dir.name,
            "rate": rate,
            "checks": [c.to_json() for c in checks],
        },
    )
    print(f"wrote {out / 'verification.json'}")
    return 0 if rate >= args.threshold else EXIT_VERIFICATION


def cmd_pipeline(args) -> int:
    label, domain, train, test = _load_inputs(args, need_test=True)
    train_cfg = _sample_config(args, defaults=_benchmark_defaults(args))
    cfg = PipelineConfig(
        label=label,
        domain=domain,
        train=train,
        test=test,
        train_cfg=train_cfg,
        max_arity=args.max_arity,
        group_cap=args.group_cap,
        workers=_resolve_workers(args.workers),
        seed=args.seed,
        out=_out_dir(args),
    )
    report = run_verification(
        cfg.domain,
        cfg.train,
        cfg.test,
        train_cfg=cfg.train_cfg,
        runs=args.runs,
        master_seed=cfg.seed,
        max_arity=cfg.max_arity,
        group_cap=cfg.group_cap,
        workers=cfg.workers,
    )
    print(report.table(label))
    doc = {
        "label": label,
        "train": {
            "kind": train_cfg.kind,
            "n": train_cfg.n,
            "L": train_cfg.L,
            "bfs_budget": train_cfg.bfs_budget,
            "sample_roots": train_cfg.sample_roots,
        },
        "runs": args.runs,
        "seed": cfg.seed,
        "report": report.to_json(),
    }
    _write_json(cfg.out / "pipeline.json", doc)
    print(f"wrote {cfg.out / 'pipeline.json'}")
    return 0


# ------------------------------------------------------------------- parser


def _add_input_flags(p: argparse.ArgumentParser, *, test: bool) -> None:
    p.add_argument("--benchmark", help="bundled benchmark name (see benchmarks module)")
    p.add_argument("--domain", help="hidden domain PDDL file")
    p.add_argument("--train", help="training instance PDDL file")
    if test:
        p.add_argument("--test", help="test instance PDDL file")


def _add_sampling_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", default="traces", help="traces | partial | full")
    p.add_argument("--n", type=int, default=None, help="number of traces")
    p.add_argument("--L", type=int, default=None, help="actions per trace")
    p.add_argument("--bfs-budget", type=int, default=None, help="partial-graph edge budget")
    p.add_argument("--roots", type=int, default=None, help="partial-graph root count")
    p.add_argument("--node-cap", type=int, default=5_000_000, help="full-graph node cap")


def _add_learn_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-arity", type=int, default=None, help="feature arity bound (default: observed)")
    p.add_argument("--group-cap", type=int, default=20, help="support-group size cap per arity bucket")
    p.add_argument("--workers", type=int, default=None, help="parallel workers (SIFT_WORKERS overrides)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stripslearn",
        description="Learn lifted STRIPS domains from traces and verify them on larger instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a training input and write a trace graph file")
    _add_input_flags(p, test=False)
    _add_sampling_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("learn", help="learn a domain from a trace graph file")
    p.add_argument("--graph", required=True, help="trace graph JSON file")
    p.add_argument("--name", default="learned", help="name of the learned domain")
    _add_learn_flags(p)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("verify", help="check a learned domain against fresh test inputs")
    _add_input_flags(p, test=True)
    p.add_argument("--learned", required=True, help="directory holding domain.pddl and metadata.json")
    p.add_argument("--n", type=int, default=None, help="test trace count")
    p.add_argument("--L", type=int, default=None, help="test trace length")
    p.add_argument("--bfs-budget", type=int, default=None)
    p.add_argument("--roots", type=int, default=None)
    p.add_argument("--threshold", type=float, default=1.0, help="required verification rate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pipeline", help="R seeded generate+learn+verify runs, averaged")
    _add_input_flags(p, test=True)
    _add_sampling_flags(p)
    _add_learn_flags(p)
    p.add_argument("--runs", type=int, default=25)
    p.add_argument("--seed", type=int, required=True, help="master seed (required for reproducibility)")
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StripsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
