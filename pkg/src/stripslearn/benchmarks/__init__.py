"""Bundled benchmark domains with reference statistics.

Each benchmark ships as three PDDL files (hidden domain, training instance,
test instance) plus a manifest row of reference statistics: candidate and
admissible feature counts, the training instance's full reachable graph
size, and default sampling parameters per input regime.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Mapping

from ..core import StripsDomain, StripsInstance
from ..pddl import parse_domain, parse_instance

__all__ = ["BenchmarkEntry", "get_benchmark", "list_benchmarks"]


def _data_root():
    return resources.files(__name__) / "data"


@dataclass(frozen=True)
class BenchmarkEntry:
    """One benchmark: file names plus the manifest's reference statistics."""

    name: str
    domain_file: str
    train_file: str
    test_file: str
    expected: Mapping[str, Any] = field(repr=False)

    def _read(self, fname: str) -> str:
        return (_data_root() / fname).read_text(encoding="utf-8")

    def load_domain(self) -> StripsDomain:
        return parse_domain(self._read(self.domain_file))

    def load_train(self) -> StripsInstance:
        return parse_instance(self._read(self.train_file), domain=self.load_domain())

    def load_test(self) -> StripsInstance:
        return parse_instance(self._read(self.test_file), domain=self.load_domain())

    def load(self) -> tuple[StripsDomain, StripsInstance, StripsInstance]:
        domain = self.load_domain()
        train = parse_instance(self._read(self.train_file), domain=domain)
        test = parse_instance(self._read(self.test_file), domain=domain)
        return domain, train, test


def _load_manifest() -> dict[str, dict]:
    text = (_data_root() / "manifest.json").read_text(encoding="utf-8")
    return json.loads(text)


def list_benchmarks() -> list[BenchmarkEntry]:
    """All bundled benchmarks, sorted by name."""
    manifest = _load_manifest()
    entries = []
    for name in sorted(manifest):
        row = manifest[name]
        files = row["files"]
        expected = {k: v for k, v in row.items() if k != "files"}
        entries.append(
            BenchmarkEntry(
                name=name,
                domain_file=files["domain"],
                train_file=files["train"],
                test_file=files["test"],
                expected=expected,
            )
        )
    return entries


def get_benchmark(name: str) -> BenchmarkEntry:
    for entry in list_benchmarks():
        if entry.name == name:
            return entry
    known = ", ".join(e.name for e in list_benchmarks())
    raise KeyError(f"unknown benchmark {name!r}; known: {known}")
