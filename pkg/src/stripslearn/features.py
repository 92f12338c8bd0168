"""Candidate feature enumeration.

An action pattern a[t] selects k distinct argument positions of action a;
a feature is a non-empty set of patterns of equal arity whose selected
positions have identical type tuples.  Enumeration groups patterns by
type tuple, keeps only groups whose tuple is non-decreasing in the global
type order (the mirrored groups denote the same relations with arguments
flipped), and emits every non-empty subset of each surviving group.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, NamedTuple

from .core import StripsError
from .typeinf import ArgSlot, TypeAssignment


class FeatureEnumerationError(StripsError):
    pass


class ActionPattern(NamedTuple):
    """Action name plus a tuple of distinct 1-based argument indexes."""

    action: str
    indexes: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.action}[{','.join(map(str, self.indexes))}]"


class Feature(NamedTuple):
    """A candidate predicate: arity plus a sorted support of patterns."""

    arity: int
    support: tuple[ActionPattern, ...]

    def __str__(self) -> str:
        return f"f{self.arity}: " + ", ".join(map(str, self.support))

    def type_tuple(self, types: TypeAssignment) -> tuple[int, ...]:
        head = self.support[0]
        return types.type_tuple(head.action, head.indexes)


def make_feature(patterns) -> Feature:
    """Normalize a pattern collection into a Feature (sorted, deduplicated)."""
    support = tuple(sorted(set(patterns)))
    if not support:
        raise FeatureEnumerationError("a feature needs a non-empty support")
    arities = {len(p.indexes) for p in support}
    if len(arities) != 1:
        raise FeatureEnumerationError(f"mixed pattern arities {sorted(arities)}")
    return Feature(arities.pop(), support)


def enumerate_patterns(
    types: TypeAssignment, k: int
) -> dict[tuple[int, ...], list[ActionPattern]]:
    """All injective k-index tuples over observed actions, grouped by type tuple.

    Every group is returned, including those whose type tuple is not in
    canonical (non-decreasing) order; feature enumeration filters later.
    """
    if k < 0:
        raise FeatureEnumerationError("pattern arity must be >= 0")
    groups: dict[tuple[int, ...], list[ActionPattern]] = {}
    for action in sorted(types.arities):
        arity = types.arities[action]
        for idx in permutations(range(1, arity + 1), k):
            tt = tuple(types.slot_type[ArgSlot(action, i)] for i in idx)
            groups.setdefault(tt, []).append(ActionPattern(action, idx))
    return groups


def _canonical_groups(
    types: TypeAssignment, max_arity: int, group_cap: int
) -> Iterator[tuple[int, tuple[int, ...], list[ActionPattern]]]:
    if max_arity < 0:
        raise FeatureEnumerationError("max_arity must be >= 0")
    for k in range(max_arity + 1):
        groups = enumerate_patterns(types, k)
        for tt in sorted(groups):
            if any(a > b for a, b in zip(tt, tt[1:])):
                continue
            patterns = sorted(groups[tt])
            if len(patterns) > group_cap:
                raise FeatureEnumerationError(
                    f"pattern group {tt} of arity {k} has {len(patterns)} members "
                    f"(cap {group_cap}); raise the cap to enumerate its "
                    f"{2 ** len(patterns) - 1} subsets"
                )
            yield k, tt, patterns


def enumerate_features(
    types: TypeAssignment, max_arity: int, *, group_cap: int = 20
) -> list[Feature]:
    """Emit all candidate features up to max_arity in a deterministic order.

    Within a group of n patterns the 2^n - 1 non-empty subsets come out in
    binary counting order over the sorted pattern list, so feature indexes
    are stable across runs and processes.
    """
    out: list[Feature] = []
    for k, _, patterns in _canonical_groups(types, max_arity, group_cap):
        n = len(patterns)
        for mask in range(1, 1 << n):
            support = tuple(p for b, p in enumerate(patterns) if mask >> b & 1)
            out.append(Feature(k, support))
    return out


def candidate_count(
    types: TypeAssignment, max_arity: int, *, group_cap: int = 20
) -> dict[int, int]:
    """Per-arity feature counts, without materializing the supports."""
    counts = {k: 0 for k in range(max_arity + 1)}
    for k, _, patterns in _canonical_groups(types, max_arity, group_cap):
        counts[k] += (1 << len(patterns)) - 1
    return counts
