"""Argument-type inference from observed traces.

Each argument position of each observed action starts in its own type;
two positions are merged whenever some object is seen filling both.
Iterating to a fixed point partitions the argument slots into disjoint
types, and every observed object lands in exactly one of them.  The
resulting partition is the main pruning device for feature enumeration.
"""

from __future__ import annotations

from typing import NamedTuple

from .core import StripsError
from .tracegraph import TraceGraph


class TypeInferenceError(StripsError):
    pass


class ArgSlot(NamedTuple):
    """One argument position of an action, 1-based."""

    action: str
    index: int

    def __str__(self) -> str:
        return f"{self.action}.{self.index}"


class TypeAssignment:
    """A partition of argument slots into types, plus the object→type map.

    Type ids are 0-based and totally ordered: types are numbered by their
    lexicographically smallest (action, index) slot, so the numbering is a
    deterministic function of the observed edges.
    """

    def __init__(
        self,
        slot_type: dict[ArgSlot, int],
        object_type: dict[str, int],
        arities: dict[str, int],
    ):
        self.slot_type = slot_type
        self.object_type = object_type
        self.arities = arities
        self.num_types = max(slot_type.values(), default=-1) + 1
        members: list[list[ArgSlot]] = [[] for _ in range(self.num_types)]
        for slot in sorted(slot_type):
            members[slot_type[slot]].append(slot)
        self.members: tuple[tuple[ArgSlot, ...], ...] = tuple(map(tuple, members))

    def objects_of(self, type_id: int) -> list[str]:
        return sorted(o for o, t in self.object_type.items() if t == type_id)

    def type_tuple(self, action: str, indexes: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.slot_type[ArgSlot(action, i)] for i in indexes)

    def describe(self) -> str:
        """Human-readable dump of the partition, one type per line."""
        lines = []
        for tid, slots in enumerate(self.members):
            names = " ".join(map(str, slots))
            count = sum(1 for t in self.object_type.values() if t == tid)
            lines.append(f"t{tid}: {names}  ({count} objects)")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return (
            f"TypeAssignment(types={self.num_types}, "
            f"slots={len(self.slot_type)}, objects={len(self.object_type)})"
        )


def infer_types(graph: TraceGraph) -> TypeAssignment:
    """Partition argument slots by iterated merging over shared objects.

    Slots (a, i) and (b, j) end up in the same type whenever the relation
    "some object occurs at both positions" connects them, transitively.
    """
    arities = graph.action_names()
    if not arities:
        raise TypeInferenceError("cannot infer types from a graph with no edges")

    slots = [ArgSlot(a, i) for a in sorted(arities) for i in range(1, arities[a] + 1)]
    slot_pos = {s: n for n, s in enumerate(slots)}
    parent = list(range(len(slots)))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    # One union per (object, slot) pair suffices: uniting every slot an
    # object is seen in with the first slot it was seen in reaches the
    # same fixed point as iterating pairwise merges.
    first_seen: dict[str, int] = {}
    for e in graph.edges:
        for i, obj in enumerate(e.args, start=1):
            pos = slot_pos[ArgSlot(e.action, i)]
            anchor = first_seen.setdefault(obj, pos)
            if anchor != pos:
                ra, rb = find(anchor), find(pos)
                if ra != rb:
                    parent[rb] = ra

    type_ids: dict[int, int] = {}
    slot_type: dict[ArgSlot, int] = {}
    for n, slot in enumerate(slots):
        root = find(n)
        slot_type[slot] = type_ids.setdefault(root, len(type_ids))
    object_type = {obj: slot_type[slots[find(pos)]] for obj, pos in first_seen.items()}
    return TypeAssignment(slot_type, object_type, arities)
