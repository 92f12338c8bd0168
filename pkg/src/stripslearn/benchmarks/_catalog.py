"""Builders for the bundled benchmark suite.

Every entry constructs a hidden STRIPS domain plus a training and a test
instance.  The shipped PDDL files under ``data/`` are generated from these
builders (``python -m stripslearn.benchmarks._catalog <dir>`` regenerates
them); a test asserts the files and the builders agree, so edit here, not
there.

All hidden schemas are well formed: the complement of every effect literal
appears among the preconditions, including the "obvious" ones (a held ball
is not in the room, a stacked block is not clear).  Several domains carry
static guard predicates (``truck``, ``pkg``, ``location`` ...) whose only
job is to keep nonsense groundings — a package loading itself into another
package, the ferry sailing onto a car — inapplicable.  Statics never appear
in effects.
"""

from __future__ import annotations

import itertools
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from ..core import ActionSchema, PredicateSymbol, SchemaLiteral, StripsDomain, StripsInstance

__all__ = ["BENCHMARK_NAMES", "EXPECTED", "build", "write_data"]


def _lit(pred: str, *args: int, positive: bool = True) -> SchemaLiteral:
    return SchemaLiteral(pred, tuple(args), positive)


def _neg(pred: str, *args: int) -> SchemaLiteral:
    return SchemaLiteral(pred, tuple(args), False)


@dataclass(frozen=True)
class Built:
    domain: StripsDomain
    train: StripsInstance
    test: StripsInstance


# ---------------------------------------------------------------------------
# layout helpers


def _grid_cells(width: int, height: int) -> list[str]:
    # row-major, 1-based: c11 is the top-left corner, c<row><col>.
    return [f"c{r}{c}" for r in range(1, height + 1) for c in range(1, width + 1)]


def _grid_adjacency(width: int, height: int) -> list[tuple[str, str]]:
    """Ordered 4-neighbour pairs of the width x height grid."""
    pairs = []
    for r in range(1, height + 1):
        for c in range(1, width + 1):
            for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
                rr, cc = r + dr, c + dc
                if 1 <= rr <= height and 1 <= cc <= width:
                    pairs.append((f"c{r}{c}", f"c{rr}{cc}"))
    return pairs


def _grid_aligned(width: int, height: int) -> list[tuple[str, str, str]]:
    """Ordered colinear consecutive triples (a, b, c) with b between a and c."""
    triples = []
    for r in range(1, height + 1):
        for c in range(1, width + 1):
            for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
                r3, c3 = r + 2 * dr, c + 2 * dc
                if 1 <= r3 <= height and 1 <= c3 <= width:
                    triples.append((f"c{r}{c}", f"c{r + dr}{c + dc}", f"c{r3}{c3}"))
    return triples


# ---------------------------------------------------------------------------
# gripper


def _gripper() -> Built:
    domain = StripsDomain.from_schemas(
        "gripper",
        [
            PredicateSymbol("at-robby", 1),
            PredicateSymbol("at", 2),
            PredicateSymbol("free", 1),
            PredicateSymbol("carry", 2),
            PredicateSymbol("room", 1),
        ],
        [
            ActionSchema(
                "move", 2,
                (_lit("at-robby", 0), _lit("room", 1), _neg("at-robby", 1)),
                (_lit("at-robby", 1), _neg("at-robby", 0)),
            ),
            # pick(ball, room, gripper)
            ActionSchema(
                "pick", 3,
                (_lit("at", 0, 1), _lit("at-robby", 1), _lit("free", 2), _neg("carry", 0, 2)),
                (_lit("carry", 0, 2), _neg("at", 0, 1), _neg("free", 2)),
            ),
            ActionSchema(
                "drop", 3,
                (_lit("carry", 0, 2), _lit("at-robby", 1), _neg("at", 0, 1), _neg("free", 2)),
                (_lit("at", 0, 1), _lit("free", 2), _neg("carry", 0, 2)),
            ),
        ],
    )

    def instance(name: str, balls: int) -> StripsInstance:
        ball_names = [f"b{i}" for i in range(1, balls + 1)]
        grippers = ["g1", "g2", "g3"]
        init = {("at-robby", ("r1",)), ("room", ("r1",)), ("room", ("r2",))}
        init |= {("free", (g,)) for g in grippers}
        init |= {("at", (b, "r1")) for b in ball_names}
        return StripsInstance(name, "gripper", tuple(ball_names + grippers + ["r1", "r2"]), frozenset(init))

    return Built(domain, instance("gripper-train", 7), instance("gripper-test", 8))


# ---------------------------------------------------------------------------
# blocks3 (three-op blocksworld, no gripper)


def _blocks3() -> Built:
    domain = StripsDomain.from_schemas(
        "blocks3",
        [
            PredicateSymbol("on", 2),
            PredicateSymbol("on-table", 1),
            PredicateSymbol("clear", 1),
            PredicateSymbol("neq", 2),
        ],
        [
            ActionSchema(
                "move", 3,
                (
                    _lit("clear", 0), _lit("on", 0, 1), _lit("clear", 2), _lit("neq", 0, 2),
                    _neg("on", 0, 2), _neg("clear", 1),
                ),
                (_lit("on", 0, 2), _lit("clear", 1), _neg("on", 0, 1), _neg("clear", 2)),
            ),
            ActionSchema(
                "move-to-table", 2,
                (_lit("clear", 0), _lit("on", 0, 1), _neg("on-table", 0), _neg("clear", 1)),
                (_lit("on-table", 0), _lit("clear", 1), _neg("on", 0, 1)),
            ),
            ActionSchema(
                "move-from-table", 2,
                (
                    _lit("clear", 0), _lit("on-table", 0), _lit("clear", 1), _lit("neq", 0, 1),
                    _neg("on", 0, 1),
                ),
                (_lit("on", 0, 1), _neg("on-table", 0), _neg("clear", 1)),
            ),
        ],
    )

    def instance(name: str, blocks: int) -> StripsInstance:
        names = [f"b{i}" for i in range(1, blocks + 1)]
        init = {("on-table", (b,)) for b in names} | {("clear", (b,)) for b in names}
        init |= {("neq", (a, b)) for a in names for b in names if a != b}
        return StripsInstance(name, "blocks3", tuple(names), frozenset(init))

    return Built(domain, instance("blocks3-train", 6), instance("blocks3-test", 7))


# ---------------------------------------------------------------------------
# blocks4 (pick-up / put-down / stack / unstack)


def _blocks4() -> Built:
    domain = StripsDomain.from_schemas(
        "blocks4",
        [
            PredicateSymbol("on", 2),
            PredicateSymbol("on-table", 1),
            PredicateSymbol("clear", 1),
            PredicateSymbol("holding", 1),
            PredicateSymbol("handempty", 0),
        ],
        [
            ActionSchema(
                "pick-up", 1,
                (_lit("clear", 0), _lit("on-table", 0), _lit("handempty"), _neg("holding", 0)),
                (_lit("holding", 0), _neg("clear", 0), _neg("on-table", 0), _neg("handempty")),
            ),
            ActionSchema(
                "put-down", 1,
                (_lit("holding", 0), _neg("clear", 0), _neg("on-table", 0), _neg("handempty")),
                (_lit("clear", 0), _lit("on-table", 0), _lit("handempty"), _neg("holding", 0)),
            ),
            ActionSchema(
                "stack", 2,
                (_lit("holding", 0), _lit("clear", 1), _neg("clear", 0), _neg("on", 0, 1), _neg("handempty")),
                (_lit("on", 0, 1), _lit("clear", 0), _lit("handempty"), _neg("holding", 0), _neg("clear", 1)),
            ),
            ActionSchema(
                "unstack", 2,
                (_lit("on", 0, 1), _lit("clear", 0), _lit("handempty"), _neg("holding", 0), _neg("clear", 1)),
                (_lit("holding", 0), _lit("clear", 1), _neg("on", 0, 1), _neg("clear", 0), _neg("handempty")),
            ),
        ],
    )

    def instance(name: str, blocks: int) -> StripsInstance:
        names = [f"b{i}" for i in range(1, blocks + 1)]
        init = {("on-table", (b,)) for b in names} | {("clear", (b,)) for b in names}
        init.add(("handempty", ()))
        return StripsInstance(name, "blocks4", tuple(names), frozenset(init))

    return Built(domain, instance("blocks4-train", 7), instance("blocks4-test", 8))


# ---------------------------------------------------------------------------
# delivery


def _delivery() -> Built:
    domain = StripsDomain.from_schemas(
        "delivery",
        [
            PredicateSymbol("at", 2),
            PredicateSymbol("in", 2),
            PredicateSymbol("empty", 1),
            PredicateSymbol("adj", 2),
            PredicateSymbol("pkg", 1),
            PredicateSymbol("truck", 1),
        ],
        [
            ActionSchema(
                "move", 3,
                (_lit("truck", 0), _lit("at", 0, 1), _lit("adj", 1, 2), _neg("at", 0, 2)),
                (_lit("at", 0, 2), _neg("at", 0, 1)),
            ),
            # pick(package, cell, truck): one package per truck
            ActionSchema(
                "pick", 3,
                (
                    _lit("pkg", 0), _lit("at", 0, 1), _lit("at", 2, 1), _lit("empty", 2),
                    _neg("in", 0, 2),
                ),
                (_lit("in", 0, 2), _neg("at", 0, 1), _neg("empty", 2)),
            ),
            ActionSchema(
                "drop", 3,
                (_lit("pkg", 0), _lit("in", 0, 2), _lit("at", 2, 1), _neg("at", 0, 1), _neg("empty", 2)),
                (_lit("at", 0, 1), _lit("empty", 2), _neg("in", 0, 2)),
            ),
        ],
    )

    def instance(name: str, packages: int) -> StripsInstance:
        cells = _grid_cells(3, 3)
        pkgs = [f"p{i}" for i in range(1, packages + 1)]
        trucks = ["t1", "t2"]
        init = {("adj", pair) for pair in _grid_adjacency(3, 3)}
        init |= {("pkg", (p,)) for p in pkgs}
        init |= {("truck", (t,)) for t in trucks}
        init |= {("at", (p, "c11")) for p in pkgs}
        init |= {("at", ("t1", "c11")), ("at", ("t2", "c33"))}
        init |= {("empty", (t,)) for t in trucks}
        return StripsInstance(name, "delivery", tuple(cells + pkgs + trucks), frozenset(init))

    return Built(domain, instance("delivery-train", 2), instance("delivery-test", 3))


# ---------------------------------------------------------------------------
# driverlog


def _driverlog() -> Built:
    domain = StripsDomain.from_schemas(
        "driverlog",
        [
            PredicateSymbol("at", 2),
            PredicateSymbol("in", 2),
            PredicateSymbol("driving", 2),
            PredicateSymbol("empty", 1),
            PredicateSymbol("link", 2),
            PredicateSymbol("path", 2),
            PredicateSymbol("driver", 1),
            PredicateSymbol("package", 1),
            PredicateSymbol("truck", 1),
        ],
        [
            # drive-truck(truck, from, to, driver)
            ActionSchema(
                "drive-truck", 4,
                (_lit("at", 0, 1), _lit("driving", 3, 0), _lit("link", 1, 2), _neg("at", 0, 2)),
                (_lit("at", 0, 2), _neg("at", 0, 1)),
            ),
            ActionSchema(
                "walk", 3,
                (_lit("driver", 0), _lit("at", 0, 1), _lit("path", 1, 2), _neg("at", 0, 2)),
                (_lit("at", 0, 2), _neg("at", 0, 1)),
            ),
            # board-truck(driver, truck, loc)
            ActionSchema(
                "board-truck", 3,
                (
                    _lit("driver", 0), _lit("at", 0, 2), _lit("at", 1, 2), _lit("empty", 1),
                    _neg("driving", 0, 1),
                ),
                (_lit("driving", 0, 1), _neg("at", 0, 2), _neg("empty", 1)),
            ),
            ActionSchema(
                "disembark-truck", 3,
                (_lit("driving", 0, 1), _lit("at", 1, 2), _neg("at", 0, 2), _neg("empty", 1)),
                (_lit("at", 0, 2), _lit("empty", 1), _neg("driving", 0, 1)),
            ),
            # load-truck(package, truck, loc)
            ActionSchema(
                "load-truck", 3,
                (
                    _lit("package", 0), _lit("truck", 1), _lit("at", 0, 2), _lit("at", 1, 2),
                    _neg("in", 0, 1),
                ),
                (_lit("in", 0, 1), _neg("at", 0, 2)),
            ),
            ActionSchema(
                "unload-truck", 3,
                (_lit("in", 0, 1), _lit("at", 1, 2), _neg("at", 0, 2)),
                (_lit("at", 0, 2), _neg("in", 0, 1)),
            ),
        ],
    )

    def instance(name: str, locations: int, packages: int) -> StripsInstance:
        locs = [f"l{i}" for i in range(1, locations + 1)]
        pkgs = [f"p{i}" for i in range(1, packages + 1)]
        trucks = ["t1", "t2"]
        drivers = ["d1", "d2"]
        # Trucks live on the complete directed triangle l1-l2-l3; drivers walk
        # the full line l1-..-lN.
        init = {("link", (a, b)) for a in locs[:3] for b in locs[:3] if a != b}
        for a, b in zip(locs, locs[1:]):
            init.add(("path", (a, b)))
            init.add(("path", (b, a)))
        init |= {("driver", (d,)) for d in drivers}
        init |= {("package", (p,)) for p in pkgs}
        init |= {("truck", (t,)) for t in trucks}
        init |= {("at", ("t1", "l1")), ("at", ("t2", "l2"))}
        init |= {("empty", (t,)) for t in trucks}
        init |= {("at", (d, l)) for d, l in zip(drivers, locs[-2:])}
        init |= {("at", (p, locs[i % 3])) for i, p in enumerate(pkgs)}
        return StripsInstance(name, "driverlog", tuple(locs + pkgs + trucks + drivers), frozenset(init))

    return Built(domain, instance("driverlog-train", 5, 2), instance("driverlog-test", 7, 3))


# ---------------------------------------------------------------------------
# ferry


def _ferry() -> Built:
    domain = StripsDomain.from_schemas(
        "ferry",
        [
            PredicateSymbol("at-ferry", 1),
            PredicateSymbol("at", 2),
            PredicateSymbol("on", 1),
            PredicateSymbol("empty-ferry", 0),
            PredicateSymbol("location", 1),
        ],
        [
            ActionSchema(
                "sail", 2,
                (_lit("at-ferry", 0), _lit("location", 1), _neg("at-ferry", 1)),
                (_lit("at-ferry", 1), _neg("at-ferry", 0)),
            ),
            ActionSchema(
                "board", 2,
                (_lit("at", 0, 1), _lit("at-ferry", 1), _lit("empty-ferry"), _neg("on", 0)),
                (_lit("on", 0), _neg("at", 0, 1), _neg("empty-ferry")),
            ),
            ActionSchema(
                "debark", 2,
                (_lit("on", 0), _lit("at-ferry", 1), _neg("at", 0, 1), _neg("empty-ferry")),
                (_lit("at", 0, 1), _lit("empty-ferry"), _neg("on", 0)),
            ),
        ],
    )

    def instance(name: str, cars: int) -> StripsInstance:
        locs = [f"l{i}" for i in range(1, 6)]
        car_names = [f"car{i}" for i in range(1, cars + 1)]
        init = {("location", (l,)) for l in locs}
        init.add(("at-ferry", ("l1",)))
        init.add(("empty-ferry", ()))
        init |= {("at", (c, "l1")) for c in car_names}
        return StripsInstance(name, "ferry", tuple(locs + car_names), frozenset(init))

    return Built(domain, instance("ferry-train", 5), instance("ferry-test", 6))


# ---------------------------------------------------------------------------
# grid and grid_lock


def _grid_domain(name: str, with_lock: bool) -> StripsDomain:
    predicates = [
        PredicateSymbol("at-robot", 1),
        PredicateSymbol("at", 2),
        PredicateSymbol("locked", 1),
        PredicateSymbol("open", 1),
        PredicateSymbol("holding", 1),
        PredicateSymbol("arm-empty", 0),
        PredicateSymbol("conn", 2),
        PredicateSymbol("key-shape", 2),
        PredicateSymbol("lock-shape", 2),
    ]
    schemas = [
        ActionSchema(
            "move", 2,
            (_lit("at-robot", 0), _lit("conn", 0, 1), _lit("open", 1), _neg("at-robot", 1)),
            (_lit("at-robot", 1), _neg("at-robot", 0)),
        ),
        ActionSchema(
            "pickup", 2,
            (_lit("at-robot", 0), _lit("at", 1, 0), _lit("arm-empty"), _neg("holding", 1)),
            (_lit("holding", 1), _neg("at", 1, 0), _neg("arm-empty")),
        ),
        ActionSchema(
            "putdown", 2,
            (_lit("at-robot", 0), _lit("holding", 1), _neg("at", 1, 0), _neg("arm-empty")),
            (_lit("at", 1, 0), _lit("arm-empty"), _neg("holding", 1)),
        ),
        # swap the held key for one lying in the current cell
        ActionSchema(
            "pickup-and-loose", 3,
            (
                _lit("at-robot", 0), _lit("at", 1, 0), _lit("holding", 2),
                _neg("holding", 1), _neg("at", 2, 0),
            ),
            (_lit("holding", 1), _lit("at", 2, 0), _neg("at", 1, 0), _neg("holding", 2)),
        ),
        # unlock(here, lock-cell, key, shape)
        ActionSchema(
            "unlock", 4,
            (
                _lit("at-robot", 0), _lit("conn", 0, 1), _lit("locked", 1),
                _lit("lock-shape", 1, 3), _lit("key-shape", 2, 3), _lit("holding", 2),
                _neg("open", 1),
            ),
            (_lit("open", 1), _neg("locked", 1)),
        ),
    ]
    if with_lock:
        schemas.append(
            ActionSchema(
                "lock", 4,
                (
                    _lit("at-robot", 0), _lit("conn", 0, 1), _lit("open", 1),
                    _lit("lock-shape", 1, 3), _lit("key-shape", 2, 3), _lit("holding", 2),
                    _neg("locked", 1), _neg("at-robot", 1),
                ),
                (_lit("locked", 1), _neg("open", 1)),
            )
        )
    return StripsDomain.from_schemas(name, predicates, schemas)


# Training layout for the grid family (3x3; tuned against the appendix
# state/edge counts, see the layout search in tools).  Lock cells carry the
# shape that can open them; keys sit on open cells.
_GRID_TRAIN_LOCKS = (("c12", "s1"), ("c23", "s2"), ("c33", "s2"))
_GRID_TRAIN_KEYS = (("k1", "s1", "c11"), ("k2", "s1", "c13"), ("k3", "s2", "c21"))
_GRID_TRAIN_ROBOT = "c11"
_GRID_TEST_LOCKS = (
    ("c13", "s1"), ("c14", "s2"), ("c23", "s1"),
    ("c24", "s2"), ("c33", "s1"), ("c34", "s2"),
)
_GRID_TEST_KEYS = (("k1", "s1", "c11"), ("k2", "s2", "c21"), ("k3", "s1", "c31"), ("k4", "s2", "c12"))
_GRID_TEST_ROBOT = "c11"


def _grid_instance(name: str, domain_name: str, width: int, height: int,
                   locks, keys, robot: str) -> StripsInstance:
    cells = _grid_cells(width, height)
    shapes = sorted({s for _, s in locks} | {s for _, s, _ in keys})
    key_names = [k for k, _, _ in keys]
    locked = {c for c, _ in locks}
    init = {("conn", pair) for pair in _grid_adjacency(width, height)}
    init |= {("lock-shape", (c, s)) for c, s in locks}
    init |= {("key-shape", (k, s)) for k, s, _ in keys}
    init |= {("locked", (c,)) for c in locked}
    init |= {("open", (c,)) for c in cells if c not in locked}
    init |= {("at", (k, c)) for k, _, c in keys}
    init.add(("at-robot", (robot,)))
    init.add(("arm-empty", ()))
    return StripsInstance(name, domain_name, tuple(cells + key_names + shapes), frozenset(init))


def _grid() -> Built:
    domain = _grid_domain("grid", with_lock=False)
    train = _grid_instance("grid-train", "grid", 3, 3, _GRID_TRAIN_LOCKS, _GRID_TRAIN_KEYS, _GRID_TRAIN_ROBOT)
    test = _grid_instance("grid-test", "grid", 4, 3, _GRID_TEST_LOCKS, _GRID_TEST_KEYS, _GRID_TEST_ROBOT)
    return Built(domain, train, test)


def _grid_lock() -> Built:
    domain = _grid_domain("grid_lock", with_lock=True)
    train = _grid_instance("grid_lock-train", "grid_lock", 3, 3, _GRID_TRAIN_LOCKS, _GRID_TRAIN_KEYS, _GRID_TRAIN_ROBOT)
    test = _grid_instance("grid_lock-test", "grid_lock", 4, 3, _GRID_TEST_LOCKS, _GRID_TEST_KEYS, _GRID_TEST_ROBOT)
    return Built(domain, train, test)


# ---------------------------------------------------------------------------
# hanoi


def _hanoi() -> Built:
    domain = StripsDomain.from_schemas(
        "hanoi",
        [
            PredicateSymbol("on", 2),
            PredicateSymbol("clear", 1),
            PredicateSymbol("smaller", 2),
        ],
        [
            # move(disc, from, to); smaller(x, d) reads "d is smaller than x"
            ActionSchema(
                "move", 3,
                (
                    _lit("clear", 0), _lit("on", 0, 1), _lit("clear", 2), _lit("smaller", 2, 0),
                    _neg("on", 0, 2), _neg("clear", 1),
                ),
                (_lit("on", 0, 2), _lit("clear", 1), _neg("on", 0, 1), _neg("clear", 2)),
            ),
        ],
    )

    def instance(name: str, discs: int) -> StripsInstance:
        pegs = ["p1", "p2", "p3"]
        ds = [f"d{i}" for i in range(1, discs + 1)]  # d1 is the smallest
        init = {("smaller", (p, d)) for p in pegs for d in ds}
        init |= {("smaller", (ds[j], ds[i])) for j in range(discs) for i in range(j)}
        init |= {("on", (ds[i], ds[i + 1])) for i in range(discs - 1)}
        init.add(("on", (ds[-1], "p1")))
        init |= {("clear", (ds[0],)), ("clear", ("p2",)), ("clear", ("p3",))}
        return StripsInstance(name, "hanoi", tuple(pegs + ds), frozenset(init))

    return Built(domain, instance("hanoi-train", 9), instance("hanoi-test", 10))


# ---------------------------------------------------------------------------
# logistics


def _logistics() -> Built:
    domain = StripsDomain.from_schemas(
        "logistics",
        [
            PredicateSymbol("at", 2),
            PredicateSymbol("in", 2),
            PredicateSymbol("in-city", 2),
            PredicateSymbol("airport", 1),
            PredicateSymbol("truck", 1),
            PredicateSymbol("plane", 1),
            PredicateSymbol("vehicle", 1),
            PredicateSymbol("package", 1),
        ],
        [
            # drive(truck, from, to, city)
            ActionSchema(
                "drive", 4,
                (
                    _lit("truck", 0), _lit("at", 0, 1), _lit("in-city", 1, 3), _lit("in-city", 2, 3),
                    _neg("at", 0, 2),
                ),
                (_lit("at", 0, 2), _neg("at", 0, 1)),
            ),
            ActionSchema(
                "fly", 3,
                (_lit("plane", 0), _lit("at", 0, 1), _lit("airport", 2), _neg("at", 0, 2)),
                (_lit("at", 0, 2), _neg("at", 0, 1)),
            ),
            # load(package, vehicle, loc) is shared by trucks and planes
            ActionSchema(
                "load", 3,
                (
                    _lit("package", 0), _lit("vehicle", 1), _lit("at", 0, 2), _lit("at", 1, 2),
                    _neg("in", 0, 1),
                ),
                (_lit("in", 0, 1), _neg("at", 0, 2)),
            ),
            ActionSchema(
                "unload", 3,
                (_lit("in", 0, 1), _lit("at", 1, 2), _neg("at", 0, 2)),
                (_lit("at", 0, 2), _neg("in", 0, 1)),
            ),
        ],
    )

    def instance(name: str, city_sizes: tuple[int, ...], trucks_per_city: tuple[int, ...],
                 pkg_locs: tuple[str, ...]) -> StripsInstance:
        cities = [f"city{i}" for i in range(1, len(city_sizes) + 1)]
        locs: list[str] = []
        init: set = set()
        n = 0
        airports = []
        by_city: list[list[str]] = []
        for city, size in zip(cities, city_sizes):
            members = [f"l{n + i}" for i in range(1, size + 1)]
            n += size
            by_city.append(members)
            locs += members
            airports.append(members[0])
            init |= {("in-city", (l, city)) for l in members}
        init |= {("airport", (a,)) for a in airports}
        planes = ["a1", "a2"]
        init |= {("plane", (p,)) for p in planes}
        init |= {("vehicle", (p,)) for p in planes}
        init |= {("at", ("a1", airports[0])), ("at", ("a2", airports[1]))}
        trucks = []
        for members, count in zip(by_city, trucks_per_city):
            for _ in range(count):
                t = f"t{len(trucks) + 1}"
                trucks.append(t)
                init.add(("at", (t, members[-1])))
        init |= {("truck", (t,)) for t in trucks}
        init |= {("vehicle", (t,)) for t in trucks}
        pkgs = [f"p{i}" for i in range(1, len(pkg_locs) + 1)]
        init |= {("package", (p,)) for p in pkgs}
        init |= {("at", (p, l)) for p, l in zip(pkgs, pkg_locs)}
        objects = tuple(locs + cities + planes + trucks + pkgs)
        return StripsInstance(name, "logistics", objects, frozenset(init))

    train = instance("logistics-train", (3, 2, 2), (2, 1, 1), ("l2", "l5"))
    test = instance("logistics-test", (3, 3, 3), (1, 1, 1), ("l3", "l6"))
    return Built(domain, train, test)


# ---------------------------------------------------------------------------
# miconic


def _miconic() -> Built:
    domain = StripsDomain.from_schemas(
        "miconic",
        [
            PredicateSymbol("lift-at", 1),
            PredicateSymbol("at", 2),
            PredicateSymbol("boarded", 1),
            PredicateSymbol("succ", 2),
        ],
        [
            ActionSchema(
                "up", 2,
                (_lit("lift-at", 0), _lit("succ", 0, 1), _neg("lift-at", 1)),
                (_lit("lift-at", 1), _neg("lift-at", 0)),
            ),
            ActionSchema(
                "down", 2,
                (_lit("lift-at", 0), _lit("succ", 1, 0), _neg("lift-at", 1)),
                (_lit("lift-at", 1), _neg("lift-at", 0)),
            ),
            ActionSchema(
                "board", 2,
                (_lit("at", 0, 1), _lit("lift-at", 1), _neg("boarded", 0)),
                (_lit("boarded", 0), _neg("at", 0, 1)),
            ),
            ActionSchema(
                "depart", 2,
                (_lit("boarded", 0), _lit("lift-at", 1), _neg("at", 0, 1)),
                (_lit("at", 0, 1), _neg("boarded", 0)),
            ),
        ],
    )

    def instance(name: str, floors: int, persons: int) -> StripsInstance:
        fs = [f"f{i}" for i in range(1, floors + 1)]
        ps = [f"per{i}" for i in range(1, persons + 1)]
        init = {("succ", pair) for pair in zip(fs, fs[1:])}
        init.add(("lift-at", ("f1",)))
        init |= {("at", (p, fs[i % floors])) for i, p in enumerate(ps)}
        return StripsInstance(name, "miconic", tuple(fs + ps), frozenset(init))

    return Built(domain, instance("miconic-train", 5, 5), instance("miconic-test", 6, 6))


# ---------------------------------------------------------------------------
# npuzzle


def _npuzzle() -> Built:
    domain = StripsDomain.from_schemas(
        "npuzzle",
        [
            PredicateSymbol("at", 3),
            PredicateSymbol("blank", 2),
            PredicateSymbol("succ-x", 2),
            PredicateSymbol("succ-y", 2),
        ],
        [
            # move-up(tile, x, y-from, y-to): the tile slides one row up into
            # the blank; y grows downward, so the target row precedes it.
            ActionSchema(
                "move-up", 4,
                (
                    _lit("at", 0, 1, 2), _lit("blank", 1, 3), _lit("succ-y", 3, 2),
                    _neg("at", 0, 1, 3), _neg("blank", 1, 2),
                ),
                (_lit("at", 0, 1, 3), _lit("blank", 1, 2), _neg("at", 0, 1, 2), _neg("blank", 1, 3)),
            ),
            ActionSchema(
                "move-down", 4,
                (
                    _lit("at", 0, 1, 2), _lit("blank", 1, 3), _lit("succ-y", 2, 3),
                    _neg("at", 0, 1, 3), _neg("blank", 1, 2),
                ),
                (_lit("at", 0, 1, 3), _lit("blank", 1, 2), _neg("at", 0, 1, 2), _neg("blank", 1, 3)),
            ),
            # move-left(tile, x-from, x-to, y)
            ActionSchema(
                "move-left", 4,
                (
                    _lit("at", 0, 1, 3), _lit("blank", 2, 3), _lit("succ-x", 2, 1),
                    _neg("at", 0, 2, 3), _neg("blank", 1, 3),
                ),
                (_lit("at", 0, 2, 3), _lit("blank", 1, 3), _neg("at", 0, 1, 3), _neg("blank", 2, 3)),
            ),
            ActionSchema(
                "move-right", 4,
                (
                    _lit("at", 0, 1, 3), _lit("blank", 2, 3), _lit("succ-x", 1, 2),
                    _neg("at", 0, 2, 3), _neg("blank", 1, 3),
                ),
                (_lit("at", 0, 2, 3), _lit("blank", 1, 3), _neg("at", 0, 1, 3), _neg("blank", 2, 3)),
            ),
        ],
    )

    def instance(name: str, side: int) -> StripsInstance:
        xs = [f"x{i}" for i in range(1, side + 1)]
        ys = [f"y{i}" for i in range(1, side + 1)]
        tiles = [f"t{i}" for i in range(1, side * side)]
        init = {("succ-x", pair) for pair in zip(xs, xs[1:])}
        init |= {("succ-y", pair) for pair in zip(ys, ys[1:])}
        positions = [(x, y) for y in ys for x in xs]
        init |= {("at", (t, x, y)) for t, (x, y) in zip(tiles, positions)}
        init.add(("blank", positions[-1]))
        return StripsInstance(name, "npuzzle", tuple(xs + ys + tiles), frozenset(init))

    return Built(domain, instance("npuzzle-train", 3), instance("npuzzle-test", 4))


# ---------------------------------------------------------------------------
# sokoban and sokoban_pull


def _sokoban_domain(name: str, with_pull: bool) -> StripsDomain:
    predicates = [
        PredicateSymbol("at-robot", 1),
        PredicateSymbol("has-box", 1),
        PredicateSymbol("adj", 2),
        PredicateSymbol("aligned", 3),
    ]
    schemas = [
        ActionSchema(
            "move", 2,
            (_lit("at-robot", 0), _lit("adj", 0, 1), _neg("has-box", 1), _neg("at-robot", 1)),
            (_lit("at-robot", 1), _neg("at-robot", 0)),
        ),
        # push(robot-cell, box-cell, destination), all three colinear
        ActionSchema(
            "push", 3,
            (
                _lit("at-robot", 0), _lit("has-box", 1), _lit("aligned", 0, 1, 2),
                _neg("has-box", 2), _neg("at-robot", 1),
            ),
            (_lit("at-robot", 1), _lit("has-box", 2), _neg("at-robot", 0), _neg("has-box", 1)),
        ),
    ]
    if with_pull:
        # pull(robot-cell, box-cell, retreat): the robot backs up to the
        # retreat cell, dragging the box into its old position.
        schemas.append(
            ActionSchema(
                "pull", 3,
                (
                    _lit("at-robot", 0), _lit("has-box", 1), _lit("aligned", 1, 0, 2),
                    _neg("has-box", 2), _neg("at-robot", 2), _neg("has-box", 0),
                ),
                (_lit("at-robot", 2), _lit("has-box", 0), _neg("at-robot", 0), _neg("has-box", 1)),
            )
        )
    return StripsDomain.from_schemas(name, predicates, schemas)


# 4x4 training layout (tuned against the appendix counts) and 5x5 test layout.
_SOKOBAN_TRAIN_BOXES = ("c13", "c22", "c31", "c33")
_SOKOBAN_TRAIN_ROBOT = "c11"
_SOKOBAN_TEST_BOXES = ("c22", "c33", "c44")
_SOKOBAN_TEST_ROBOT = "c11"


def _sokoban_instance(name: str, domain_name: str, side: int, boxes, robot: str) -> StripsInstance:
    cells = _grid_cells(side, side)
    init = {("adj", pair) for pair in _grid_adjacency(side, side)}
    init |= {("aligned", triple) for triple in _grid_aligned(side, side)}
    init |= {("has-box", (b,)) for b in boxes}
    init.add(("at-robot", (robot,)))
    return StripsInstance(name, domain_name, tuple(cells), frozenset(init))


def _sokoban() -> Built:
    domain = _sokoban_domain("sokoban", with_pull=False)
    train = _sokoban_instance("sokoban-train", "sokoban", 4, _SOKOBAN_TRAIN_BOXES, _SOKOBAN_TRAIN_ROBOT)
    test = _sokoban_instance("sokoban-test", "sokoban", 5, _SOKOBAN_TEST_BOXES, _SOKOBAN_TEST_ROBOT)
    return Built(domain, train, test)


def _sokoban_pull() -> Built:
    domain = _sokoban_domain("sokoban_pull", with_pull=True)
    train = _sokoban_instance("sokoban_pull-train", "sokoban_pull", 4, _SOKOBAN_TRAIN_BOXES, _SOKOBAN_TRAIN_ROBOT)
    test = _sokoban_instance("sokoban_pull-test", "sokoban_pull", 5, _SOKOBAN_TEST_BOXES, _SOKOBAN_TEST_ROBOT)
    return Built(domain, train, test)


# ---------------------------------------------------------------------------
# registry and expected statistics

_BUILDERS = {
    "blocks3": _blocks3,
    "blocks4": _blocks4,
    "delivery": _delivery,
    "driverlog": _driverlog,
    "ferry": _ferry,
    "grid": _grid,
    "grid_lock": _grid_lock,
    "gripper": _gripper,
    "hanoi": _hanoi,
    "logistics": _logistics,
    "miconic": _miconic,
    "npuzzle": _npuzzle,
    "sokoban": _sokoban,
    "sokoban_pull": _sokoban_pull,
}

BENCHMARK_NAMES = tuple(sorted(_BUILDERS))

# Reference statistics per benchmark: candidate/admissible feature counts,
# the training instance's full reachable state graph size, and the sampling
# defaults (trace count/length, partial-graph edge budget and root count)
# used by the replication tooling.  "admissible" and "verification" are keyed
# by input regime: full state graph, sampled partial graphs, plain traces.
EXPECTED: dict[str, dict] = {
    "blocks3": {
        "objects": 6, "predicates": 3, "candidates": 1220,
        "admissible": {"full": 5.0, "partial": 5.0, "traces": 5.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 4051, "edges": 21300},
        "traces": {"count": 5, "length": 65},
        "partial": {"budget": 81, "roots": 5},
    },
    "blocks4": {
        "objects": 7, "predicates": 5, "candidates": 93,
        "admissible": {"full": 9.0, "partial": 9.0, "traces": 9.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 65990, "edges": 186578},
        "traces": {"count": 5, "length": 85},
        "partial": {"budget": 86, "roots": 5},
    },
    "delivery": {
        "objects": 13, "predicates": 3, "candidates": 62,
        "admissible": {"full": 5.0, "partial": 5.0, "traces": 5.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 9639, "edges": 57888},
        "traces": {"count": 5, "length": 350},
        "partial": {"budget": 601, "roots": 5},
    },
    "driverlog": {
        "objects": 11, "predicates": 4, "candidates": 560,
        "admissible": {"full": 13.0, "partial": 13.0, "traces": 13.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 10575, "edges": 63720},
        "traces": {"count": 5, "length": 350},
        "partial": {"budget": 1201, "roots": 5},
    },
    "ferry": {
        "objects": 10, "predicates": 4, "candidates": 31,
        "admissible": {"full": 4.0, "partial": 4.0, "traces": 4.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 31250, "edges": 156250},
        "traces": {"count": 5, "length": 170},
        "partial": {"budget": 251, "roots": 5},
    },
    "grid": {
        "objects": 14, "predicates": 6, "candidates": 290,
        "admissible": {"full": 7.0, "partial": 7.0, "traces": 29.7},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 0.0},
        "full_graph": {"nodes": 32967, "edges": 99863},
        "traces": {"count": 5, "length": 10000},
        "partial": {"budget": 10001, "roots": 1},
    },
    "grid_lock": {
        "objects": 14, "predicates": 6, "candidates": 1042,
        "admissible": {"full": 7.0, "partial": 7.0, "traces": 7.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 51436, "edges": 152040},
        "traces": {"count": 5, "length": 800},
        "partial": {"budget": 500, "roots": 5},
    },
    "gripper": {
        "objects": 12, "predicates": 4, "candidates": 43,
        "admissible": {"full": 6.0, "partial": 6.0, "traces": 6.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 17728, "edges": 95680},
        "traces": {"count": 5, "length": 250},
        "partial": {"budget": 230, "roots": 5},
    },
    "hanoi": {
        "objects": 12, "predicates": 2, "candidates": 134,
        "admissible": {"full": 4.0, "partial": 4.0, "traces": 4.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 19683, "edges": 59046},
        "traces": {"count": 5, "length": 25},
        "partial": {"budget": 50, "roots": 5},
    },
    "logistics": {
        "objects": 18, "predicates": 2, "candidates": 212,
        "admissible": {"full": 7.0, "partial": 7.0, "traces": 7.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 54756, "edges": 648648},
        "traces": {"count": 5, "length": 350},
        "partial": {"budget": 5003, "roots": 5},
    },
    "miconic": {
        "objects": 10, "predicates": 3, "candidates": 99,
        "admissible": {"full": 8.0, "partial": 8.0, "traces": 8.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 38880, "edges": 127008},
        "traces": {"count": 5, "length": 60},
        "partial": {"budget": 46, "roots": 5},
    },
    "npuzzle": {
        "objects": 14, "predicates": 2, "candidates": 912,
        "admissible": {"full": 26.0, "partial": 26.0, "traces": 26.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 181440, "edges": 483840},
        "traces": {"count": 5, "length": 200},
        "partial": {"budget": 130, "roots": 5},
    },
    "sokoban": {
        "objects": 16, "predicates": 2, "candidates": 352,
        "admissible": {"full": 3.0, "partial": 3.0, "traces": 126.2},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 0.04},
        "full_graph": {"nodes": 10071, "edges": 26834},
        "traces": {"count": 5, "length": 10000},
        "partial": {"budget": 10002, "roots": 1},
    },
    "sokoban_pull": {
        "objects": 16, "predicates": 2, "candidates": 20740,
        "admissible": {"full": 3.0, "partial": 3.0, "traces": 3.0},
        "verification": {"full": 1.0, "partial": 1.0, "traces": 1.0},
        "full_graph": {"nodes": 21824, "edges": 66328},
        "traces": {"count": 5, "length": 300},
        "partial": {"budget": 300, "roots": 5},
    },
}


def build(name: str) -> Built:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown benchmark {name!r}; known: {', '.join(BENCHMARK_NAMES)}") from None
    return builder()


def write_data(data_dir: str | Path) -> list[Path]:
    """Regenerate the shipped PDDL files and manifest.  Returns written paths."""
    from ..pddl import emit_domain, emit_instance

    out = Path(data_dir)
    out.mkdir(parents=True, exist_ok=True)
    header = "generated by stripslearn.benchmarks._catalog -- do not edit by hand"
    written = []
    for name in BENCHMARK_NAMES:
        built = build(name)
        files = {
            f"{name}-domain.pddl": emit_domain(built.domain, comments=(header,)),
            f"{name}-train.pddl": emit_instance(built.train, comments=(header,)),
            f"{name}-test.pddl": emit_instance(built.test, comments=(header,)),
        }
        for fname, text in files.items():
            path = out / fname
            path.write_text(text, encoding="utf-8")
            written.append(path)
    manifest = {
        name: {
            **EXPECTED[name],
            "files": {
                "domain": f"{name}-domain.pddl",
                "train": f"{name}-train.pddl",
                "test": f"{name}-test.pddl",
            },
        }
        for name in BENCHMARK_NAMES
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    written.append(manifest_path)
    return written


if __name__ == "__main__":  # pragma: no cover - maintenance entry point
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "data"
    for p in write_data(target):
        print(p)
