"""Ground and lifted STRIPS model with negative preconditions.

States are closed-world sets of ground atoms.  Schemas carry positive and
negative precondition literals and add/delete effects over parameter
indexes.  The only semantic subtlety worth calling out: parameters are
*not* implicitly distinct — ``move(x, x)`` is a legal grounding unless the
preconditions rule it out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

# A ground atom is (predicate, argument tuple); a state is a frozenset of
# the atoms that hold (everything absent is false).
Atom = tuple[str, tuple[str, ...]]
GroundState = frozenset


class StripsError(Exception):
    """Base class for errors raised by this package."""


class DomainValidationError(StripsError, ValueError):
    """A domain, schema, or instance is structurally malformed."""


class InapplicableActionError(StripsError):
    """Attempted to apply an action whose preconditions do not hold."""


class GroundAction(NamedTuple):
    name: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return "(" + " ".join((self.name,) + self.args) + ")"


@dataclass(frozen=True, order=True)
class PredicateSymbol:
    name: str
    arity: int

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True, order=True)
class SchemaLiteral:
    """A literal over schema parameters; ``args`` are 0-based parameter indexes."""

    predicate: str
    args: tuple[int, ...]
    positive: bool = True

    @property
    def complement(self) -> "SchemaLiteral":
        return SchemaLiteral(self.predicate, self.args, not self.positive)

    def ground(self, binding: Sequence[str]) -> Atom:
        return (self.predicate, tuple(binding[i] for i in self.args))

    def __str__(self) -> str:
        atom = f"({self.predicate}{''.join(' ?x%d' % i for i in self.args)})"
        return atom if self.positive else f"(not {atom})"


@dataclass(frozen=True)
class ActionSchema:
    """A lifted action.  Literal tuples are canonically sorted and deduplicated.

    Raises DomainValidationError on out-of-range parameter indexes,
    contradictory preconditions (p and not-p), or contradictory effects.
    """

    name: str
    arity: int
    preconditions: tuple[SchemaLiteral, ...]
    effects: tuple[SchemaLiteral, ...]

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise DomainValidationError(f"{self.name}: negative arity")
        pre = tuple(sorted(set(self.preconditions)))
        eff = tuple(sorted(set(self.effects)))
        for lit in pre + eff:
            if any(i < 0 or i >= self.arity for i in lit.args):
                raise DomainValidationError(
                    f"{self.name}: literal {lit} references a parameter outside "
                    f"0..{self.arity - 1}"
                )
        pre_set = set(pre)
        for lit in pre:
            if lit.positive and lit.complement in pre_set:
                raise DomainValidationError(
                    f"{self.name}: contradictory preconditions on {lit}"
                )
        eff_atoms = {(l.predicate, l.args) for l in eff if l.positive}
        for lit in eff:
            if not lit.positive and (lit.predicate, lit.args) in eff_atoms:
                raise DomainValidationError(
                    f"{self.name}: atom {lit.predicate}{lit.args} both added and deleted"
                )
        object.__setattr__(self, "preconditions", pre)
        object.__setattr__(self, "effects", eff)

    @property
    def add_effects(self) -> Iterator[SchemaLiteral]:
        return (l for l in self.effects if l.positive)

    @property
    def del_effects(self) -> Iterator[SchemaLiteral]:
        return (l for l in self.effects if not l.positive)


@dataclass
class StripsDomain:
    name: str
    predicates: dict[str, int]  # predicate name -> arity
    schemas: dict[str, ActionSchema]

    def __post_init__(self) -> None:
        for schema_name, schema in self.schemas.items():
            if schema_name != schema.name:
                raise DomainValidationError(
                    f"schema registered under {schema_name!r} is named {schema.name!r}"
                )
            for lit in schema.preconditions + schema.effects:
                declared = self.predicates.get(lit.predicate)
                if declared is None:
                    raise DomainValidationError(
                        f"{schema.name}: undeclared predicate {lit.predicate!r}"
                    )
                if declared != len(lit.args):
                    raise DomainValidationError(
                        f"{schema.name}: {lit.predicate} used with {len(lit.args)} "
                        f"args, declared arity {declared}"
                    )

    @classmethod
    def from_schemas(
        cls, name: str, predicates: Iterable[PredicateSymbol], schemas: Iterable[ActionSchema]
    ) -> "StripsDomain":
        preds = {}
        for p in predicates:
            if p.name in preds and preds[p.name] != p.arity:
                raise DomainValidationError(f"predicate {p.name} declared twice with different arity")
            preds[p.name] = p.arity
        return cls(name, preds, {s.name: s for s in schemas})


@dataclass
class StripsInstance:
    """Objects plus an initial state.

    ``init_false`` carries explicitly-negated atoms.  Under closed-world
    semantics they are redundant, but partial states produced by learning
    need them, so they round-trip through the PDDL layer.
    """

    name: str
    domain_name: str
    objects: tuple[str, ...]
    init_true: frozenset
    init_false: frozenset = frozenset()

    def __post_init__(self) -> None:
        self.objects = tuple(sorted(set(self.objects)))
        self.init_true = frozenset(self.init_true)
        self.init_false = frozenset(self.init_false)
        clash = self.init_true & self.init_false
        if clash:
            raise DomainValidationError(
                f"instance {self.name}: contradictory init atoms {sorted(clash)[:3]}"
            )
        known = set(self.objects)
        for pred, args in self.init_true | self.init_false:
            for a in args:
                if a not in known:
                    raise DomainValidationError(
                        f"instance {self.name}: init atom ({pred} ...) uses undeclared object {a!r}"
                    )

    @property
    def initial_state(self) -> GroundState:
        return frozenset(self.init_true)


def check_well_formed(domain: StripsDomain) -> list[tuple[str, SchemaLiteral]]:
    """Return all effect literals whose complement is missing from the preconditions.

    An empty list means the domain is well formed: every effect actually
    flips the state, so no action is ever a no-op on an atom it mentions.
    """
    violations = []
    for schema in domain.schemas.values():
        pre = set(schema.preconditions)
        for eff in schema.effects:
            if eff.complement not in pre:
                violations.append((schema.name, eff))
    return violations


def is_well_formed(domain: StripsDomain) -> bool:
    return not check_well_formed(domain)


def _index_state(state: GroundState) -> dict[str, list[tuple[str, ...]]]:
    by_pred: dict[str, list[tuple[str, ...]]] = {}
    for pred, args in state:
        by_pred.setdefault(pred, []).append(args)
    return by_pred


def _match_schema(
    schema: ActionSchema,
    state: GroundState,
    index: Mapping[str, list[tuple[str, ...]]],
    objects: Sequence[str],
) -> Iterator[tuple[str, ...]]:
    """Yield every binding (parameter tuple) under which the schema applies."""
    positives = [l for l in schema.preconditions if l.positive]
    negatives = [l for l in schema.preconditions if not l.positive]
    binding: list = [None] * schema.arity

    # Order positive literals greedily, most-bound-first, so each join step
    # filters as hard as possible.  Cheap and good enough at our sizes.
    order: list[SchemaLiteral] = []
    bound: set[int] = set()
    remaining = list(positives)
    while remaining:
        remaining.sort(
            key=lambda l: (
                -sum(1 for i in l.args if i in bound),
                len(index.get(l.predicate, ())),
                l,
            )
        )
        lit = remaining.pop(0)
        order.append(lit)
        bound.update(lit.args)

    free_after_join = [i for i in range(schema.arity) if i not in bound]

    def extend(pos: int) -> Iterator[tuple[str, ...]]:
        if pos == len(order):
            yield from enumerate_free(0)
            return
        lit = order[pos]
        for args in index.get(lit.predicate, ()):
            undo: list[int] = []
            ok = True
            for slot, value in zip(lit.args, args):
                cur = binding[slot]
                if cur is None:
                    binding[slot] = value
                    undo.append(slot)
                elif cur != value:
                    ok = False
                    break
            if ok:
                yield from extend(pos + 1)
            for slot in undo:
                binding[slot] = None

    def enumerate_free(k: int) -> Iterator[tuple[str, ...]]:
        if k == len(free_after_join):
            for lit in negatives:
                if lit.ground(binding) in state:
                    return
            yield tuple(binding)
            return
        slot = free_after_join[k]
        for obj in objects:
            binding[slot] = obj
            yield from enumerate_free(k + 1)
            binding[slot] = None

    yield from extend(0)


def applicable_actions(
    domain: StripsDomain, instance: StripsInstance, state: GroundState
) -> list[GroundAction]:
    """All ground actions applicable in ``state``, sorted by (name, args)."""
    index = _index_state(state)
    out: list[GroundAction] = []
    for name in sorted(domain.schemas):
        schema = domain.schemas[name]
        for args in _match_schema(schema, state, index, instance.objects):
            out.append(GroundAction(name, args))
    out.sort()
    return out


def is_applicable(domain: StripsDomain, state: GroundState, action: GroundAction) -> bool:
    schema = _lookup(domain, action)
    for lit in schema.preconditions:
        if (lit.ground(action.args) in state) != lit.positive:
            return False
    return True


def _lookup(domain: StripsDomain, action: GroundAction) -> ActionSchema:
    schema = domain.schemas.get(action.name)
    if schema is None:
        raise DomainValidationError(f"unknown action {action.name!r}")
    if len(action.args) != schema.arity:
        raise DomainValidationError(
            f"{action.name} expects {schema.arity} arguments, got {len(action.args)}"
        )
    return schema


def apply(
    domain: StripsDomain, state: GroundState, action: GroundAction, check: bool = True
) -> GroundState:
    """Successor state of applying ``action``; raises if inapplicable and ``check``."""
    schema = _lookup(domain, action)
    if check and not is_applicable(domain, state, action):
        raise InapplicableActionError(f"{action} is not applicable")
    dels = {l.ground(action.args) for l in schema.del_effects}
    adds = {l.ground(action.args) for l in schema.add_effects}
    return frozenset((state - dels) | adds)


def successors(
    domain: StripsDomain, instance: StripsInstance, state: GroundState
) -> list[tuple[GroundAction, GroundState]]:
    """Sorted (action, next-state) pairs for every applicable ground action."""
    acts = applicable_actions(domain, instance, state)
    return [(a, apply(domain, state, a, check=False)) for a in acts]
