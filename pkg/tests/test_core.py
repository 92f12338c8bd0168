"""STRIPS semantics: well-formedness, applicability, successor states."""

import pytest
from hypothesis import given, strategies as st

from stripslearn.core import (
    ActionSchema,
    DomainValidationError,
    GroundAction,
    InapplicableActionError,
    PredicateSymbol,
    SchemaLiteral,
    StripsDomain,
    StripsInstance,
    applicable_actions,
    apply,
    check_well_formed,
    is_applicable,
    is_well_formed,
    successors,
)

from conftest import L, make_footnote_domain, make_mini_gripper


# ------------------------------------------------------------ structural


def test_contradictory_preconditions_rejected():
    with pytest.raises(DomainValidationError):
        ActionSchema("a", 1, (L("p", 0), L("p", 0, positive=False)), (L("p", 0),))


def test_add_and_delete_same_atom_rejected():
    with pytest.raises(DomainValidationError):
        ActionSchema("a", 1, (), (L("p", 0), L("p", 0, positive=False)))


def test_out_of_range_parameter_rejected():
    with pytest.raises(DomainValidationError):
        ActionSchema("a", 1, (L("p", 3),), ())


def test_undeclared_predicate_rejected():
    schema = ActionSchema("a", 0, (), (L("p"),))
    with pytest.raises(DomainValidationError):
        StripsDomain.from_schemas("d", [], [schema])


def test_init_contradiction_rejected():
    with pytest.raises(DomainValidationError):
        StripsInstance("i", "d", ("x",), frozenset({("p", ("x",))}), frozenset({("p", ("x",))}))


def test_init_unknown_object_rejected():
    with pytest.raises(DomainValidationError):
        StripsInstance("i", "d", (), frozenset({("p", ("ghost",))}))


# ------------------------------------------------------- well-formedness


def test_gripper_pick_effect_complement_is_precondition(mini_gripper):
    domain, _ = mini_gripper
    assert check_well_formed(domain) == []
    assert is_well_formed(domain)


def test_missing_complement_reported():
    # effect adds p() while p() is already a precondition: one violation
    schema = ActionSchema("a", 0, (L("p"),), (L("p"),))
    domain = StripsDomain.from_schemas("d", [PredicateSymbol("p", 0)], [schema])
    violations = check_well_formed(domain)
    assert len(violations) == 1
    name, lit = violations[0]
    assert name == "a" and lit == L("p")


def test_footnote_domain_well_formed(footnote):
    domain, _ = footnote
    assert check_well_formed(domain) == []


# ---------------------------------------------------------- applicability


def test_pick_applicable_in_initial_state(mini_gripper):
    domain, instance = mini_gripper
    acts = applicable_actions(domain, instance, instance.initial_state)
    assert GroundAction("pick", ("b1", "r1", "g1")) in acts
    assert GroundAction("move", ("r1", "r2")) in acts


def test_no_groundings_without_objects(footnote):
    domain, _ = footnote
    # arity-0 actions still ground; a positive-arity schema cannot
    predicates = [PredicateSymbol("p", 1)]
    schema = ActionSchema("a", 1, (L("p", 0, positive=False),), (L("p", 0),))
    d = StripsDomain.from_schemas("d", predicates, [schema])
    inst = StripsInstance("i", "d", (), frozenset())
    assert applicable_actions(d, inst, inst.initial_state) == []


def test_pick_not_applicable_after_pick(mini_gripper):
    domain, instance = mini_gripper
    state = apply(domain, instance.initial_state, GroundAction("pick", ("b1", "r1", "g1")))
    acts = applicable_actions(domain, instance, state)
    assert GroundAction("pick", ("b1", "r1", "g1")) not in acts


def test_applicable_actions_match_manual_recheck(mini_gripper):
    domain, instance = mini_gripper
    state = instance.initial_state
    for action in applicable_actions(domain, instance, state):
        assert is_applicable(domain, state, action)
    # and nothing applicable is missed for the one action we can count:
    # 1 ball x 1 gripper picks, plus one move
    acts = applicable_actions(domain, instance, state)
    assert len(acts) == 2


# -------------------------------------------------------------- apply


def test_move_relocates_robot(mini_gripper):
    domain, instance = mini_gripper
    state = apply(domain, instance.initial_state, GroundAction("move", ("r1", "r2")))
    assert ("at-robby", ("r2",)) in state
    assert ("at-robby", ("r1",)) not in state


def test_apply_changes_state_and_double_toggle_blocked(mini_gripper):
    domain, instance = mini_gripper
    a = GroundAction("move", ("r1", "r2"))
    state = apply(domain, instance.initial_state, a)
    assert state != instance.initial_state
    with pytest.raises(InapplicableActionError):
        apply(domain, state, a)


def test_move_then_back_restores_state(mini_gripper):
    domain, instance = mini_gripper
    s0 = instance.initial_state
    s1 = apply(domain, s0, GroundAction("move", ("r1", "r2")))
    s2 = apply(domain, s1, GroundAction("move", ("r2", "r1")))
    assert s2 == s0


def test_footnote_a_then_d_inapplicable(footnote):
    domain, instance = footnote
    state = apply(domain, instance.initial_state, GroundAction("a", ()))
    assert state == frozenset({("r", ())})
    assert not is_applicable(domain, state, GroundAction("d", ()))
    with pytest.raises(InapplicableActionError):
        apply(domain, state, GroundAction("d", ()))


def test_apply_unknown_action_is_structural_error(mini_gripper):
    domain, instance = mini_gripper
    with pytest.raises(DomainValidationError):
        apply(domain, instance.initial_state, GroundAction("teleport", ("r1",)))


# ------------------------------------------------------------ properties


@given(st.integers(0, 400), st.integers(2, 4))
def test_random_walk_never_stalls_on_well_formed_domain(steps_seed, balls):
    """apply(a, s) != s along any applicable walk (well-formedness)."""
    import random

    domain, instance = make_mini_gripper(balls=balls, rooms=2, grippers=2)
    rng = random.Random(steps_seed)
    state = instance.initial_state
    for _ in range(12):
        acts = applicable_actions(domain, instance, state)
        if not acts:
            break
        nxt = apply(domain, state, rng.choice(acts))
        assert nxt != state
        state = nxt


def test_successors_agree_with_applicable_actions(mini_gripper):
    domain, instance = mini_gripper
    state = instance.initial_state
    succ = dict(successors(domain, instance, state))
    assert set(succ) == set(applicable_actions(domain, instance, state))
    for action, nxt in succ.items():
        assert nxt == apply(domain, state, action)


def test_footnote_reachable_space_by_hand(footnote):
    """Exhaustive check of the 4-action toggle domain: state space has the
    5 states {}, {r}, {r-less p1}, ... reachable exactly as simulated here."""
    domain, instance = footnote
    seen = set()
    frontier = [instance.initial_state]
    while frontier:
        s = frontier.pop()
        if s in seen:
            continue
        seen.add(s)
        for a in applicable_actions(domain, instance, s):
            frontier.append(apply(domain, s, a))
    assert frozenset() in seen
    assert frozenset({("r", ())}) in seen
    # r and p1 and p2 can never all be false-with-d-applicable; enumerate:
    assert len(seen) == 8
