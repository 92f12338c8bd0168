"""Parser and printer for the STRIPS-with-negation PDDL subset."""

import random
import string

import pytest

from stripslearn import benchmarks
from stripslearn.pddl import (
    ParseError,
    PddlEmitError,
    emit_domain,
    emit_instance,
    parse_domain,
    parse_instance,
)

BLOCKS3 = """
(define (domain blocks3)
  (:requirements :strips :negative-preconditions)
  (:predicates (on ?x ?y) (clear ?x) (on-table ?x))
  (:action move
    :parameters (?b ?from ?to)
    :precondition (and (on ?b ?from) (clear ?b) (clear ?to) (not (on ?b ?to)))
    :effect (and (not (on ?b ?from)) (on ?b ?to) (clear ?from) (not (clear ?to))))
  (:action move-to-table
    :parameters (?b ?from)
    :precondition (and (on ?b ?from) (clear ?b) (not (on-table ?b)))
    :effect (and (not (on ?b ?from)) (on-table ?b) (clear ?from)))
  (:action move-from-table
    :parameters (?b ?to)
    :precondition (and (on-table ?b) (clear ?b) (clear ?to) (not (on ?b ?to)))
    :effect (and (not (on-table ?b)) (on ?b ?to) (not (clear ?to))))
)
"""


def test_three_operator_domain():
    domain = parse_domain(BLOCKS3)
    assert len(domain.schemas) == 3
    assert set(domain.schemas) == {"move", "move-to-table", "move-from-table"}
    assert domain.predicates == {"on": 2, "clear": 1, "on-table": 1}


def test_empty_precondition_conjunction():
    text = """
    (define (domain d) (:predicates (p))
      (:action a :parameters () :precondition (and) :effect (and (p))))
    """
    domain = parse_domain(text)
    assert domain.schemas["a"].preconditions == ()


def test_double_negation_rejected_with_span():
    text = """
    (define (domain d) (:predicates (p))
      (:action a :parameters () :precondition (not (not (p))) :effect (and (p))))
    """
    with pytest.raises(ParseError) as exc:
        parse_domain(text)
    assert exc.value.span is not None
    assert exc.value.span.line >= 1


def test_unknown_requirement_rejected():
    text = "(define (domain d) (:requirements :adl) (:predicates (p)))"
    with pytest.raises(ParseError) as exc:
        parse_domain(text)
    assert exc.value.span is not None


def test_duplicate_schema_name_rejected():
    text = """
    (define (domain d) (:predicates (p))
      (:action a :parameters () :precondition (and (not (p))) :effect (and (p)))
      (:action a :parameters () :precondition (and (p)) :effect (and (not (p)))))
    """
    with pytest.raises(ParseError):
        parse_domain(text)


def test_typed_parameters_accepted_and_ignored():
    text = """
    (define (domain d) (:requirements :strips :typing) (:types t1 t2)
      (:predicates (p ?x))
      (:action a :parameters (?x - t1) :precondition (and (not (p ?x))) :effect (and (p ?x))))
    """
    domain = parse_domain(text)
    assert domain.schemas["a"].arity == 1


# ------------------------------------------------------------- instances


def test_gripper_instance_objects(gripper_bench):
    _, train, _ = gripper_bench
    assert len(train.objects) == 12


def test_negated_init_atom_recorded_absent():
    d = parse_domain("(define (domain d) (:predicates (free ?x)))")
    inst = parse_instance(
        "(define (problem p) (:domain d) (:objects g1) (:init (not (free g1))))", d
    )
    assert ("free", ("g1",)) not in inst.init_true
    assert ("free", ("g1",)) in inst.init_false


def test_contradictory_init_rejected():
    d = parse_domain("(define (domain d) (:predicates (at ?x ?y)))")
    text = "(define (problem p) (:domain d) (:objects b1 r1) (:init (at b1 r1) (not (at b1 r1))))"
    with pytest.raises(ParseError) as exc:
        parse_instance(text, d)
    assert "contradictory" in str(exc.value)


def test_wrong_arity_atom_rejected_with_span():
    d = parse_domain("(define (domain d) (:predicates (at ?x ?y)))")
    with pytest.raises(ParseError) as exc:
        parse_instance("(define (problem p) (:domain d) (:objects b1) (:init (at b1)))", d)
    assert exc.value.span is not None


def test_goal_parsed_and_discarded():
    d = parse_domain("(define (domain d) (:predicates (p ?x)))")
    inst = parse_instance(
        "(define (problem p) (:domain d) (:objects a) (:init (p a)) (:goal (and (p a))))", d
    )
    assert inst.init_true == frozenset({("p", ("a",))})


# ------------------------------------------------------------- round trips


@pytest.mark.parametrize("name", [e.name for e in benchmarks.list_benchmarks()])
def test_bundled_round_trip(name):
    entry = benchmarks.get_benchmark(name)
    domain, train, test = entry.load()
    assert parse_domain(emit_domain(domain)) == domain
    assert parse_instance(emit_instance(train), domain) == train
    assert parse_instance(emit_instance(test), domain) == test


def test_empty_domain_round_trip():
    from stripslearn.core import StripsDomain

    d = StripsDomain("empty", {}, {})
    assert parse_domain(emit_domain(d)) == d


def test_emitted_learned_domain_contains_signed_effects(gripper_bench):
    from stripslearn.learner import learn
    from stripslearn.sampling import SampleConfig, sample_traces

    domain, train, _ = gripper_bench
    graph = sample_traces(domain, train, SampleConfig(kind="traces", n=2, L=250, seed=4))
    result = learn(graph)
    text = emit_domain(result.learned.domain, param_types=result.learned.param_types)
    # the ball-location feature shows up as one add and one delete
    for i, feature in enumerate(result.learned.features):
        assert f"(f{i}" in text
    parsed = parse_domain(text)
    assert parsed == result.learned.domain


def test_emit_with_mismatched_param_types_rejected(gripper_bench):
    domain, _, _ = gripper_bench
    with pytest.raises(PddlEmitError):
        emit_domain(domain, param_types={"move": ("t0",)})  # arity is 2


def test_negative_init_survives_round_trip():
    from stripslearn.core import StripsInstance

    d = parse_domain("(define (domain d) (:predicates (p ?x)))")
    inst = StripsInstance("i", "d", ("a", "b"), frozenset({("p", ("a",))}), frozenset({("p", ("b",))}))
    back = parse_instance(emit_instance(inst), d)
    assert back.init_true == inst.init_true
    assert back.init_false == inst.init_false


# ---------------------------------------------------------------- fuzzing


def test_parser_rejects_noise_with_spans():
    """Short fuzz pass: arbitrary token soup either parses or raises a
    ParseError carrying a source span, never anything else."""
    rng = random.Random(99)
    alphabet = "()?:-_ \n\tdefineaction" + string.ascii_lowercase + string.digits
    for _ in range(400):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 120)))
        try:
            parse_domain(text)
        except ParseError as exc:
            assert exc.span is not None
            assert exc.span.start <= exc.span.end


def test_parser_rejects_mutated_valid_text():
    entry = benchmarks.get_benchmark("blocks3")
    base = emit_domain(entry.load_domain())
    rng = random.Random(7)
    for _ in range(200):
        chars = list(base)
        for _ in range(rng.randrange(1, 4)):
            pos = rng.randrange(len(chars))
            op = rng.randrange(3)
            if op == 0:
                del chars[pos]
            elif op == 1:
                chars.insert(pos, rng.choice("()abc:?x0 "))
            else:
                chars[pos] = rng.choice("()abc:?x0 ")
        try:
            parse_domain("".join(chars))
        except ParseError as exc:
            assert exc.span is not None
