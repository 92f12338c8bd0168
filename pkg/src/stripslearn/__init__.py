"""Learning lifted STRIPS domains from action traces and state graphs.

The pipeline: sample training inputs from a hidden instance (`sampling`),
infer argument types (`typeinf`), enumerate candidate predicates as
features over action argument positions (`features`), keep the ones whose
sign constraints are satisfiable on the input (`consistency`), assemble a
domain and instance (`learner`), and check the result against held-out
inputs from larger instances (`verify`).  `pddl` reads and writes the
STRIPS subset of PDDL; `benchmarks` ships the bundled experiment suite.
"""

from .core import (
    ActionSchema,
    Atom,
    DomainValidationError,
    GroundAction,
    GroundState,
    InapplicableActionError,
    PredicateSymbol,
    SchemaLiteral,
    StripsDomain,
    StripsError,
    StripsInstance,
    apply,
    applicable_actions,
    check_well_formed,
    is_applicable,
    is_well_formed,
    successors,
)
from .tracegraph import Edge, TraceGraph, TraceGraphError, parse_trace_text, emit_trace_text
from .pddl import ParseError, PddlEmitError, emit_domain, emit_instance, parse_domain, parse_instance
from .sampling import SampleConfig, SamplingError, derive_seed, generate, stream_rng
from .typeinf import TypeAssignment, TypeInferenceError, infer_types
from .features import ActionPattern, Feature, FeatureEnumerationError, candidate_count, enumerate_features, make_feature
from .consistency import ConsistencyError, SignAssignment, admissible_features, brute_force_check, check_feature
from .learner import (
    AtomValuation,
    LearnedDomain,
    LearnedInstance,
    LearnerError,
    LearnResult,
    PropagationConflict,
    ReplayFailure,
    build_domain,
    build_instance,
    infer_preconditions,
    learn,
    learned_from_metadata,
    propagate_truth,
    replay_trace,
)
from .verify import (
    CheckReport,
    RunRecord,
    VerificationReport,
    VerifyError,
    Witness,
    check_compatibility,
    check_inapplicability,
    run_verification,
    verification_rate,
)

__version__ = "0.1.0"

__all__ = [
    "ActionPattern",
    "ActionSchema",
    "Atom",
    "AtomValuation",
    "CheckReport",
    "ConsistencyError",
    "DomainValidationError",
    "Edge",
    "Feature",
    "FeatureEnumerationError",
    "GroundAction",
    "GroundState",
    "InapplicableActionError",
    "LearnResult",
    "LearnedDomain",
    "LearnedInstance",
    "LearnerError",
    "ParseError",
    "PddlEmitError",
    "PredicateSymbol",
    "PropagationConflict",
    "ReplayFailure",
    "RunRecord",
    "SampleConfig",
    "SamplingError",
    "SchemaLiteral",
    "SignAssignment",
    "StripsDomain",
    "StripsError",
    "StripsInstance",
    "TraceGraph",
    "TraceGraphError",
    "TypeAssignment",
    "TypeInferenceError",
    "VerificationReport",
    "VerifyError",
    "Witness",
    "admissible_features",
    "applicable_actions",
    "apply",
    "brute_force_check",
    "build_domain",
    "build_instance",
    "candidate_count",
    "check_compatibility",
    "check_feature",
    "check_inapplicability",
    "check_well_formed",
    "derive_seed",
    "emit_domain",
    "emit_instance",
    "emit_trace_text",
    "enumerate_features",
    "generate",
    "infer_preconditions",
    "infer_types",
    "is_applicable",
    "is_well_formed",
    "learn",
    "learned_from_metadata",
    "make_feature",
    "parse_domain",
    "parse_instance",
    "parse_trace_text",
    "propagate_truth",
    "replay_trace",
    "run_verification",
    "stream_rng",
    "successors",
    "verification_rate",
]
