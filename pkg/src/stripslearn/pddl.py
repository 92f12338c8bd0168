"""Read and write the STRIPS-with-negation subset of PDDL.

Supported: typed parameter/object lists (types are parsed and discarded),
:predicates, :action with conjunctive preconditions/effects, literal
negation, ground :init atoms including explicit (not ...) entries, and an
ignored :goal section.  Everything else — constants in action bodies,
quantifiers, conditional effects, functions — is rejected with a
ParseError that points at the offending span.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import (
    ActionSchema,
    DomainValidationError,
    PredicateSymbol,
    SchemaLiteral,
    StripsDomain,
    StripsInstance,
    StripsError,
)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*\Z")


@dataclass(frozen=True)
class SourceSpan:
    """[start, end) byte offsets into the UTF-8 input, plus the 1-based
    line/column where the region begins."""

    start: int
    end: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(StripsError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class PddlEmitError(StripsError):
    pass


@dataclass(frozen=True)
class _Sym:
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class _List:
    items: tuple
    span: SourceSpan


def _blen(s: str) -> int:
    return len(s) if s.isascii() else len(s.encode("utf-8"))


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    byte = 0
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            byte += 1
        elif c in " \t\r":
            i += 1
            col += 1
            byte += 1
        elif c == ";":
            j = i
            while j < n and text[j] != "\n":
                j += 1
            byte += _blen(text[i:j])
            col += j - i
            i = j
        elif c in "()":
            yield (c, c, SourceSpan(byte, byte + 1, line, col))
            i += 1
            col += 1
            byte += 1
        else:
            start_byte, start_line, start_col = byte, line, col
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            word = text[i:j]
            byte += _blen(word)
            col += j - i
            i = j
            yield ("sym", word, SourceSpan(start_byte, byte, start_line, start_col))
    yield ("eof", "", SourceSpan(byte, byte, line, col))


def _read_sexprs(text: str) -> list:
    """Parse the whole input into a list of s-expressions with spans."""
    stack: list[list] = []
    open_spans: list[SourceSpan] = []
    top: list = []
    for kind, word, span in _tokenize(text):
        if kind == "(":
            stack.append([])
            open_spans.append(span)
        elif kind == ")":
            if not stack:
                raise ParseError("unbalanced ')'", span)
            items = stack.pop()
            open_span = open_spans.pop()
            node = _List(
                tuple(items),
                SourceSpan(open_span.start, span.end, open_span.line, open_span.column),
            )
            (stack[-1] if stack else top).append(node)
        elif kind == "sym":
            (stack[-1] if stack else top).append(_Sym(word, span))
        else:  # eof
            if stack:
                raise ParseError("unclosed '('", open_spans[-1])
    return top


def _expect_list(node, what: str) -> _List:
    if not isinstance(node, _List):
        raise ParseError(f"expected {what}, got atom {node.text!r}", node.span)
    return node


def _expect_sym(node, what: str) -> _Sym:
    if not isinstance(node, _Sym):
        raise ParseError(f"expected {what}, got a parenthesized form", node.span)
    return node


def _check_name(sym: _Sym, what: str) -> str:
    if not _NAME_RE.match(sym.text):
        raise ParseError(f"invalid {what} {sym.text!r}", sym.span)
    return sym.text


def _parse_typed_names(items: Sequence, what: str, allow_var: bool) -> list[_Sym]:
    """Flatten a possibly-typed name list, dropping '- type' annotations."""
    out: list[_Sym] = []
    i = 0
    while i < len(items):
        node = items[i]
        sym = _expect_sym(node, what)
        if sym.text == "-":
            if not out:
                raise ParseError("type marker '-' with nothing to its left", sym.span)
            if i + 1 >= len(items):
                raise ParseError("dangling type marker '-'", sym.span)
            type_node = items[i + 1]
            if isinstance(type_node, _List):
                raise ParseError("compound types are not supported", type_node.span)
            i += 2
            continue
        if sym.text.startswith("?"):
            if not allow_var:
                raise ParseError(f"variable {sym.text!r} not allowed here", sym.span)
            if not _NAME_RE.match(sym.text[1:]):
                raise ParseError(f"invalid variable name {sym.text!r}", sym.span)
        else:
            if allow_var:
                raise ParseError(f"expected a ?variable, got {sym.text!r}", sym.span)
            _check_name(sym, what)
        out.append(sym)
        i += 1
    return out


def _single_define(text: str, kind: str) -> _List:
    forms = _read_sexprs(text)
    if not forms:
        raise ParseError("empty input", SourceSpan(0, 0, 1, 1))
    if len(forms) > 1:
        raise ParseError("more than one top-level form", forms[1].span)
    top = _expect_list(forms[0], "(define ...)")
    if not top.items or not isinstance(top.items[0], _Sym) or top.items[0].text != "define":
        raise ParseError("expected (define ...)", top.span)
    if len(top.items) < 2:
        raise ParseError(f"missing ({kind} <name>)", top.span)
    head = _expect_list(top.items[1], f"({kind} <name>)")
    if (
        len(head.items) != 2
        or not isinstance(head.items[0], _Sym)
        or head.items[0].text != kind
    ):
        raise ParseError(f"expected ({kind} <name>)", head.span)
    return top


_KNOWN_REQUIREMENTS = {":strips", ":typing", ":negative-preconditions"}


def _parse_literal(node, params: dict[str, int], predicates: dict[str, int]) -> SchemaLiteral:
    form = _expect_list(node, "a literal")
    if not form.items:
        raise ParseError("empty literal", form.span)
    head = _expect_sym(form.items[0], "predicate name")
    positive = True
    if head.text == "not":
        if len(form.items) != 2:
            raise ParseError("(not ...) takes exactly one literal", form.span)
        inner = _expect_list(form.items[1], "a literal")
        if inner.items and isinstance(inner.items[0], _Sym) and inner.items[0].text == "not":
            raise ParseError("double negation is not supported", inner.span)
        form = inner
        if not form.items:
            raise ParseError("empty literal", form.span)
        head = _expect_sym(form.items[0], "predicate name")
        positive = False
    if head.text in ("and", "or", "forall", "exists", "when", "=", "imply"):
        raise ParseError(f"unsupported construct {head.text!r} in a literal position", head.span)
    pred = _check_name(head, "predicate name")
    if pred not in predicates:
        raise ParseError(f"undeclared predicate {pred!r}", head.span)
    args: list[int] = []
    for term in form.items[1:]:
        sym = _expect_sym(term, "an argument")
        if not sym.text.startswith("?"):
            raise ParseError(
                f"constant {sym.text!r} in an action body is not supported", sym.span
            )
        if sym.text not in params:
            raise ParseError(f"unbound variable {sym.text}", sym.span)
        args.append(params[sym.text])
    if len(args) != predicates[pred]:
        raise ParseError(
            f"{pred} takes {predicates[pred]} arguments, got {len(args)}", form.span
        )
    return SchemaLiteral(pred, tuple(args), positive)


def _parse_condition(node, params: dict[str, int], predicates: dict[str, int]) -> list[SchemaLiteral]:
    """A condition is a literal or an (and ...) of conditions, flattened."""
    form = _expect_list(node, "a condition")
    if form.items and isinstance(form.items[0], _Sym) and form.items[0].text == "and":
        out: list[SchemaLiteral] = []
        for sub in form.items[1:]:
            out.extend(_parse_condition(sub, params, predicates))
        return out
    return [_parse_literal(node, params, predicates)]


def parse_domain(text: str) -> StripsDomain:
    top = _single_define(text, "domain")
    name = _check_name(_expect_sym(top.items[1].items[1], "domain name"), "domain name")
    predicates: dict[str, int] = {}
    schemas: dict[str, ActionSchema] = {}
    seen_predicates = False

    for section in top.items[2:]:
        sec = _expect_list(section, "a domain section")
        if not sec.items:
            raise ParseError("empty section", sec.span)
        tag = _expect_sym(sec.items[0], "section tag").text

        if tag == ":requirements":
            for req in sec.items[1:]:
                sym = _expect_sym(req, "requirement flag")
                if sym.text not in _KNOWN_REQUIREMENTS:
                    raise ParseError(f"unsupported requirement {sym.text}", sym.span)
        elif tag == ":types":
            _parse_typed_names(sec.items[1:], "type name", allow_var=False)
        elif tag == ":predicates":
            if seen_predicates:
                raise ParseError("duplicate :predicates section", sec.span)
            seen_predicates = True
            for decl in sec.items[1:]:
                form = _expect_list(decl, "a predicate declaration")
                if not form.items:
                    raise ParseError("empty predicate declaration", form.span)
                pname = _check_name(_expect_sym(form.items[0], "predicate name"), "predicate name")
                variables = _parse_typed_names(form.items[1:], "parameter", allow_var=True)
                if len({v.text for v in variables}) != len(variables):
                    raise ParseError(f"duplicate parameter in {pname}", form.span)
                if pname in predicates:
                    raise ParseError(f"predicate {pname} declared twice", form.span)
                predicates[pname] = len(variables)
        elif tag == ":action":
            if len(sec.items) < 2:
                raise ParseError("action without a name", sec.span)
            aname = _check_name(_expect_sym(sec.items[1], "action name"), "action name")
            if aname in schemas:
                raise ParseError(f"action {aname} defined twice", sec.span)
            body: dict[str, object] = {}
            i = 2
            while i < len(sec.items):
                key = _expect_sym(sec.items[i], "an :action keyword")
                if key.text not in (":parameters", ":precondition", ":effect"):
                    raise ParseError(f"unsupported action keyword {key.text}", key.span)
                if i + 1 >= len(sec.items):
                    raise ParseError(f"{key.text} is missing its value", key.span)
                if key.text in body:
                    raise ParseError(f"duplicate {key.text}", key.span)
                body[key.text] = sec.items[i + 1]
                i += 2
            if ":parameters" not in body:
                raise ParseError(f"action {aname} has no :parameters", sec.span)
            if ":effect" not in body:
                raise ParseError(f"action {aname} has no :effect", sec.span)
            param_list = _expect_list(body[":parameters"], "a parameter list")
            variables = _parse_typed_names(param_list.items, "parameter", allow_var=True)
            params: dict[str, int] = {}
            for v in variables:
                if v.text in params:
                    raise ParseError(f"duplicate parameter {v.text}", v.span)
                params[v.text] = len(params)
            pre: list[SchemaLiteral] = []
            if ":precondition" in body:
                pre = _parse_condition(body[":precondition"], params, predicates)
            eff = _parse_condition(body[":effect"], params, predicates)
            try:
                schemas[aname] = ActionSchema(aname, len(params), tuple(pre), tuple(eff))
            except DomainValidationError as exc:
                raise ParseError(str(exc), sec.span) from exc
        else:
            raise ParseError(f"unsupported domain section {tag}", sec.span)

    domain = StripsDomain(name, predicates, schemas)
    return domain


def parse_instance(text: str, domain: StripsDomain | None = None) -> StripsInstance:
    top = _single_define(text, "problem")
    name = _check_name(_expect_sym(top.items[1].items[1], "problem name"), "problem name")
    domain_name = ""
    objects: list[str] = []
    init_true: set = set()
    init_false: set = set()
    span_of_init = top.span

    for section in top.items[2:]:
        sec = _expect_list(section, "a problem section")
        if not sec.items:
            raise ParseError("empty section", sec.span)
        tag = _expect_sym(sec.items[0], "section tag").text

        if tag == ":domain":
            if len(sec.items) != 2:
                raise ParseError(":domain takes one name", sec.span)
            domain_name = _check_name(_expect_sym(sec.items[1], "domain name"), "domain name")
            if domain is not None and domain_name != domain.name:
                raise ParseError(
                    f"problem is for domain {domain_name!r}, expected {domain.name!r}", sec.span
                )
        elif tag == ":objects":
            for sym in _parse_typed_names(sec.items[1:], "object name", allow_var=False):
                if sym.text in objects:
                    raise ParseError(f"object {sym.text} declared twice", sym.span)
                objects.append(sym.text)
        elif tag == ":init":
            span_of_init = sec.span
            known = set(objects)
            for entry in sec.items[1:]:
                form = _expect_list(entry, "an init atom")
                negated = False
                if form.items and isinstance(form.items[0], _Sym) and form.items[0].text == "not":
                    if len(form.items) != 2:
                        raise ParseError("(not ...) takes exactly one atom", form.span)
                    form = _expect_list(form.items[1], "an atom")
                    negated = True
                if not form.items:
                    raise ParseError("empty init atom", form.span)
                head = _expect_sym(form.items[0], "predicate name")
                pred = _check_name(head, "predicate name")
                args = []
                for term in form.items[1:]:
                    sym = _expect_sym(term, "an object name")
                    if sym.text.startswith("?"):
                        raise ParseError("variables are not allowed in :init", sym.span)
                    if sym.text not in known:
                        raise ParseError(f"undeclared object {sym.text!r}", sym.span)
                    args.append(sym.text)
                if domain is not None:
                    declared = domain.predicates.get(pred)
                    if declared is None:
                        raise ParseError(f"undeclared predicate {pred!r}", head.span)
                    if declared != len(args):
                        raise ParseError(
                            f"{pred} takes {declared} arguments, got {len(args)}", form.span
                        )
                atom = (pred, tuple(args))
                (init_false if negated else init_true).add(atom)
        elif tag == ":goal":
            pass  # goals carry no information the learner uses; accepted and ignored
        else:
            raise ParseError(f"unsupported problem section {tag}", sec.span)

    try:
        return StripsInstance(name, domain_name, tuple(objects), frozenset(init_true), frozenset(init_false))
    except DomainValidationError as exc:
        raise ParseError(str(exc), span_of_init) from exc


def _var(i: int) -> str:
    return f"?x{i}"


def _format_literal(lit: SchemaLiteral) -> str:
    atom = "(" + " ".join([lit.predicate] + [_var(i) for i in lit.args]) + ")"
    return atom if lit.positive else f"(not {atom})"


def emit_domain(
    domain: StripsDomain,
    comments: Iterable[str] = (),
    param_types: Mapping[str, Sequence[str]] | None = None,
) -> str:
    """Render a domain as PDDL text.  Deterministic: everything is sorted.

    ``param_types`` optionally maps an action name to one type name per
    parameter; when present the actions are emitted with ``?x - t`` typed
    parameter lists and a matching ``(:types ...)`` section.  Types are
    documentation: the parser ignores them on the way back in.
    """
    lines = [f";; {c}" for c in comments]
    lines.append(f"(define (domain {domain.name})")
    reqs = ":strips :negative-preconditions"
    if param_types:
        reqs += " :typing"
    lines.append(f"  (:requirements {reqs})")
    if param_types:
        names = sorted({t for ts in param_types.values() for t in ts})
        lines.append("  (:types " + " ".join(names) + ")")
    lines.append("  (:predicates")
    for pname in sorted(domain.predicates):
        arity = domain.predicates[pname]
        lines.append("    (" + " ".join([pname] + [_var(i) for i in range(arity)]) + ")")
    lines.append("  )")
    for aname in sorted(domain.schemas):
        schema = domain.schemas[aname]
        types = (param_types or {}).get(aname)
        if types is not None and len(types) != schema.arity:
            raise PddlEmitError(
                f"{aname}: {len(types)} parameter types for arity {schema.arity}"
            )
        if types is not None:
            params = " ".join(f"{_var(i)} - {t}" for i, t in enumerate(types))
        else:
            params = " ".join(_var(i) for i in range(schema.arity))
        lines.append(f"  (:action {aname}")
        lines.append(f"    :parameters ({params})")
        pre = " ".join(_format_literal(l) for l in schema.preconditions)
        eff = " ".join(_format_literal(l) for l in schema.effects)
        lines.append(f"    :precondition (and {pre})".rstrip() if pre else "    :precondition (and)")
        lines.append(f"    :effect (and {eff})".rstrip() if eff else "    :effect (and)")
        lines.append("  )")
    lines.append(")")
    return "\n".join(lines) + "\n"


def emit_instance(instance: StripsInstance, comments: Iterable[str] = ()) -> str:
    lines = [f";; {c}" for c in comments]
    lines.append(f"(define (problem {instance.name})")
    lines.append(f"  (:domain {instance.domain_name})")
    lines.append("  (:objects " + " ".join(instance.objects) + ")")
    lines.append("  (:init")
    for pred, args in sorted(instance.init_true):
        lines.append("    (" + " ".join([pred] + list(args)) + ")")
    for pred, args in sorted(instance.init_false):
        lines.append("    (not (" + " ".join([pred] + list(args)) + "))")
    lines.append("  )")
    lines.append(")")
    return "\n".join(lines) + "\n"
