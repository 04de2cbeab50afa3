"""Parsers for sketches and for plain (sketch-free) answer set programs.

A sketch is a sequence of sections, each introduced by a header on its own line:

.. code-block:: text

    [SKETCH]
    reached(Y) :- cycle(a,Y).
    reached(Y) :- cycle(X,Y), reached(X).
    :- ?p(Y), ?not ?q(Y).
    [SKETCHEDVAR]
    ?p/1 : node, reached
    ?q/1 : node, reached
    [FACTS]
    node(a). node(b). node(c).
    [EXAMPLES]
    positive: cycle(a,b). cycle(b,c). cycle(c,a).
    negative: cycle(a,b). cycle(b,a).

Section order is free and repeated sections are concatenated. ``%`` starts a comment.
"""
import re
from typing import Dict, FrozenSet, Iterator, List, Mapping, Tuple

import pyparsing as pp

from ..exceptions import SketchSyntaxError, ValidationError
from .sketchvars import literal_occurrences, number_rule, rule_occurrences
from .validate import validate
from .types import (
    INT64_MAX,
    INT64_MIN,
    OPERATOR_DOMAINS,
    OPERATOR_TOKENS,
    AggFn,
    Aggregate,
    ArithOp,
    AspProgram,
    Atom,
    BinOp,
    ChoiceBlock,
    CmpOp,
    Comparison,
    ExampleSet,
    Integer,
    Literal,
    Rule,
    SketchedAtom,
    SketchedNegation,
    SketchKind,
    SketchProgram,
    SketchRef,
    SketchVar,
    Symbol,
    Variable,
)

pp.ParserElement.enable_packrat()

SECTIONS = ("SKETCH", "SKETCHEDVAR", "FACTS", "EXAMPLES", "PREFERENCES")
"""Recognized section headers."""

_SECTION_HEADER = re.compile(r"^[ \t]*\[([A-Za-z_]+)\][ \t]*$", re.MULTILINE)
_EXAMPLE_LABEL = re.compile(r"\b(positive|negative)\s*:(?!-)")
_COMMENT = re.compile(r"%[^\n]*")

_CMP_OPS = {
    "=": CmpOp.EQ,
    "==": CmpOp.EQ,
    "!=": CmpOp.NEQ,
    "<": CmpOp.LT,
    ">": CmpOp.GT,
    "<=": CmpOp.LEQ,
    ">=": CmpOp.GEQ,
}
_ARITH_OPS = {"+": ArithOp.ADD, "-": ArithOp.SUB, "*": ArithOp.MUL, "/": ArithOp.DIV}


def _integer(text: str, loc: int, tokens: pp.ParseResults) -> Integer:
    value = int(tokens[0])
    if not INT64_MIN <= value <= INT64_MAX:
        raise pp.ParseFatalException(text, loc, f"integer constant {tokens[0]} is out of the 64-bit range")
    return Integer(value)


def _fold(tokens: pp.ParseResults) -> object:
    result = tokens[0]
    for index in range(1, len(tokens), 2):
        symbol = tokens[index]
        op = SketchRef(SketchKind.ARITHMETIC) if symbol == "?+" else _ARITH_OPS[symbol]
        result = BinOp(result, op, tokens[index + 1])
    return result


def _distance(text: str, loc: int, tokens: pp.ParseResults) -> BinOp:
    inner = tokens[0]
    if not isinstance(inner, BinOp) or inner.op is not ArithOp.SUB:
        raise pp.ParseFatalException(text, loc, "absolute value is only supported as |A - B|")
    return BinOp(inner.left, ArithOp.DIST, inner.right)


def _comparison(tokens: pp.ParseResults) -> Comparison:
    symbol = tokens[1]
    op = SketchRef(SketchKind.COMPARISON) if symbol == "?=" else _CMP_OPS[symbol]
    return Comparison(tokens[0], op, tokens[2])


def _atom(tokens: pp.ParseResults) -> Atom:
    return Atom(tokens[0], tuple(tokens[1]) if len(tokens) > 1 else ())


def _sketched_atom(tokens: pp.ParseResults) -> SketchedAtom:
    return SketchedAtom(tokens[0][1:], tuple(tokens[1]) if len(tokens) > 1 else ())


def _sketched_head(text: str, loc: int, tokens: pp.ParseResults) -> None:
    raise pp.ParseFatalException(text, loc, f"sketched atom {tokens[0]} is not allowed in a rule head")


def _aggregate(text: str, loc: int, tokens: pp.ParseResults) -> Aggregate:
    result, symbol, terms, condition = tokens
    for element in condition:
        if isinstance(element, Comparison) and next(literal_occurrences(element), None):
            raise pp.ParseFatalException(text, loc, "sketched operators are not allowed inside aggregate conditions")
    function = SketchRef(SketchKind.AGGREGATE) if symbol == "?#" else AggFn(symbol[1:])
    return Aggregate(result, function, tuple(terms), tuple(condition))


def _rule(tokens: pp.ParseResults) -> Rule:
    head = tokens.get("head")
    if isinstance(head, pp.ParseResults):
        head = head[0]
    body = tokens.get("body")
    return Rule(head, tuple(body) if body is not None else ())


def _any_atom() -> pp.ParserElement:
    return SKETCHED_ATOM | ATOM


LPAR, RPAR, LBRACE, RBRACE, COMMA, COLON = map(pp.Suppress, "(){},:")
IF = pp.Suppress(":-")
NOT = pp.Keyword("not")
SKETCHED_NOT = pp.Keyword("?not")

VARIABLE = pp.Regex(r"[A-Z][A-Za-z0-9_]*").set_name("variable")
IDENTIFIER = pp.Regex(r"(?!not\b)[a-z][A-Za-z0-9_]*").set_name("identifier")
SKETCH_NAME = pp.Regex(r"\?(?!not\b)[a-z][A-Za-z0-9_]*").set_name("sketched predicate")
INTEGER = pp.Regex(r"-?\d+").set_name("integer")

INTEGER_TERM = INTEGER.copy().set_parse_action(_integer)
VARIABLE_TERM = VARIABLE.copy().set_parse_action(lambda tokens: Variable(tokens[0]))
SYMBOL_TERM = IDENTIFIER.copy().set_parse_action(lambda tokens: Symbol(tokens[0]))
SIMPLE_TERM = INTEGER_TERM | VARIABLE_TERM | SYMBOL_TERM

EXPRESSION = pp.Forward()
OPERAND = (
    INTEGER_TERM
    | VARIABLE_TERM
    | SYMBOL_TERM
    | (LPAR + EXPRESSION + RPAR)
    | (pp.Suppress("|") + EXPRESSION + pp.Suppress("|")).set_parse_action(_distance)
)
PRODUCT = (OPERAND + pp.ZeroOrMore(pp.one_of("* /") + OPERAND)).set_parse_action(_fold)
EXPRESSION <<= (PRODUCT + pp.ZeroOrMore(pp.one_of("?+ + -") + PRODUCT)).set_parse_action(_fold)
COMPARISON = (EXPRESSION + pp.one_of("?= != <= >= == = < >") + EXPRESSION).set_parse_action(_comparison)

ARGUMENTS = pp.Group(LPAR + SIMPLE_TERM + pp.ZeroOrMore(COMMA + SIMPLE_TERM) + RPAR)
ATOM = (IDENTIFIER + pp.Optional(ARGUMENTS)).set_parse_action(_atom).set_name("atom")
SKETCHED_ATOM = (SKETCH_NAME + pp.Optional(ARGUMENTS)).set_parse_action(_sketched_atom)

CONDITION_ELEMENT = COMPARISON | ATOM.copy().add_parse_action(lambda tokens: Literal(tokens[0]))
AGGREGATE = (
    VARIABLE_TERM
    + pp.Suppress(pp.one_of("= =="))
    + (pp.Literal("?#") | pp.Regex(r"#(count|sum|min|max)\b"))
    + LBRACE
    + pp.Group(SIMPLE_TERM + pp.ZeroOrMore(COMMA + SIMPLE_TERM))
    + COLON
    + pp.Group(CONDITION_ELEMENT + pp.ZeroOrMore(COMMA + CONDITION_ELEMENT))
    + RBRACE
).set_parse_action(_aggregate)
SKETCHED_NEGATION = (SKETCHED_NOT.suppress() + pp.Optional(NOT) + _any_atom()).set_parse_action(
    lambda tokens: SketchedNegation(tokens[-1], over_negation=len(tokens) == 2)
)
NEGATED = (NOT.suppress() + _any_atom()).set_parse_action(lambda tokens: Literal(tokens[0], negated=True))
POSITIVE = _any_atom().set_parse_action(lambda tokens: Literal(tokens[0]))
BODY_LITERAL = AGGREGATE | SKETCHED_NEGATION | NEGATED | COMPARISON | POSITIVE

BODY = pp.Group(BODY_LITERAL + pp.ZeroOrMore(COMMA + BODY_LITERAL))
HEAD = SKETCHED_ATOM.copy().set_parse_action(_sketched_head) | ATOM
RULE = ((HEAD("head") + pp.Optional(IF + BODY("body"))) | (IF + BODY("body"))).set_parse_action(_rule)

ONE = pp.Suppress(pp.Literal("1"))
CHOICE = (ONE + LBRACE + ATOM("element") + COLON + ATOM("condition") + RBRACE + ONE) | (
    ONE + LBRACE + pp.Group(ATOM + pp.ZeroOrMore(pp.Suppress(";") + ATOM))("elements") + RBRACE + ONE
)
SHOW = pp.Suppress(pp.Keyword("#show")) + IDENTIFIER + pp.Suppress("/") + INTEGER

DECLARATION = (
    SKETCH_NAME
    + pp.Suppress("/")
    + INTEGER
    + COLON
    + pp.Group(IDENTIFIER + pp.ZeroOrMore(COMMA + IDENTIFIER))
    + pp.Optional(pp.Suppress("."))
)
PREFERENCE_KEY = pp.Regex(r"\?(?:[a-z][A-Za-z0-9_]*|=|\+|#)(?:@\d+\.\d+)?").set_name("sketched variable")
PREFERENCE = (
    PREFERENCE_KEY
    + COLON
    + pp.Group(
        pp.Group(IDENTIFIER + pp.Suppress("=") + INTEGER)
        + pp.ZeroOrMore(COMMA + pp.Group(IDENTIFIER + pp.Suppress("=") + INTEGER))
    )
    + pp.Optional(pp.Suppress("."))
)


def _error(text: str, loc: int, message: str) -> SketchSyntaxError:
    return SketchSyntaxError(message, pp.lineno(loc, text), pp.col(loc, text))


def _strip_comments(text: str) -> str:
    return _COMMENT.sub(lambda match: " " * len(match.group()), text)


def _statements(text: str, start: int, end: int) -> Iterator[Tuple[int, str]]:
    """Yield ``(offset, statement)`` for each '.'-terminated statement of ``text[start:end]``."""
    position = start
    while position < end:
        stop = text.find(".", position, end)
        chunk = text[position:stop] if stop >= 0 else text[position:end]
        offset = position + len(chunk) - len(chunk.lstrip())
        if stop < 0:
            if chunk.strip():
                raise _error(text, offset, "statement is not terminated by '.'")
            return
        if not chunk.strip():
            raise _error(text, stop, "empty statement")
        yield offset, chunk.strip()
        position = stop + 1


def _lines(text: str, start: int, end: int) -> Iterator[Tuple[int, str]]:
    for match in re.finditer(r"[^\n]+", text[start:end]):
        if match.group().strip():
            yield start + match.start() + len(match.group()) - len(match.group().lstrip()), match.group().strip()


def _parse(element: pp.ParserElement, text: str, offset: int, statement: str) -> pp.ParseResults:
    try:
        return element.parse_string(statement, parse_all=True)
    except pp.ParseBaseException as exc:
        raise _error(text, offset + exc.loc, exc.msg) from None


def _split_sections(text: str) -> List[Tuple[str, int, int]]:
    headers = list(_SECTION_HEADER.finditer(text))
    prelude_end = headers[0].start() if headers else len(text)
    if text[:prelude_end].strip():
        loc = len(text[:prelude_end]) - len(text[:prelude_end].lstrip())
        raise _error(text, loc, "text outside of a section")
    sections = []
    for index, header in enumerate(headers):
        name = header.group(1)
        if name not in SECTIONS:
            raise _error(text, header.start(1), f"unknown section [{name}]")
        end = headers[index + 1].start() if index + 1 < len(headers) else len(text)
        sections.append((name, header.end(), end))
    return sections


class _SketchBuilder:
    """Accumulates the sections of one sketch."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.rules: List[Tuple[int, Rule]] = []
        self.declarations: Dict[str, Tuple[int, SketchVar]] = {}
        self.facts: List[Atom] = []
        self.positives: List[FrozenSet[Atom]] = []
        self.negatives: List[FrozenSet[Atom]] = []
        self.preferences: List[Tuple[int, str, Dict[str, int]]] = []

    def sketch(self, start: int, end: int) -> None:
        for offset, statement in _statements(self.text, start, end):
            rule = _parse(RULE, self.text, offset, statement)[0]
            line = pp.lineno(offset, self.text)
            self.rules.append((offset, Rule(rule.head, rule.body, line)))

    def facts_section(self, start: int, end: int) -> None:
        for offset, statement in _statements(self.text, start, end):
            self.facts.append(_parse(ATOM, self.text, offset, statement)[0])

    def examples(self, start: int, end: int) -> None:
        labels = list(_EXAMPLE_LABEL.finditer(self.text, start, end))
        first = labels[0].start() if labels else end
        if self.text[start:first].strip():
            loc = start + len(self.text[start:first]) - len(self.text[start:first].lstrip())
            raise _error(self.text, loc, "example atoms must follow 'positive:' or 'negative:'")
        for index, label in enumerate(labels):
            stop = labels[index + 1].start() if index + 1 < len(labels) else end
            atoms = frozenset(
                _parse(ATOM, self.text, offset, statement)[0]
                for offset, statement in _statements(self.text, label.end(), stop)
            )
            (self.positives if label.group(1) == "positive" else self.negatives).append(atoms)

    def sketched_vars(self, start: int, end: int) -> None:
        for offset, line in _lines(self.text, start, end):
            name, arity, candidates = _parse(DECLARATION, self.text, offset, line)
            name = name[1:]
            if name in self.declarations:
                raise _error(self.text, offset, f"duplicate declaration of ?{name}")
            if len(set(candidates)) != len(candidates):
                raise _error(self.text, offset, f"duplicate candidate in the declaration of ?{name}")
            var = SketchVar(name, SketchKind.PREDICATE, tuple(candidates), arity=int(arity))
            self.declarations[name] = (offset, var)

    def preferences_section(self, start: int, end: int) -> None:
        for offset, line in _lines(self.text, start, end):
            key, pairs = _parse(PREFERENCE, self.text, offset, line)
            values: Dict[str, int] = {}
            for candidate, value in pairs:
                values[candidate] = int(value)
            self.preferences.append((offset, key, values))

    def build(self) -> SketchProgram:
        rules = []
        for index, (offset, rule) in enumerate(self.rules, start=1):
            numbered = number_rule(rule, index)
            self._check_sketched_atoms(offset, numbered)
            rules.append(numbered)
        preferences = self._resolve_preferences(rules)
        declarations = tuple(
            SketchVar(var.id, var.kind, var.domain, var.arity, dict(preferences.get(var.label, {})))
            for _, var in self.declarations.values()
        )
        return SketchProgram(
            rules=tuple(rules),
            declarations=declarations,
            facts=frozenset(self.facts),
            examples=ExampleSet(tuple(self.positives), tuple(self.negatives)),
            preferences=preferences,
        )

    def _check_sketched_atoms(self, offset: int, rule: Rule) -> None:
        for occurrence in rule_occurrences(rule):
            if not isinstance(occurrence, SketchedAtom):
                continue
            declared = self.declarations.get(occurrence.name)
            if declared is None:
                raise _error(self.text, offset, f"sketched predicate ?{occurrence.name} is not declared")
            if declared[1].arity != occurrence.arity:
                raise _error(
                    self.text,
                    offset,
                    f"arity mismatch: ?{occurrence.name} is declared with arity {declared[1].arity}, "
                    f"used with arity {occurrence.arity}",
                )

    def _resolve_preferences(self, rules: List[Rule]) -> Dict[str, Dict[str, int]]:
        occurrences = {
            occurrence.id: occurrence.kind
            for rule in rules
            for occurrence in rule_occurrences(rule)
            if isinstance(occurrence, SketchRef)
        }
        resolved: Dict[str, Dict[str, int]] = {}
        for offset, key, values in self.preferences:
            domain = self._preference_domain(offset, key, occurrences)
            unknown = sorted(set(values) - set(domain))
            if unknown:
                raise _error(self.text, offset, f"unknown candidate {unknown[0]} for {key}")
            resolved.setdefault(key, {}).update(values)
        return resolved

    def _preference_domain(self, offset: int, key: str, occurrences: Mapping[str, SketchKind]) -> Tuple[str, ...]:
        if key in OPERATOR_TOKENS:
            return OPERATOR_DOMAINS[OPERATOR_TOKENS[key]]
        if "@" in key:
            if key not in occurrences:
                raise _error(self.text, offset, f"no sketched operator {key} in the sketch")
            return OPERATOR_DOMAINS[occurrences[key]]
        declared = self.declarations.get(key[1:])
        if declared is None:
            raise _error(self.text, offset, f"preference for undeclared sketched predicate {key}")
        return declared[1].domain


def parse_sketch(text: str) -> SketchProgram:
    """Parse a sketch.

    :param text: Sketch source with ``[SKETCH]``, ``[SKETCHEDVAR]``, ``[FACTS]``, ``[EXAMPLES]``
        and ``[PREFERENCES]`` sections.
    :raises SketchSyntaxError: On the first syntax error, with its line and column.

    >>> program = parse_sketch("[SKETCH]\\n:- p(X), q(Y), X ?= Y.\\n")
    >>> program.rules[0].body[2].op.id
    '?=@1.0'
    """
    source = _strip_comments(text)
    builder = _SketchBuilder(source)
    handlers = {
        "SKETCH": builder.sketch,
        "SKETCHEDVAR": builder.sketched_vars,
        "FACTS": builder.facts_section,
        "EXAMPLES": builder.examples,
        "PREFERENCES": builder.preferences_section,
    }
    sections = _split_sections(source)
    for name, start, end in sections:
        handlers[name](start, end)
    return builder.build()


def _resolve_choice(text: str, offset: int, tokens: pp.ParseResults, facts: Mapping[str, List[Atom]]) -> ChoiceBlock:
    elements = tokens.get("elements")
    if elements is not None:
        atoms = tuple(elements)
        predicates = {atom.predicate for atom in atoms}
        return ChoiceBlock(atoms, label=atoms[0].predicate if len(predicates) == 1 else "")
    element, condition = tokens["element"], tokens["condition"]
    if element.arity != 1 or condition.arity != 1 or element.args != condition.args:
        raise _error(text, offset, "conditional choices must have the shape 1 { d(X) : domain(X) } 1")
    candidates = facts.get(condition.predicate, [])
    if not candidates:
        raise _error(text, offset, f"choice domain {condition.predicate}/1 has no facts")
    atoms = tuple(Atom(element.predicate, fact.args) for fact in candidates)
    return ChoiceBlock(atoms, label=element.predicate, domain=condition.predicate)


def parse_program(text: str) -> AspProgram:
    """Parse a sketch-free program: rules, constraints, exactly-one choices and ``#show`` directives.

    Conditional choices ``1 { d(X) : domain(X) } 1.`` are expanded over the unary ``domain`` facts
    of the program.

    :param text: Program source.
    :raises SketchSyntaxError: On a syntax error or a sketched construct.

    >>> program = parse_program("1 { a ; b } 1. c :- a.")
    >>> [atom.predicate for atom in program.choices[0].atoms], len(program.rules)
    (['a', 'b'], 1)
    """
    source = _strip_comments(text)
    rules: List[Rule] = []
    pending: List[Tuple[int, pp.ParseResults]] = []
    shows: List[Tuple[str, int]] = []
    for offset, statement in _statements(source, 0, len(source)):
        if statement.startswith("#show"):
            name, arity = _parse(SHOW, source, offset, statement)
            shows.append((name, int(arity)))
        elif re.match(r"1\s*\{", statement):
            pending.append((offset, _parse(CHOICE, source, offset, statement)))
        else:
            rule = _parse(RULE, source, offset, statement)[0]
            if next(rule_occurrences(rule), None) is not None:
                raise _error(source, offset, "sketched constructs are not allowed in a plain program")
            rules.append(Rule(rule.head, rule.body, pp.lineno(offset, source)))
    facts: Dict[str, List[Atom]] = {}
    for rule in rules:
        if rule.head is not None and not rule.body:
            facts.setdefault(rule.head.predicate, []).append(rule.head)
    choices = tuple(_resolve_choice(source, offset, tokens, facts) for offset, tokens in pending)
    return AspProgram(tuple(rules), choices, tuple(shows))


def load_sketch(text: str) -> SketchProgram:
    """Parse and validate a sketch.

    :raises SketchSyntaxError: On a syntax error.
    :raises ValidationError: When validation reports violations.
    """
    program = parse_sketch(text)
    report = validate(program)
    if not report.ok:
        raise ValidationError(report)
    return program



def parse_preferences(text: str) -> Dict[str, Dict[str, int]]:
    """Parse preference lines ``key : candidate=value, ...``, with or without a ``[PREFERENCES]`` header.

    Keys are returned unresolved: ``?q``, an occurrence id or a bare operator token.

    >>> parse_preferences("?= : eq=2, neq=1")
    {'?=': {'eq': 2, 'neq': 1}}
    """
    source = _strip_comments(text)
    start = 0
    header = _SECTION_HEADER.search(source)
    if header is not None:
        if header.group(1) != "PREFERENCES" or source[: header.start()].strip():
            raise _error(source, header.start(1), "expected a [PREFERENCES] section")
        start = header.end()
    preferences: Dict[str, Dict[str, int]] = {}
    for offset, line in _lines(source, start, len(source)):
        key, pairs = _parse(PREFERENCE, source, offset, line)
        preferences.setdefault(key, {}).update((candidate, int(value)) for candidate, value in pairs)
    return preferences
