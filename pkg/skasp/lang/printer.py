"""Pretty-printer producing text that the parsers read back to the same syntax tree."""
from typing import Iterable, List, Tuple

from .types import (
    AnyAtom,
    ArithOp,
    AspProgram,
    Atom,
    BinOp,
    ChoiceBlock,
    CmpOp,
    Comparison,
    Integer,
    Literal,
    Rule,
    SketchedAtom,
    SketchedNegation,
    SketchProgram,
    SketchRef,
    Symbol,
    Term,
    Variable,
)


def term_sort_key(term: Term) -> Tuple:
    """Total order on terms: integers, then symbols, then variables, then expressions."""
    if isinstance(term, Integer):
        return (0, term.value)
    if isinstance(term, Symbol):
        return (1, term.name)
    if isinstance(term, Variable):
        return (2, term.name)
    return (3, format_term(term))


def atom_sort_key(atom: Atom) -> Tuple:
    """Sort key ordering atoms by predicate, then arguments."""
    return atom.predicate, tuple(map(term_sort_key, atom.args))


def _precedence(term: Term) -> int:
    if not isinstance(term, BinOp) or term.op is ArithOp.DIST:
        return 3
    return 2 if term.op in (ArithOp.MUL, ArithOp.DIV) else 1


def format_term(term: Term) -> str:
    """Render a term.

    >>> format_term(BinOp(Variable("X"), ArithOp.DIST, Integer(1)))
    '|X - 1|'
    """
    if isinstance(term, Integer):
        return str(term.value)
    if isinstance(term, Symbol):
        return term.name
    if isinstance(term, Variable):
        return term.name
    left, right = format_term(term.left), format_term(term.right)
    if term.op is ArithOp.DIST:
        # |A - B| reads back as a subtraction, so B binds like its right operand
        if _precedence(term.right) <= 1:
            right = f"({right})"
        return f"|{left} - {right}|"
    if _precedence(term.left) < _precedence(term):
        left = f"({left})"
    if _precedence(term.right) <= _precedence(term):
        right = f"({right})"
    symbol = term.op.kind.token if isinstance(term.op, SketchRef) else term.op.symbol
    return f"{left} {symbol} {right}"


def format_atom(atom: AnyAtom) -> str:
    """Render an atom; arguments are separated by bare commas."""
    name = f"?{atom.name}" if isinstance(atom, SketchedAtom) else atom.predicate
    if not atom.args:
        return name
    return f"{name}({','.join(format_term(arg) for arg in atom.args)})"


def format_literal(literal) -> str:
    """Render a body literal."""
    if isinstance(literal, Literal):
        return ("not " if literal.negated else "") + format_atom(literal.atom)
    if isinstance(literal, SketchedNegation):
        return "?not " + ("not " if literal.over_negation else "") + format_atom(literal.atom)
    if isinstance(literal, Comparison):
        if literal.op is CmpOp.TOP:
            raise ValueError("the always-true comparison has no concrete syntax")
        symbol = literal.op.kind.token if isinstance(literal.op, SketchRef) else literal.op.symbol
        return f"{format_term(literal.lhs)} {symbol} {format_term(literal.rhs)}"
    function = literal.function.kind.token if isinstance(literal.function, SketchRef) else f"#{literal.function.value}"
    terms = ",".join(format_term(term) for term in literal.terms)
    condition = ", ".join(format_literal(element) for element in literal.condition)
    return f"{format_term(literal.result)} = {function}{{{terms} : {condition}}}"


def format_rule(rule: Rule) -> str:
    """Render a rule, fact or constraint, with the terminating period.

    >>> y = (Variable("Y"),)
    >>> format_rule(Rule(None, (Literal(Atom("node", y)), Literal(Atom("reached", y), negated=True))))
    ':- node(Y), not reached(Y).'
    """
    body = ", ".join(format_literal(literal) for literal in rule.body)
    if rule.head is None:
        return f":- {body}."
    if not rule.body:
        return f"{format_atom(rule.head)}."
    return f"{format_atom(rule.head)} :- {body}."


def format_choice(block: ChoiceBlock) -> str:
    """Render an exactly-one choice, in conditional form when it has a domain predicate."""
    if block.domain is not None:
        return f"1 {{ {block.label}(X) : {block.domain}(X) }} 1."
    return "1 { " + " ; ".join(format_atom(atom) for atom in block.atoms) + " } 1."


def format_program(program: AspProgram) -> str:
    """Render a sketch-free program: rules, then choices, then ``#show`` directives."""
    lines: List[str] = [format_rule(rule) for rule in program.rules]
    lines.extend(format_choice(block) for block in program.choices)
    lines.extend(f"#show {name}/{arity}." for name, arity in program.shows)
    return "\n".join(lines) + "\n" if lines else ""


def _atoms_line(atoms: Iterable[Atom]) -> str:
    return " ".join(f"{format_atom(atom)}." for atom in sorted(atoms, key=atom_sort_key))


def format_sketch(program: SketchProgram) -> str:
    """Render a sketch with all its sections."""
    lines = ["[SKETCH]"]
    lines.extend(format_rule(rule) for rule in program.rules)
    if program.declarations:
        lines.append("[SKETCHEDVAR]")
        lines.extend(f"{var.label}/{var.arity} : {', '.join(var.domain)}" for var in program.declarations)
    if program.facts:
        lines.extend(["[FACTS]", _atoms_line(program.facts)])
    if len(program.examples):
        lines.append("[EXAMPLES]")
        for _, is_positive, atoms in program.examples.indexed():
            label = "positive:" if is_positive else "negative:"
            lines.append(f"{label} {_atoms_line(atoms)}".rstrip())
    if program.preferences:
        lines.append("[PREFERENCES]")
        for key, values in program.preferences.items():
            lines.append(f"{key} : " + ", ".join(f"{candidate}={value}" for candidate, value in values.items()))
    return "\n".join(lines) + "\n"
