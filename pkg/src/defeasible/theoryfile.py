"""Text format for defeasible theories (``.dl`` files).

One statement per line, terminated by ``.``; ``#`` starts a comment.

    language p, q.            # declare atoms beyond those occurring
    fact monotreme.           # facts are literals; ~ negates
    r1: monotreme => mammal.  # => defeasible, -> strict, ~> defeater
    r2: ~p, q -> r.           # bodies are comma-separated literal lists
    r3: ~> ~r.                # empty bodies are allowed
    r1 > r3.                  # superiority between rule labels

Labels are optional; unlabelled rules get ``_r1``, ``_r2``, ... in source
order.  Atoms and labels match ``[A-Za-z_$][A-Za-z0-9_$]*``; the ``$``
namespace is reserved for generated symbols, which keeps transformation
output disjoint from hand-written input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .model import (
    ArrowKind,
    DefeasibleTheory,
    Literal,
    Rule,
    literal_key,
    validate,
)

__all__ = ["ParseError", "TheoryDocument", "parse", "parse_document", "render", "parse_literal"]

_ARROWS = {"->": ArrowKind.STRICT, "=>": ArrowKind.DEFEASIBLE, "~>": ArrowKind.DEFEATER}
_IDENT = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class TheoryDocument:
    """A parsed source file: the theory plus a statement-to-line map."""

    source: str
    theory: DefeasibleTheory
    # keys: ("fact", literal text), ("rule", label), ("sup", "a > b"), ("language", atom)
    positions: Dict[Tuple[str, str], int]


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<arrow>->|=>|~>)
      | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
      | (?P<punct>[~,:>.])
    """,
    re.VERBOSE,
)


def _tokenize(text: str, line_no: int) -> List[Tuple[str, str, int]]:
    """Split one statement line into (kind, value, column) tokens."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line_no, pos + 1)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    return tokens


class _Cursor:
    def __init__(self, tokens, line_no):
        self.tokens = tokens
        self.line_no = line_no
        self.i = 0

    def peek(self, ahead=0):
        j = self.i + ahead
        return self.tokens[j] if j < len(self.tokens) else ("eof", "", -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, message):
        _, value, col = self.peek()
        if col < 0:
            col = (self.tokens[-1][2] + len(self.tokens[-1][1])) if self.tokens else 1
        raise ParseError(message, self.line_no, col)

    def expect(self, kind, value=None, what=None):
        k, v, col = self.peek()
        if k != kind or (value is not None and v != value):
            self.fail(f"expected {what or value or kind}")
        return self.next()


def _parse_literal_at(cur: _Cursor) -> Literal:
    negative = False
    while cur.peek()[0] == "punct" and cur.peek()[1] == "~":
        cur.next()
        negative = not negative
    if cur.peek()[0] != "ident":
        cur.fail("expected a literal")
    _, atom, _ = cur.next()
    return Literal(atom, not negative)


def parse_literal(text: str) -> Literal:
    """Parse a standalone literal such as ``mammal`` or ``~p``."""
    cur = _Cursor(_tokenize(text.strip(), 1), 1)
    lit = _parse_literal_at(cur)
    if cur.peek()[0] != "eof":
        cur.fail("trailing input after literal")
    return lit


def parse_document(text: str) -> TheoryDocument:
    """Parse ``.dl`` source into a theory, tracking statement positions.

    Raises :class:`ParseError` with line/column on bad syntax, and surfaces
    validation violations (duplicate labels, dangling or cyclic superiority)
    as errors too.
    """
    facts = []
    rules: List[Rule] = []
    sup = []
    declared = None
    positions: Dict[Tuple[str, str], int] = {}
    auto_n = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        if not stmt.endswith("."):
            raise ParseError("statement must end with '.'", line_no, len(raw.rstrip()) + 1)
        cur = _Cursor(_tokenize(stmt[:-1], line_no), line_no)
        k, v, _ = cur.peek()

        if k == "ident" and v == "language" and cur.peek(1)[1] != ":":
            cur.next()
            atoms = set() if declared is None else set(declared)
            while True:
                tok = cur.expect("ident", what="an atom name")
                atoms.add(tok[1])
                if cur.peek()[1] == ",":
                    cur.next()
                    continue
                break
            if cur.peek()[0] != "eof":
                cur.fail("unexpected input after language declaration")
            declared = atoms
            for a in atoms:
                positions.setdefault(("language", a), line_no)
            continue

        if k == "ident" and v == "fact" and cur.peek(1)[1] != ":":
            cur.next()
            lit = _parse_literal_at(cur)
            if cur.peek()[0] != "eof":
                cur.fail("unexpected input after fact")
            facts.append(lit)
            positions.setdefault(("fact", str(lit)), line_no)
            continue

        if any(t[0] == "arrow" for t in cur.tokens):
            label = None
            if k == "ident" and cur.peek(1)[1] == ":":
                label = cur.next()[1]
                cur.next()
            body = []
            if cur.peek()[0] != "arrow":
                while True:
                    body.append(_parse_literal_at(cur))
                    if cur.peek()[1] == ",":
                        cur.next()
                        continue
                    break
            arrow_tok = cur.expect("arrow", what="an arrow (->, =>, ~>)")
            head = _parse_literal_at(cur)
            if cur.peek()[0] != "eof":
                cur.fail("unexpected input after rule head")
            if label is None:
                taken = {r.label for r in rules}
                auto_n += 1
                while f"_r{auto_n}" in taken:
                    auto_n += 1
                label = f"_r{auto_n}"
            rules.append(Rule(label, frozenset(body), _ARROWS[arrow_tok[1]], head))
            positions.setdefault(("rule", label), line_no)
            continue

        if k == "ident" and cur.peek(1)[1] == ">":
            a = cur.next()[1]
            cur.next()
            b = cur.expect("ident", what="a rule label")[1]
            if cur.peek()[0] != "eof":
                cur.fail("unexpected input after superiority statement")
            sup.append((a, b))
            positions.setdefault(("sup", f"{a} > {b}"), line_no)
            continue

        cur.fail("unrecognized statement")

    theory = DefeasibleTheory(
        frozenset(facts),
        tuple(rules),
        frozenset(sup),
        frozenset(declared) if declared is not None else None,
    )
    violations = validate(theory)
    if violations:
        raise ParseError("; ".join(violations), len(text.splitlines()) or 1, 1)
    return TheoryDocument(text, theory, positions)


def parse(text: str) -> DefeasibleTheory:
    return parse_document(text).theory


def render(theory: DefeasibleTheory) -> str:
    """Canonical text for a theory: language line, facts, rules in collection
    order, superiority pairs sorted.  ``parse(render(D)) == D``.
    """
    violations = validate(theory)
    if violations:
        raise ValueError("cannot render invalid theory: " + "; ".join(violations))
    lines = []
    if theory.declared_language is not None:
        lines.append("language " + ", ".join(sorted(theory.declared_language)) + ".")
    for f in sorted(theory.facts, key=literal_key):
        lines.append(f"fact {f}.")
    for r in theory.rules:
        body = ", ".join(str(b) for b in sorted(r.body, key=literal_key))
        if body:
            lines.append(f"{r.label}: {body} {r.arrow.token} {r.head}.")
        else:
            lines.append(f"{r.label}: {r.arrow.token} {r.head}.")
    for a, b in sorted(theory.superiority):
        lines.append(f"{a} > {b}.")
    return "\n".join(lines) + ("\n" if lines else "")
