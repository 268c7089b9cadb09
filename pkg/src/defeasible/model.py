"""Core data model for defeasible theories.

A defeasible theory is a triple (facts, rules, superiority): facts are
literals taken as indisputable, rules relate a body (a set of literals) to a
head literal via one of three arrows (strict ``->``, defeasible ``=>``,
defeater ``~>``), and the superiority relation is an acyclic set of ordered
rule-label pairs used to adjudicate between rules with opposing heads.

Everything here is immutable and hashable, so theories can be shared freely
across threads and used as cache keys.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import FrozenSet, Iterable, Optional, Tuple

__all__ = [
    "ArrowKind",
    "Literal",
    "Rule",
    "DefeasibleTheory",
    "Tag",
    "TaggedConclusion",
    "Logic",
    "TheoryError",
    "TAG_SYMBOLS",
    "PARTIAL",
    "PARTIALSTAR",
    "DELTA",
    "DELTASTAR",
    "ALL_LOGICS",
    "LOGICS",
    "EMPTY_THEORY",
    "complement",
    "language_of",
    "add",
    "validate",
    "lint",
    "theory_size",
    "literal_key",
]

_IDENT = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\Z")


class TheoryError(Exception):
    """A theory violates a structural invariant it was required to satisfy."""


class ArrowKind(Enum):
    STRICT = "->"
    DEFEASIBLE = "=>"
    DEFEATER = "~>"

    @property
    def token(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    """A proposition or its negation."""

    atom: str
    positive: bool = True

    def __post_init__(self):
        if not _IDENT.match(self.atom):
            raise ValueError(f"invalid atom name: {self.atom!r}")

    def __invert__(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "~" + self.atom


def complement(q: Literal) -> Literal:
    """The opposite literal: p <-> ~p.  Involutive."""
    return Literal(q.atom, not q.positive)


def literal_key(q: Literal) -> Tuple[str, int]:
    """Canonical sort key grouping each atom with its negation (p before ~p)."""
    return (q.atom, 0 if q.positive else 1)


@dataclass(frozen=True)
class Rule:
    """A labelled rule ``label: body <arrow> head``.

    The body is a set: duplicate literals are meaningless and collapse.
    """

    label: str
    body: FrozenSet[Literal]
    arrow: ArrowKind
    head: Literal

    def __post_init__(self):
        if not _IDENT.match(self.label):
            raise ValueError(f"invalid rule label: {self.label!r}")
        object.__setattr__(self, "body", frozenset(self.body))

    @property
    def is_strict(self) -> bool:
        return self.arrow is ArrowKind.STRICT

    @property
    def is_supportive(self) -> bool:
        """Strict or defeasible; defeaters never support a conclusion."""
        return self.arrow is not ArrowKind.DEFEATER

    def __str__(self) -> str:
        body = ", ".join(str(b) for b in sorted(self.body, key=literal_key))
        if body:
            return f"{self.label}: {body} {self.arrow.token} {self.head}"
        return f"{self.label}: {self.arrow.token} {self.head}"


@dataclass(frozen=True)
class DefeasibleTheory:
    """An immutable (facts, rules, superiority) triple.

    ``declared_language`` optionally names atoms that belong to the theory's
    language even though they occur in no fact or rule; the empty theory with
    ``declared_language={"p"}`` still addresses the literals p and ~p.
    """

    facts: FrozenSet[Literal] = frozenset()
    rules: Tuple[Rule, ...] = ()
    superiority: FrozenSet[Tuple[str, str]] = frozenset()
    declared_language: Optional[FrozenSet[str]] = None

    def __post_init__(self):
        object.__setattr__(self, "facts", frozenset(self.facts))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "superiority", frozenset(self.superiority))
        if self.declared_language is not None:
            object.__setattr__(self, "declared_language", frozenset(self.declared_language))

    def rule(self, label: str) -> Optional[Rule]:
        for r in self.rules:
            if r.label == label:
                return r
        return None

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(r.label for r in self.rules)


EMPTY_THEORY = DefeasibleTheory()


def language_of(theory: DefeasibleTheory) -> FrozenSet[Literal]:
    """All literals the theory addresses, closed under complement."""
    lits = set(theory.facts)
    for r in theory.rules:
        lits.add(r.head)
        lits.update(r.body)
    if theory.declared_language:
        lits.update(Literal(a) for a in theory.declared_language)
    return frozenset(lits | {complement(q) for q in lits})


def add(theory: DefeasibleTheory, addition: DefeasibleTheory) -> DefeasibleTheory:
    """Componentwise union of two theories.

    Rules of the addition whose labels collide with the base theory are
    deterministically renamed (``label_2``, ``label_3``, ...), and the
    addition's superiority pairs follow the renaming.  Raises
    :class:`TheoryError` if the combined superiority relation is cyclic,
    which can only happen when an input already was.
    """
    taken = set(theory.labels)
    taken_either = taken | set(addition.labels)
    renames = {}
    new_rules = []
    for r in addition.rules:
        label = r.label
        if label in taken:
            n = 2
            while f"{label}_{n}" in taken_either or f"{label}_{n}" in taken:
                n += 1
            renames[label] = f"{label}_{n}"
            label = renames[label]
            r = replace(r, label=label)
        taken.add(label)
        taken_either.add(label)
        new_rules.append(r)
    sup = theory.superiority | {
        (renames.get(a, a), renames.get(b, b)) for (a, b) in addition.superiority
    }
    declared = None
    if theory.declared_language is not None or addition.declared_language is not None:
        declared = (theory.declared_language or frozenset()) | (
            addition.declared_language or frozenset()
        )
    combined = DefeasibleTheory(
        theory.facts | addition.facts, theory.rules + tuple(new_rules), sup, declared
    )
    if addition.superiority or addition.rules:
        cycle = _superiority_cycle(combined)
        if cycle:
            raise TheoryError(f"superiority cycle after union: {' > '.join(cycle)}")
    return combined


def _superiority_cycle(theory: DefeasibleTheory) -> Optional[list]:
    """Return a label cycle in the superiority relation, or None."""
    edges = {}
    for a, b in theory.superiority:
        edges.setdefault(a, []).append(b)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {}
    stack_path = []

    def visit(node):
        color[node] = GREY
        stack_path.append(node)
        for nxt in edges.get(node, ()):
            c = color.get(nxt, WHITE)
            if c == GREY:
                i = stack_path.index(nxt)
                return stack_path[i:] + [nxt]
            if c == WHITE:
                found = visit(nxt)
                if found:
                    return found
        stack_path.pop()
        color[node] = BLACK
        return None

    for start in sorted(edges):
        if color.get(start, WHITE) == WHITE:
            found = visit(start)
            if found:
                return found
    return None


def validate(theory: DefeasibleTheory) -> list:
    """Check structural invariants; ok iff the returned list is empty.

    Violations are returned as human-readable strings, never raised:
    duplicate rule labels, superiority pairs naming absent labels, and
    superiority cycles.
    """
    violations = []
    seen = set()
    for r in theory.rules:
        if r.label in seen:
            violations.append(f"duplicate rule label: {r.label}")
        seen.add(r.label)
    for a, b in sorted(theory.superiority):
        for lbl in (a, b):
            if lbl not in seen:
                violations.append(f"superiority names absent label: {lbl}")
    cycle = _superiority_cycle(theory)
    if cycle:
        violations.append(f"superiority cycle: {' > '.join(cycle)}")
    return violations


def lint(theory: DefeasibleTheory) -> list:
    """Non-fatal warnings: superiority pairs between non-opposing rules.

    Such pairs are stored but inert, since inference consults superiority
    only between rules with complementary heads.
    """
    warnings = []
    by_label = {r.label: r for r in theory.rules}
    for a, b in sorted(theory.superiority):
        ra, rb = by_label.get(a), by_label.get(b)
        if ra and rb and ra.head != complement(rb.head):
            warnings.append(f"superiority between non-opposing rules is inert: {a} > {b}")
    return warnings


def theory_size(theory: DefeasibleTheory) -> int:
    """Symbol count of a theory: one per fact, body literal and head, one per
    rule label, two per superiority pair, one per declared atom."""
    n = len(theory.facts) + 2 * len(theory.superiority)
    if theory.declared_language:
        n += len(theory.declared_language)
    for r in theory.rules:
        n += len(r.body) + 2
    return n


# --- conclusion tags and the four logics ---------------------------------

TAG_SYMBOLS = (
    "Delta",
    "partial",
    "partialstar",
    "delta",
    "sigma",
    "deltastar",
    "sigmastar",
)


@dataclass(frozen=True)
class Tag:
    """A signed inference-rule marker, e.g. ``+partial`` or ``-Delta``."""

    sign: str
    symbol: str

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError(f"tag sign must be '+' or '-', got {self.sign!r}")
        if self.symbol not in TAG_SYMBOLS:
            raise ValueError(f"unknown tag symbol: {self.symbol!r}")

    def __str__(self) -> str:
        return self.sign + self.symbol


@dataclass(frozen=True)
class TaggedConclusion:
    tag: Tag
    literal: Literal

    def __str__(self) -> str:
        return f"{self.tag} {self.literal}"


@dataclass(frozen=True)
class Logic:
    """One member of the family: a main defeasible tag, an optional auxiliary
    support tag, and the team-defeat / ambiguity-handling flavour.

    ``Delta`` (monotonic provability from facts and strict rules) belongs to
    every logic.
    """

    name: str
    main: str
    aux: Optional[str]
    team_defeat: bool
    ambiguity_blocking: bool

    @property
    def tags(self) -> Tuple[str, ...]:
        if self.aux is None:
            return ("Delta", self.main)
        return ("Delta", self.main, self.aux)

    def __str__(self) -> str:
        return self.name


PARTIAL = Logic("partial", "partial", None, team_defeat=True, ambiguity_blocking=True)
PARTIALSTAR = Logic("partialstar", "partialstar", None, team_defeat=False, ambiguity_blocking=True)
DELTA = Logic("delta", "delta", "sigma", team_defeat=True, ambiguity_blocking=False)
DELTASTAR = Logic("deltastar", "deltastar", "sigmastar", team_defeat=False, ambiguity_blocking=False)

ALL_LOGICS: Tuple[Logic, ...] = (PARTIAL, PARTIALSTAR, DELTA, DELTASTAR)
LOGICS = {logic.name: logic for logic in ALL_LOGICS}
