"""Checking that two theories draw the same conclusions, modulo tags.

A theory D2 under logic L2 simulates D1 under L1 with respect to a class of
additions when, for every addition A in the class, D1+A and D2+A have the
same strict and defeasible conclusions over the comparison language, with
L1's main tag read as L2's.  Additions must respect language separation:
symbols private to the simulating theory are off limits to additions, i.e.
every atom an addition shares with D2 must already belong to D1.

The checker is exhaustive over its addition class (fact classes enumerate
every subset of a base literal set) and reports the first disagreement in
enumeration order, so verdicts are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .model import (
    ArrowKind,
    DefeasibleTheory,
    Literal,
    Logic,
    Rule,
    add,
    complement,
    language_of,
    literal_key,
    validate,
)
from .engine import Extension, extension

__all__ = [
    "SimulationError",
    "TagCorrespondence",
    "NeutralConclusion",
    "AdditionClass",
    "Counterexample",
    "SimulationVerdict",
    "fact_additions",
    "check_language_separation",
    "conclusions_modulo_tags",
    "check_simulation",
    "random_theory",
]

EXHAUSTIVE_LIMIT = 2 ** 16


class SimulationError(Exception):
    """An addition class violates the harness preconditions."""


@dataclass(frozen=True)
class NeutralConclusion:
    """A conclusion with its logic-specific tag erased: ``strict`` for the
    monotonic tag, ``defeasible`` for the logic's main tag."""

    sign: str
    kind: str  # "strict" | "defeasible"
    literal: Literal

    def __str__(self) -> str:
        return f"{self.sign}{self.kind} {self.literal}"


@dataclass(frozen=True)
class TagCorrespondence:
    """The tag pairing used for comparison: Delta to Delta, main tag to main
    tag.  Auxiliary support tags are never compared; support is not a
    simulable notion."""

    left: Logic
    right: Logic

    def main_for(self, logic: Logic) -> str:
        if logic == self.left:
            return self.left.main
        if logic == self.right:
            return self.right.main
        raise SimulationError(f"logic {logic.name} is not part of this correspondence")


def conclusions_modulo_tags(
    ext: Extension, sigma: Iterable[Literal], corr: TagCorrespondence
) -> FrozenSet[NeutralConclusion]:
    """Project an extension onto the comparison language with neutral tags."""
    sigma = frozenset(sigma)
    main = corr.main_for(ext.logic)
    out = set()
    for c in ext.conclusions:
        if c.literal not in sigma:
            continue
        if c.tag.symbol == "Delta":
            out.add(NeutralConclusion(c.tag.sign, "strict", c.literal))
        elif c.tag.symbol == main:
            out.add(NeutralConclusion(c.tag.sign, "defeasible", c.literal))
    return frozenset(out)


def check_language_separation(
    d1: DefeasibleTheory, d2: DefeasibleTheory, addition: DefeasibleTheory
) -> bool:
    """True iff every literal the addition shares with d2 belongs to d1."""
    shared = language_of(addition) & language_of(d2)
    return shared <= language_of(d1)


def fact_additions(base: Iterable[Literal]) -> Iterator[DefeasibleTheory]:
    """All subsets of ``base`` as fact-only theories, in binary-counter order
    over the sorted base (the empty addition first)."""
    lits = sorted(set(base), key=literal_key)
    for bits in range(2 ** len(lits)):
        yield DefeasibleTheory(
            facts=frozenset(lits[i] for i in range(len(lits)) if bits & (1 << i))
        )


@dataclass(frozen=True)
class AdditionClass:
    """A named, deterministically enumerable family of additions."""

    kind: str  # "empty" | "facts" | "rules" | "full-theories"
    description: str
    count: int
    exhaustive: bool
    _make: Callable[[], Iterator[DefeasibleTheory]]

    def __iter__(self) -> Iterator[DefeasibleTheory]:
        return self._make()

    @staticmethod
    def empty() -> "AdditionClass":
        return AdditionClass(
            "empty", "the empty addition", 1, True,
            lambda: iter([DefeasibleTheory()]),
        )

    @staticmethod
    def facts(
        base: Iterable[Literal],
        limit: int = EXHAUSTIVE_LIMIT,
        seed: int = 0,
    ) -> "AdditionClass":
        """Every fact set over ``base`` when that is at most ``limit``
        additions; otherwise ``limit`` seeded random fact sets."""
        lits = tuple(sorted(set(base), key=literal_key))
        total = 2 ** len(lits)
        if total <= limit:
            return AdditionClass(
                "facts",
                f"all {total} fact sets over {{{', '.join(map(str, lits))}}}",
                total,
                True,
                lambda: fact_additions(lits),
            )

        def sampled() -> Iterator[DefeasibleTheory]:
            rng = random.Random(seed)
            for _ in range(limit):
                yield DefeasibleTheory(
                    facts=frozenset(q for q in lits if rng.random() < 0.5)
                )

        return AdditionClass(
            "facts",
            f"{limit} seeded fact sets over {len(lits)} literals (seed {seed})",
            limit,
            False,
            sampled,
        )

    @staticmethod
    def fixed(
        kind: str, additions: Iterable[DefeasibleTheory], description: str = ""
    ) -> "AdditionClass":
        items = tuple(additions)
        return AdditionClass(
            kind,
            description or f"{len(items)} fixed additions",
            len(items),
            True,
            lambda: iter(items),
        )


@dataclass(frozen=True)
class Counterexample:
    addition: DefeasibleTheory
    conclusion: NeutralConclusion
    side: str  # "left" | "right": which side concludes it

    @property
    def literal(self) -> Literal:
        return self.conclusion.literal


@dataclass(frozen=True)
class SimulationVerdict:
    equivalent: bool
    additions_checked: int
    exhaustive: bool
    counterexample: Optional[Counterexample] = None


def check_simulation(
    d1: DefeasibleTheory,
    logic1: Logic,
    d2: DefeasibleTheory,
    logic2: Logic,
    additions: AdditionClass,
    restrict_to_base_language: bool = False,
) -> SimulationVerdict:
    """Compare D1 under logic1 against D2 under logic2 over every addition.

    The comparison language is the language of D1 together with that of the
    addition; pass ``restrict_to_base_language=True`` to compare over D1's
    language only.  Raises :class:`SimulationError` on an addition violating
    language separation (a bug in the class, not a disagreement).  On
    disagreement, reports the first differing conclusion (in a fixed order)
    of the first differing addition.
    """
    corr = TagCorrespondence(logic1, logic2)
    sigma1 = language_of(d1)
    checked = 0
    for a in additions:
        if not check_language_separation(d1, d2, a):
            raise SimulationError(
                "addition violates language separation: "
                f"shares {sorted(map(str, language_of(a) & language_of(d2) - sigma1))} with the simulating theory"
            )
        checked += 1
        sigma = sigma1 if restrict_to_base_language else sigma1 | language_of(a)
        left = conclusions_modulo_tags(extension(add(d1, a), logic1), sigma, corr)
        right = conclusions_modulo_tags(extension(add(d2, a), logic2), sigma, corr)
        if left != right:
            diff = sorted(
                left.symmetric_difference(right),
                key=lambda c: (str(c.literal), c.kind, c.sign),
            )
            witness = diff[0]
            return SimulationVerdict(
                False,
                checked,
                additions.exhaustive,
                Counterexample(a, witness, "left" if witness in left else "right"),
            )
    return SimulationVerdict(True, checked, additions.exhaustive)


_ATOM_NAMES = "abcdefghijklmnopqrstuvwxyz"


def random_theory(
    atoms: int,
    rules: int,
    superiority_density: float = 0.0,
    defeater_fraction: float = 0.0,
    seed: int = 0,
) -> DefeasibleTheory:
    """A small random theory, deterministic in the seed.

    Rule heads and body literals are drawn over ``atoms`` propositions (both
    polarities, bodies of up to two literals).  The superiority relation is a
    random subset of a random total order on the rule labels, restricted to
    pairs of opposing rules, so it is acyclic by construction and the result
    always validates.
    """
    if atoms > len(_ATOM_NAMES):
        raise ValueError(f"at most {len(_ATOM_NAMES)} atoms supported")
    rng = random.Random(seed)
    lits = [Literal(a, pos) for a in _ATOM_NAMES[:atoms] for pos in (True, False)]
    out_rules: List[Rule] = []
    for i in range(1, rules + 1):
        head = rng.choice(lits)
        body_size = rng.choice((0, 0, 1, 1, 2))
        body = frozenset(rng.sample(lits, min(body_size, len(lits))))
        roll = rng.random()
        if roll < defeater_fraction:
            arrow = ArrowKind.DEFEATER
        elif rng.random() < 0.5:
            arrow = ArrowKind.STRICT
        else:
            arrow = ArrowKind.DEFEASIBLE
        out_rules.append(Rule(f"r{i}", body, arrow, head))
    order = list(out_rules)
    rng.shuffle(order)
    sup = set()
    for i, winner in enumerate(order):
        for loser in order[i + 1:]:
            if winner.head == complement(loser.head) and rng.random() < superiority_density:
                sup.add((winner.label, loser.label))
    return DefeasibleTheory(frozenset(), tuple(out_rules), frozenset(sup))
