"""Fixed-point inference for the four logics.

The extension of a theory under a logic is the least fixed point of the
one-step consequence operator: starting from no conclusions, every inference
condition of every tag of the logic is evaluated for every literal of the
theory's language against the current conclusion set, and newly licensed
conclusions are added, until nothing changes.  The operator is monotone, so
the iteration converges; each (tag, literal) cell can fire at most once, so
it converges within (number of signed tags) x (number of literals) passes.

Tag inventory per logic:

* ``Delta`` -- monotonic provability from facts and strict rules (all logics).
* ``partial`` / ``partialstar`` -- ambiguity-blocking defeasible provability,
  with and without team defeat.
* ``delta`` / ``deltastar`` -- ambiguity-propagating defeasible provability,
  defined mutually recursively with the auxiliary support tags ``sigma`` /
  ``sigmastar`` ("possibly holds").

Rule-set selectors are honoured exactly: positive defeasible clauses look at
strict-or-defeasible rules for the literal, while the opposition scan ranges
over all rules for the complement, defeaters included.  Defeaters can block
but never support.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .model import (
    DefeasibleTheory,
    Literal,
    Logic,
    Tag,
    TaggedConclusion,
    TheoryError,
    complement,
    language_of,
    literal_key,
    validate,
)

__all__ = ["Extension", "TraceEntry", "extension", "step", "prove", "conclusion_lines"]


@dataclass(frozen=True)
class TraceEntry:
    """One conclusion addition: the pass it fired in and the top-level clause
    of the inference condition that licensed it (e.g. ``+partial.2``)."""

    iteration: int
    conclusion: TaggedConclusion
    clause: str

    def __str__(self) -> str:
        return f"{self.iteration} {self.clause} {self.conclusion.literal}"


@dataclass(frozen=True)
class Extension:
    """The conclusion set of a theory under one logic.

    Equality ignores the iteration count and trace: two extensions are the
    same when they draw the same tagged conclusions.
    """

    logic: Logic
    conclusions: FrozenSet[TaggedConclusion]
    iterations: int = field(compare=False, default=0)
    trace: Optional[Tuple[TraceEntry, ...]] = field(compare=False, default=None, repr=False)

    def has(self, sign: str, symbol: str, literal: Literal) -> bool:
        return TaggedConclusion(Tag(sign, symbol), literal) in self.conclusions

    def tagged(self, sign: str, symbol: str) -> FrozenSet[Literal]:
        """All literals concluded with the given signed tag."""
        return frozenset(
            c.literal
            for c in self.conclusions
            if c.tag.sign == sign and c.tag.symbol == symbol
        )

    def lines(self) -> List[str]:
        """Sorted ``<sign><tag> <literal>`` lines (the CLI output format)."""
        return sorted(str(c) for c in self.conclusions)


def conclusion_lines(ext: Extension) -> List[str]:
    return ext.lines()


class _Index:
    """Interned view of a theory's rules, shared across fact variations."""

    __slots__ = (
        "lits",
        "lit_id",
        "n",
        "comp",
        "bodies",
        "strict_for",
        "sd_for",
        "all_for",
        "sup",
        "labels",
    )

    def __init__(self, rules, superiority, language):
        lits = sorted(language, key=literal_key)
        self.lits = lits
        self.lit_id = {q: i for i, q in enumerate(lits)}
        self.n = len(lits)
        self.comp = [self.lit_id[complement(q)] for q in lits]
        self.bodies: List[Tuple[int, ...]] = []
        self.labels: List[str] = []
        self.strict_for: List[List[int]] = [[] for _ in range(self.n)]
        self.sd_for: List[List[int]] = [[] for _ in range(self.n)]
        self.all_for: List[List[int]] = [[] for _ in range(self.n)]
        label_to_idx = {}
        for i, r in enumerate(rules):
            label_to_idx[r.label] = i
            self.labels.append(r.label)
            self.bodies.append(tuple(self.lit_id[a] for a in r.body))
            h = self.lit_id[r.head]
            self.all_for[h].append(i)
            if r.is_supportive:
                self.sd_for[h].append(i)
            if r.is_strict:
                self.strict_for[h].append(i)
        self.sup = frozenset(
            (label_to_idx[a], label_to_idx[b])
            for a, b in superiority
            if a in label_to_idx and b in label_to_idx
        )


@lru_cache(maxsize=512)
def _index_for(rules, superiority, language) -> _Index:
    return _Index(rules, superiority, language)


def _index(theory: DefeasibleTheory) -> _Index:
    violations = validate(theory)
    if violations:
        raise TheoryError("; ".join(violations))
    return _index_for(theory.rules, theory.superiority, language_of(theory))


def _make_kinds(idx: _Index, fact_ids, logic: Logic, state):
    """Build (symbol, sign, eval, clause-name) entries for the logic's tags.

    Each eval closure checks one inference condition for one literal against
    the current state and returns a small clause code (0 when the condition
    does not yet apply).  State arrays are only ever flipped False -> True.
    """
    comp = idx.comp
    bodies = idx.bodies
    strict_for = idx.strict_for
    sd_for = idx.sd_for
    all_for = idx.all_for
    sup = idx.sup

    Dp = state[("Delta", "+")]
    Dm = state[("Delta", "-")]

    def plus_delta(q):
        if q in fact_ids:
            return 1
        for ri in strict_for[q]:
            for a in bodies[ri]:
                if not Dp[a]:
                    break
            else:
                return 2
        return 0

    def minus_delta(q):
        if q in fact_ids:
            return 0
        for ri in strict_for[q]:
            for a in bodies[ri]:
                if Dm[a]:
                    break
            else:
                return 0
        return 1

    main = logic.main
    Mp = state[(main, "+")]
    Mm = state[(main, "-")]
    if logic.aux is None:
        # Ambiguity blocking: opposing rules are discharged by failure of
        # their bodies under the main tag itself.
        Fm = Mm
        Sw = Mp
    else:
        # Ambiguity propagating: an opposing rule only fails when its body
        # has no support, and suffices to block when its body is supported.
        Fm = state[(logic.aux, "-")]
        Sw = state[(logic.aux, "+")]

    def plus_main_td(q):
        if Dp[q]:
            return 1
        nq = comp[q]
        if not Dm[nq]:
            return 0
        supported = [
            ri
            for ri in sd_for[q]
            if all(Mp[a] for a in bodies[ri])
        ]
        if not supported:
            return 0
        for si in all_for[nq]:
            if any(Fm[a] for a in bodies[si]):
                continue
            for ti in supported:
                if (ti, si) in sup:
                    break
            else:
                return 0
        return 2

    def minus_main_td(q):
        if not Dm[q]:
            return 0
        nq = comp[q]
        rs = sd_for[q]
        for ri in rs:
            if not any(Mm[a] for a in bodies[ri]):
                break
        else:
            return 1
        if Dp[nq]:
            return 2
        for si in all_for[nq]:
            if all(Sw[a] for a in bodies[si]):
                for ti in rs:
                    if not any(Mm[a] for a in bodies[ti]) and (ti, si) in sup:
                        break
                else:
                    return 3
        return 0

    def plus_main_ntd(q):
        if Dp[q]:
            return 1
        nq = comp[q]
        if not Dm[nq]:
            return 0
        for ri in sd_for[q]:
            if all(Mp[a] for a in bodies[ri]):
                for si in all_for[nq]:
                    if any(Fm[a] for a in bodies[si]):
                        continue
                    if (ri, si) not in sup:
                        break
                else:
                    return 2
        return 0

    def minus_main_ntd(q):
        if not Dm[q]:
            return 0
        nq = comp[q]
        for ri in sd_for[q]:
            if any(Mm[a] for a in bodies[ri]):
                continue
            if Dp[nq]:
                continue
            for si in all_for[nq]:
                if all(Sw[a] for a in bodies[si]) and (ri, si) not in sup:
                    break
            else:
                return 0
        return 1

    kinds = [
        ("Delta", "+", plus_delta, {1: "+Delta.1", 2: "+Delta.2"}),
        ("Delta", "-", minus_delta, {1: "-Delta"}),
    ]
    if logic.team_defeat:
        kinds.append((main, "+", plus_main_td, {1: f"+{main}.1", 2: f"+{main}.2"}))
        kinds.append(
            (main, "-", minus_main_td,
             {1: f"-{main}.2.1", 2: f"-{main}.2.2", 3: f"-{main}.2.3"})
        )
    else:
        kinds.append((main, "+", plus_main_ntd, {1: f"+{main}.1", 2: f"+{main}.2"}))
        kinds.append((main, "-", minus_main_ntd, {1: f"-{main}.2"}))

    if logic.aux is not None:
        aux = logic.aux
        Sp = state[(aux, "+")]
        Sm = state[(aux, "-")]

        def plus_sigma(q):
            if Dp[q]:
                return 1
            nq = comp[q]
            for ri in sd_for[q]:
                if all(Sp[a] for a in bodies[ri]):
                    for si in all_for[nq]:
                        if any(Mm[a] for a in bodies[si]):
                            continue
                        if (si, ri) in sup:
                            break
                    else:
                        return 2
            return 0

        def minus_sigma(q):
            if not Dm[q]:
                return 0
            nq = comp[q]
            for ri in sd_for[q]:
                if any(Sm[a] for a in bodies[ri]):
                    continue
                for si in all_for[nq]:
                    if all(Mp[a] for a in bodies[si]) and (si, ri) in sup:
                        break
                else:
                    return 0
            return 1

        kinds.append((aux, "+", plus_sigma, {1: f"+{aux}.1", 2: f"+{aux}.2"}))
        kinds.append((aux, "-", minus_sigma, {1: f"-{aux}.2"}))
    return kinds


def _new_state(idx: _Index, logic: Logic) -> Dict[Tuple[str, str], List[bool]]:
    return {
        (sym, sign): [False] * idx.n
        for sym in logic.tags
        for sign in ("+", "-")
    }


def _load_state(idx, logic, ext: Extension, state) -> None:
    for c in ext.conclusions:
        if c.tag.symbol not in logic.tags:
            raise ValueError(
                f"conclusion {c} does not belong to the logic {logic.name}"
            )
        qid = idx.lit_id.get(c.literal)
        if qid is None:
            raise ValueError(f"literal {c.literal} is outside the theory language")
        state[(c.tag.symbol, c.tag.sign)][qid] = True


def _collect(idx, logic, state, iterations, trace) -> Extension:
    conclusions = set()
    lits = idx.lits
    for (sym, sign), arr in state.items():
        tag = Tag(sign, sym)
        for qid, val in enumerate(arr):
            if val:
                conclusions.add(TaggedConclusion(tag, lits[qid]))
    return Extension(
        logic,
        frozenset(conclusions),
        iterations,
        tuple(trace) if trace is not None else None,
    )


def _run(theory, logic, initial=None, max_passes=None, want_trace=False):
    idx = _index(theory)
    fact_ids = frozenset(idx.lit_id[f] for f in theory.facts)
    state = _new_state(idx, logic)
    iterations = initial.iterations if initial is not None else 0
    if initial is not None:
        _load_state(idx, logic, initial, state)
    kinds = _make_kinds(idx, fact_ids, logic, state)
    undecided = {
        (sym, sign): [q for q in range(idx.n) if not state[(sym, sign)][q]]
        for sym, sign, _, _ in kinds
    }
    trace = [] if want_trace else None
    passes = 0
    bound = 2 * len(kinds) * idx.n + 2
    while True:
        fired = []
        for sym, sign, ev, clause_names in kinds:
            arr = state[(sym, sign)]
            for q in undecided[(sym, sign)]:
                code = ev(q)
                if code:
                    fired.append((sym, sign, q, clause_names[code]))
        if not fired:
            break
        passes += 1
        iterations += 1
        for sym, sign, q, clause in fired:
            state[(sym, sign)][q] = True
            if trace is not None:
                trace.append(
                    TraceEntry(
                        iterations,
                        TaggedConclusion(Tag(sign, sym), idx.lits[q]),
                        clause,
                    )
                )
        for key, pending in undecided.items():
            arr = state[key]
            undecided[key] = [q for q in pending if not arr[q]]
        if max_passes is not None and passes >= max_passes:
            break
        if passes > bound:  # unreachable: conclusions strictly grow
            raise AssertionError("fixpoint failed to converge")
    return _collect(idx, logic, state, iterations, trace)


def extension(theory: DefeasibleTheory, logic: Logic, trace: bool = False) -> Extension:
    """The least fixed point: all conclusions of the theory under the logic."""
    return _run(theory, logic, want_trace=trace)


def step(theory: DefeasibleTheory, logic: Logic, ext: Optional[Extension] = None) -> Extension:
    """One application of the consequence operator: ``E`` together with every
    conclusion its inference conditions license from ``E``."""
    if ext is None:
        ext = Extension(logic, frozenset())
    return _run(theory, logic, initial=ext, max_passes=1)


def prove(theory: DefeasibleTheory, logic: Logic, conclusion: TaggedConclusion) -> bool:
    """Membership of a single tagged conclusion in the extension.

    The conclusion's tag must belong to the logic.  Querying a literal the
    theory never mentions is answered for the theory with that literal's atom
    added to its declared language, so negative conclusions about unknown
    literals are well defined.
    """
    if conclusion.tag.symbol not in logic.tags:
        raise ValueError(
            f"tag {conclusion.tag.symbol} does not belong to the logic {logic.name}"
        )
    if conclusion.literal not in language_of(theory):
        declared = (theory.declared_language or frozenset()) | {conclusion.literal.atom}
        theory = DefeasibleTheory(
            theory.facts, theory.rules, theory.superiority, declared
        )
    return conclusion in extension(theory, logic).conclusions
