"""Theory-to-theory constructions.

Two source-to-source rewrites bridge the team-defeat divide, each quadratic
in the input size:

* :func:`ntd_to_td` makes a theory written for a non-team-defeat logic behave
  identically under the corresponding team-defeat logic, by giving every rule
  a private copy of its conflict: rule ``r`` for ``q`` becomes ``p(r)`` for a
  fresh atom ``h(r)`` with a strict link ``h(r) -> q``, and every rule for
  ``~q`` is copied as an attack ``n(r, r')`` on ``h(r)``.  A team can then
  never help ``r``: it must beat its own copies of all opponents.

* :func:`td_to_ntd` goes the other way, reifying "rule r_i is defeated"
  (``d(r_i)``), "some rule for q fired" (``one(q)``), and "q is strictly
  established" (``strict(q)``) as fresh atoms, so a single collector rule per
  literal can express team defeat inside a single-rule-wins logic.

:func:`conclusions_to_theory` builds a static theory that reproduces a given
conclusion set over a given language, using fact / strict-loop / defeasible /
defeasible-loop idioms per literal.

:func:`fact_behavior_theory` is an experimental, exponential-size construction
that tabulates a theory's behaviour under every fact addition as one guarded
rule group per addition; it exists so the simulation harness can probe it,
and no correctness claim is attached to it.

Fresh atoms live in the reserved ``$`` namespace so that transformation
output cannot capture symbols of the source theory or of later additions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .model import (
    ArrowKind,
    DefeasibleTheory,
    Literal,
    Logic,
    Rule,
    complement,
    language_of,
    literal_key,
    theory_size,
    validate,
)
from .engine import Extension, extension
from .model import TheoryError, add

__all__ = [
    "TransformError",
    "FreshSymbolScheme",
    "TransformReport",
    "ntd_to_td",
    "td_to_ntd",
    "conclusions_to_theory",
    "fact_behavior_theory",
]


class TransformError(Exception):
    """A construction's precondition failed."""


def _litkey(q: Literal) -> str:
    """Stable text for a literal inside a generated name: ``p`` / ``np``."""
    return q.atom if q.positive else "n" + q.atom


class FreshSymbolScheme:
    """Deterministic generator of fresh atoms and labels.

    Atoms are ``$``-prefixed and underscore-joined (``$h_r1``, ``$d_r1_r3``,
    ``$one_np``); labels join with ``$`` (``p$r1``, ``R2$r1$r3``).  Names are
    injective within one scheme: a name already taken (by the source theory,
    or by a different key) gets a numeric suffix.
    """

    def __init__(self, taken_atoms: Iterable[str] = (), taken_labels: Iterable[str] = ()):
        self._taken_atoms = set(taken_atoms)
        self._taken_labels = set(taken_labels)
        self._atoms: Dict[Tuple[str, ...], str] = {}
        self._labels: Dict[Tuple[str, ...], str] = {}

    @staticmethod
    def _fresh(name: str, taken: set) -> str:
        if name not in taken:
            return name
        n = 2
        while f"{name}~{n}" in taken:
            n += 1
        return f"{name}~{n}"

    def atom(self, *parts: str) -> str:
        key = tuple(parts)
        if key not in self._atoms:
            name = self._fresh("$" + "_".join(parts), self._taken_atoms)
            self._taken_atoms.add(name)
            self._atoms[key] = name
        return self._atoms[key]

    def lit(self, *parts: str) -> Literal:
        return Literal(self.atom(*parts))

    def label(self, *parts: str) -> str:
        key = tuple(parts)
        if key not in self._labels:
            name = self._fresh("$".join(parts), self._taken_labels)
            self._taken_labels.add(name)
            self._labels[key] = name
        return self._labels[key]


def _scheme_for(theory: DefeasibleTheory) -> FreshSymbolScheme:
    return FreshSymbolScheme(
        {q.atom for q in language_of(theory)},
        {r.label for r in theory.rules},
    )


def _carried_language(theory: DefeasibleTheory) -> FrozenSet[str]:
    """Atoms of the source language, kept declared in the output so the
    output addresses at least everything the source does."""
    return frozenset(q.atom for q in language_of(theory))


@dataclass(frozen=True)
class TransformReport:
    """A transformation result with provenance.

    ``mapping`` rows are (role, source, generated) triples tying each output
    rule label or atom back to the input element it was built from.
    """

    theory: DefeasibleTheory
    input_size: int
    output_size: int
    mapping: Tuple[Tuple[str, str, str], ...]

    def sidecar_text(self) -> str:
        lines = ["role\tsource\tgenerated"]
        lines.extend("\t".join(row) for row in self.mapping)
        return "\n".join(lines) + "\n"


def _require_valid(theory: DefeasibleTheory) -> None:
    violations = validate(theory)
    if violations:
        raise TransformError("input theory invalid: " + "; ".join(violations))


def ntd_to_td(theory: DefeasibleTheory) -> TransformReport:
    """Rewrite so a team-defeat logic reproduces non-team-defeat behaviour.

    Per rule ``r = B arrow q``: ``p(r): B arrow h(r)`` (same arrow kind) and
    ``s(r): h(r) -> q``; per rule ``r'`` for ``~q``: ``n(r,r'): B' arrow' ~h(r)``
    (the attacker keeps its own arrow kind, so defeaters attack as defeaters).
    Each superiority pair ``r > r'`` between opposing rules becomes
    ``p(r) > n(r,r')`` and ``n(r',r) > p(r')``.  Facts are carried unchanged.
    """
    _require_valid(theory)
    scheme = _scheme_for(theory)
    mapping: List[Tuple[str, str, str]] = []
    rules_out: List[Rule] = []
    p_label: Dict[str, str] = {}
    n_label: Dict[Tuple[str, str], str] = {}

    for r in theory.rules:
        h = scheme.lit("h", r.label)
        pl = scheme.label("p", r.label)
        sl = scheme.label("s", r.label)
        p_label[r.label] = pl
        mapping.append(("atom:h", r.label, h.atom))
        mapping.append(("p", r.label, pl))
        mapping.append(("s", r.label, sl))
        rules_out.append(Rule(pl, r.body, r.arrow, h))
        rules_out.append(Rule(sl, frozenset([h]), ArrowKind.STRICT, r.head))
        for opp in theory.rules:
            if opp.head == complement(r.head):
                nl = scheme.label("n", r.label, opp.label)
                n_label[(r.label, opp.label)] = nl
                mapping.append(("n", f"{r.label},{opp.label}", nl))
                rules_out.append(Rule(nl, opp.body, opp.arrow, complement(h)))

    by_label = {r.label: r for r in theory.rules}
    sup_out = set()
    for a, b in sorted(theory.superiority):
        ra, rb = by_label.get(a), by_label.get(b)
        if ra is None or rb is None or ra.head != complement(rb.head):
            continue  # inert pair: not between opposing rules
        sup_out.add((p_label[a], n_label[(a, b)]))
        sup_out.add((n_label[(b, a)], p_label[b]))
        mapping.append(("sup", f"{a}>{b}", f"{p_label[a]}>{n_label[(a, b)]}"))
        mapping.append(("sup", f"{a}>{b}", f"{n_label[(b, a)]}>{p_label[b]}"))

    out = DefeasibleTheory(
        theory.facts, tuple(rules_out), frozenset(sup_out), _carried_language(theory)
    )
    return TransformReport(out, theory_size(theory), theory_size(out), tuple(mapping))


def td_to_ntd(theory: DefeasibleTheory) -> TransformReport:
    """Rewrite so a non-team-defeat logic reproduces team-defeat behaviour.

    The construction, per input theory ``(F, R, >)``:

    1. facts carried unchanged;
    2. per strict rule ``r = B -> q``: ``ns(q): => ~strict(q)`` (once per
       literal ``q``), ``s(r): B -> strict(q)``, and ``ns(q) > s(r)`` -- the
       defeasible blocker pins ``strict(q)`` to strict provability only;
    3. per literal ``q`` with a strict rule: ``strict(q) -> q``;
    4. per ordered pair of opposing rules ``r_i`` (head ``~q``) and ``r_j``
       (head ``q``, not a defeater):

       - ``R1_ij: B_i arrow_i ~d(r_i,r_j)``
       - ``R2_ij: B_j => d(r_i,r_j)`` with ``R2_ij > R1_ij`` iff ``r_j > r_i``
       - ``R3_ij: strict(q) => d(r_i,r_j)`` with ``R3_ij > R1_ij`` always
       - ``d(r_i,r_j) => d(r_i)``

       and, once per rule ``r_i`` (whether or not any opposing
       strict-or-defeasible rule exists):

       - ``fail(r_i) => d(r_i)``
       - ``NF_i: B_i => ~fail(r_i)`` with ``NF_i > F_i``
       - ``F_i: => fail(r_i)``
    5. per strict-or-defeasible rule ``r = B arrow q``: ``B => one(q)``;
    6. per literal ``q``: ``one(q), d(r_1), ..., d(r_k) => q`` where
       ``r_1..r_k`` are the rules for ``~q``.
    """
    _require_valid(theory)
    scheme = _scheme_for(theory)
    mapping: List[Tuple[str, str, str]] = []
    rules_out: List[Rule] = []
    sup_out = set()
    lits = sorted(language_of(theory), key=literal_key)

    def strict_lit(q: Literal) -> Literal:
        return scheme.lit("strict", _litkey(q))

    def one_lit(q: Literal) -> Literal:
        return scheme.lit("one", _litkey(q))

    def d_pair(ri: Rule, rj: Rule) -> Literal:
        return scheme.lit("d", ri.label, rj.label)

    def d_rule(r: Rule) -> Literal:
        return scheme.lit("d", r.label)

    def fail_lit(r: Rule) -> Literal:
        return scheme.lit("fail", r.label)

    # points 2 and 3: strict provability reified per strictly-headed literal
    strict_heads: List[Literal] = []
    for r in theory.rules:
        if r.is_strict and r.head not in strict_heads:
            strict_heads.append(r.head)
    ns_label: Dict[Literal, str] = {}
    for q in strict_heads:
        nsl = scheme.label("ns", _litkey(q))
        ns_label[q] = nsl
        mapping.append(("ns", str(q), nsl))
        rules_out.append(Rule(nsl, frozenset(), ArrowKind.DEFEASIBLE, complement(strict_lit(q))))
    for r in theory.rules:
        if r.is_strict:
            sl = scheme.label("s", r.label)
            mapping.append(("s", r.label, sl))
            rules_out.append(Rule(sl, r.body, ArrowKind.STRICT, strict_lit(r.head)))
            sup_out.add((ns_label[r.head], sl))
    for q in strict_heads:
        lbl = scheme.label("st", _litkey(q))
        mapping.append(("st", str(q), lbl))
        rules_out.append(Rule(lbl, frozenset([strict_lit(q)]), ArrowKind.STRICT, q))

    # point 4: defeat of each rule, pairwise and by body failure
    for ri in theory.rules:
        q = complement(ri.head)
        for rj in theory.rules:
            if rj.head != q or not rj.is_supportive:
                continue
            dij = d_pair(ri, rj)
            mapping.append(("atom:d", f"{ri.label},{rj.label}", dij.atom))
            l1 = scheme.label("R1", ri.label, rj.label)
            l2 = scheme.label("R2", ri.label, rj.label)
            l3 = scheme.label("R3", ri.label, rj.label)
            mapping.append(("R1", f"{ri.label},{rj.label}", l1))
            mapping.append(("R2", f"{ri.label},{rj.label}", l2))
            mapping.append(("R3", f"{ri.label},{rj.label}", l3))
            rules_out.append(Rule(l1, ri.body, ri.arrow, complement(dij)))
            rules_out.append(Rule(l2, rj.body, ArrowKind.DEFEASIBLE, dij))
            rules_out.append(Rule(l3, frozenset([strict_lit(q)]), ArrowKind.DEFEASIBLE, dij))
            rules_out.append(
                Rule(scheme.label("D", ri.label, rj.label), frozenset([dij]),
                     ArrowKind.DEFEASIBLE, d_rule(ri))
            )
            if (rj.label, ri.label) in theory.superiority:
                sup_out.add((l2, l1))
            sup_out.add((l3, l1))
        lf = scheme.label("DF", ri.label)
        lnf = scheme.label("NF", ri.label)
        lfl = scheme.label("F", ri.label)
        mapping.append(("atom:fail", ri.label, fail_lit(ri).atom))
        mapping.append(("DF", ri.label, lf))
        mapping.append(("NF", ri.label, lnf))
        mapping.append(("F", ri.label, lfl))
        rules_out.append(
            Rule(lf, frozenset([fail_lit(ri)]), ArrowKind.DEFEASIBLE, d_rule(ri))
        )
        rules_out.append(Rule(lnf, ri.body, ArrowKind.DEFEASIBLE, complement(fail_lit(ri))))
        rules_out.append(Rule(lfl, frozenset(), ArrowKind.DEFEASIBLE, fail_lit(ri)))
        sup_out.add((lnf, lfl))

    # point 5: one(q) fires when some supportive rule body for q succeeds
    for r in theory.rules:
        if r.is_supportive:
            lbl = scheme.label("one", r.label)
            mapping.append(("one", r.label, lbl))
            rules_out.append(Rule(lbl, r.body, ArrowKind.DEFEASIBLE, one_lit(r.head)))

    # point 6: team defeat collapsed into one collector per literal
    for q in lits:
        body = {one_lit(q)}
        for r in theory.rules:
            if r.head == complement(q):
                body.add(d_rule(r))
        lbl = scheme.label("team", _litkey(q))
        mapping.append(("team", str(q), lbl))
        rules_out.append(Rule(lbl, frozenset(body), ArrowKind.DEFEASIBLE, q))

    out = DefeasibleTheory(
        theory.facts, tuple(rules_out), frozenset(sup_out), _carried_language(theory)
    )
    return TransformReport(out, theory_size(theory), theory_size(out), tuple(mapping))


def conclusions_to_theory(ext: Extension, sigma: Iterable[Literal]) -> DefeasibleTheory:
    """A theory whose conclusions over ``sigma`` reproduce ``ext``.

    Per literal ``q`` of ``sigma`` (closed under complement):

    * strictly concluded -> fact ``q``; strictly undecided -> loop ``q -> q``;
      strictly refuted -> nothing;
    * defeasibly concluded with strict backing -> nothing extra; defeasibly
      concluded without -> ``=> q``; defeasibly refuted -> nothing;
      defeasibly undecided -> loop ``q => q``.

    The output is so simple its conclusions agree across all four logics.
    Raises :class:`TransformError` for a conclusion set that pairs ``+d q``
    with a strictly undecided ``q``, which no extension of a well-formed
    theory contains.
    """
    main = ext.logic.main
    lits = set(sigma)
    lits |= {complement(q) for q in lits}
    facts = []
    rules: List[Rule] = []
    for q in sorted(lits, key=literal_key):
        key = _litkey(q)
        plus_strict = ext.has("+", "Delta", q)
        minus_strict = ext.has("-", "Delta", q)
        plus_main = ext.has("+", main, q)
        minus_main = ext.has("-", main, q)
        if plus_strict:
            facts.append(q)
        elif not minus_strict:
            rules.append(Rule(f"u${key}", frozenset([q]), ArrowKind.STRICT, q))
        if plus_main:
            if minus_strict:
                rules.append(Rule(f"d${key}", frozenset(), ArrowKind.DEFEASIBLE, q))
            elif not plus_strict:
                raise TransformError(
                    f"conclusion set pairs +{main} {q} with an unsettled strict status"
                )
        elif not minus_main:
            rules.append(Rule(f"ud${key}", frozenset([q]), ArrowKind.DEFEASIBLE, q))
    return DefeasibleTheory(
        frozenset(facts),
        tuple(rules),
        frozenset(),
        frozenset(q.atom for q in lits),
    )


def fact_behavior_theory(
    theory: DefeasibleTheory, logic: Logic, atom_cap: int = 8
) -> DefeasibleTheory:
    """Tabulate the theory's behaviour under every fact addition (exponential).

    Emits, for every literal ``q`` of the language, a pair of rules
    ``q => ~not_q`` and ``=> not_q`` (so ``not_q`` holds defeasibly exactly
    when ``q`` was not added and not concluded), and then, for every subset
    ``A`` of the language, rules guarded by ``A`` -- strict ones -- or by
    ``A`` plus the ``not_a`` markers of its refuted literals -- defeasible
    ones -- reproducing the conclusions of the theory plus facts ``A``:

    * ``A -> q``            if ``+Delta q`` holds and ``q`` is not in ``A``
    * ``A, q -> q``         if the strict status of ``q`` is unsettled
    * ``Ahat_-q => q``      if ``+d q`` holds and ``q`` is not in ``A``
    * ``Ahat_-q, q => q``   if the defeasible status of ``q`` is unsettled

    where ``d`` is the logic's main tag and ``Ahat`` extends ``A`` with
    ``not_a`` for every ``-d a``.  Facts are carried over; the superiority
    relation is empty.  No simulation claim is made for the result; the
    harness exists to probe it.
    """
    _require_valid(theory)
    sigma = sorted(language_of(theory), key=literal_key)
    atoms = {q.atom for q in sigma}
    if len(atoms) > atom_cap:
        raise TransformError(
            f"language has {len(atoms)} atoms; cap for this construction is {atom_cap}"
        )
    scheme = _scheme_for(theory)
    not_lit = {q: scheme.lit("not", _litkey(q)) for q in sigma}
    rules: List[Rule] = []
    seen = set()

    def emit(label: str, body, arrow: ArrowKind, head: Literal) -> None:
        sig = (frozenset(body), arrow, head)
        if sig in seen:
            return
        seen.add(sig)
        rules.append(Rule(label, frozenset(body), arrow, head))

    for q in sigma:
        key = _litkey(q)
        emit(f"nA${key}", [q], ArrowKind.DEFEASIBLE, complement(not_lit[q]))
        emit(f"nB${key}", [], ArrowKind.DEFEASIBLE, not_lit[q])

    main = logic.main
    for bits in range(2 ** len(sigma)):
        addition = frozenset(sigma[i] for i in range(len(sigma)) if bits & (1 << i))
        ext = extension(add(theory, DefeasibleTheory(facts=addition)), logic)
        a_hat = set(addition)
        a_hat.update(not_lit[a] for a in sigma if ext.has("-", main, a))
        for q in sigma:
            key = f"{bits}${_litkey(q)}"
            if ext.has("+", "Delta", q) and q not in addition:
                emit(f"s${key}", addition, ArrowKind.STRICT, q)
            if not ext.has("+", "Delta", q) and not ext.has("-", "Delta", q):
                emit(f"sl${key}", addition | {q}, ArrowKind.STRICT, q)
            if ext.has("+", main, q) and q not in addition:
                emit(f"df${key}", a_hat - {q}, ArrowKind.DEFEASIBLE, q)
            if not ext.has("+", main, q) and not ext.has("-", main, q):
                emit(f"dl${key}", (a_hat - {q}) | {q}, ArrowKind.DEFEASIBLE, q)
    return DefeasibleTheory(
        theory.facts,
        tuple(rules),
        frozenset(),
        frozenset(atoms),
    )
