"""A workbench for defeasible logics.

Four propositional defeasible logics over a shared rule language -- with and
without team defeat, ambiguity blocking and ambiguity propagating -- computed
as least fixed points of their inference conditions, together with
source-to-source theory transformations between the team-defeat flavours and
a harness that checks "same conclusions modulo tags" under classes of theory
additions.
"""
from .model import (
    ALL_LOGICS,
    DELTA,
    DELTASTAR,
    EMPTY_THEORY,
    LOGICS,
    PARTIAL,
    PARTIALSTAR,
    TAG_SYMBOLS,
    ArrowKind,
    DefeasibleTheory,
    Literal,
    Logic,
    Rule,
    Tag,
    TaggedConclusion,
    TheoryError,
    add,
    complement,
    language_of,
    lint,
    theory_size,
    validate,
)
from .engine import Extension, TraceEntry, conclusion_lines, extension, prove, step
from .theoryfile import ParseError, TheoryDocument, parse, parse_document, parse_literal, render
from .transforms import (
    FreshSymbolScheme,
    TransformError,
    TransformReport,
    conclusions_to_theory,
    fact_behavior_theory,
    ntd_to_td,
    td_to_ntd,
)
from .simulation import (
    AdditionClass,
    Counterexample,
    NeutralConclusion,
    SimulationError,
    SimulationVerdict,
    TagCorrespondence,
    check_language_separation,
    check_simulation,
    conclusions_modulo_tags,
    fact_additions,
    random_theory,
)
from .fixtures import Fixture, fixture_names, load_fixtures, run_fixture

__version__ = "0.1.0"
