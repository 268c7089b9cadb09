"""Built-in worked examples with their expected conclusions.

Each fixture ships as a ``.dl`` theory, an optional ``.add.dl`` addition, and
an ``.expect`` sidecar listing tagged conclusions (one per line, in the CLI
output format) that must hold for the theory -- or for theory-plus-addition
when an addition is present.  The tag of each expectation determines which
logic it is checked under.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .engine import extension
from .model import (
    DELTA,
    DELTASTAR,
    PARTIAL,
    PARTIALSTAR,
    DefeasibleTheory,
    Logic,
    Tag,
    TaggedConclusion,
    add,
)
from .theoryfile import parse, parse_literal

__all__ = ["Fixture", "load_fixtures", "fixture_names", "run_fixture", "logic_for_tag"]

_FIXTURE_NAMES = (
    "platypus",
    "ambiguity",
    "team_defeat",
    "team_defeat_addition",
    "ambiguity_addition",
)

_EXPECT_RE = re.compile(
    r"([+-])(Delta|partialstar|partial|deltastar|delta|sigmastar|sigma)\s+(\S+)\Z"
)

_TAG_LOGIC = {
    "Delta": PARTIAL,  # any logic would do; the Delta fragment is shared
    "partial": PARTIAL,
    "partialstar": PARTIALSTAR,
    "delta": DELTA,
    "sigma": DELTA,
    "deltastar": DELTASTAR,
    "sigmastar": DELTASTAR,
}


def logic_for_tag(symbol: str) -> Logic:
    """The logic under which a tag's conclusions are computed."""
    return _TAG_LOGIC[symbol]


@dataclass(frozen=True)
class Fixture:
    name: str
    theory: DefeasibleTheory
    addition: Optional[DefeasibleTheory]
    expected: Tuple[TaggedConclusion, ...]

    @property
    def combined(self) -> DefeasibleTheory:
        """The theory the expectations are about."""
        if self.addition is None:
            return self.theory
        return add(self.theory, self.addition)


def _read(name: str) -> Optional[str]:
    path = resources.files(__package__) / "data" / name
    if not path.is_file():
        return None
    return path.read_text(encoding="utf-8")


def _parse_expect(text: str) -> Tuple[TaggedConclusion, ...]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _EXPECT_RE.match(line)
        if not m:
            raise ValueError(f"bad expectation line: {raw!r}")
        sign, symbol, lit = m.groups()
        out.append(TaggedConclusion(Tag(sign, symbol), parse_literal(lit)))
    return tuple(out)


def load_fixtures() -> Dict[str, Fixture]:
    fixtures = {}
    for name in _FIXTURE_NAMES:
        theory = parse(_read(f"{name}.dl"))
        add_text = _read(f"{name}.add.dl")
        addition = parse(add_text) if add_text is not None else None
        expected = _parse_expect(_read(f"{name}.expect"))
        fixtures[name] = Fixture(name, theory, addition, expected)
    return fixtures


def fixture_names() -> Tuple[str, ...]:
    return _FIXTURE_NAMES


def run_fixture(fixture: Fixture) -> List[Tuple[TaggedConclusion, bool]]:
    """Evaluate every expectation; returns (expectation, held) pairs."""
    combined = fixture.combined
    cache = {}
    results = []
    for want in fixture.expected:
        logic = logic_for_tag(want.tag.symbol)
        if logic.name not in cache:
            cache[logic.name] = extension(combined, logic)
        results.append((want, want in cache[logic.name].conclusions))
    return results
