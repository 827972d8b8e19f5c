"""Brute-force closure: enumeration + generation inverted by the analyzer.

Every lexical form of every shipped root with up to three suffixes is
generated; the analyzer must return, for each resulting surface word,
exactly the set of readings that produced it.
"""

from __future__ import annotations

from morfwork.analyzer import UnknownWordError
from morfwork.morphotactics import enumerate_lexical_forms

MAX_SUFFIXES = 3


def _closure(wb):
    surface_map: dict[str, set] = {}
    for entry in wb.lexicon.entries:
        for form in enumerate_lexical_forms(entry, MAX_SUFFIXES, wb.automaton):
            names = tuple(name for _, _, name in form.spans[1:])
            surfaces = wb.engine.generate(form)
            assert len(surfaces) <= 1, f"non-deterministic realization for {form}"
            for surface in surfaces:
                surface_map.setdefault(surface, set()).add(
                    (entry.root, entry.category, names)
                )
    return surface_map


def test_analyze_matches_brute_force_closure(wb):
    surface_map = _closure(wb)
    assert len(surface_map) > 1000
    mismatches = []
    for surface, expected in surface_map.items():
        parses = wb.analyzer.analyze(surface)
        got = {
            (p.root.root, p.root.category, p.morpheme_names()) for p in parses
        }
        if got != expected:
            mismatches.append((surface, expected, got))
    assert not mismatches, mismatches[:5]


def test_enumerated_surfaces_never_unknown(wb):
    for surface in list(_closure(wb)):
        try:
            wb.analyzer.analyze(surface)
        except UnknownWordError:  # pragma: no cover - failure path
            raise AssertionError(f"enumerated surface {surface!r} not analyzable")
