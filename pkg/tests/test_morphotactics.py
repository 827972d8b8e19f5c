from __future__ import annotations

from itertools import combinations, product

import pytest

from morfwork.morphotactics import (
    ParadigmError,
    enumerate_lexical_forms,
    load_paradigms,
)

MINI = """
PARADIGM nominal: plural? possessive? case? relative?
PARADIGM verbal: voice? negation? modal? maintense? question? secondtense? agreement
{morphemes}
"""


def test_shipped_paradigm_shape(wb):
    nominal = wb.automaton.paradigms["nominal"]
    verbal = wb.automaton.paradigms["verbal"]
    assert [s.name for s in nominal] == ["plural", "possessive", "case", "relative"]
    assert all(s.optional for s in nominal)
    assert [s.name for s in verbal] == [
        "voice", "negation", "modal", "maintense", "question", "secondtense", "agreement",
    ]
    assert [s.name for s in verbal if not s.optional] == ["agreement"]
    assert len(wb.automaton.inventory) == 17


def test_unknown_slot_rejected():
    with pytest.raises(ParadigmError, match="unknown slot"):
        load_paradigms(MINI.format(morphemes="MORPHEME OPT mood +mA"))


def test_duplicate_morpheme_rejected():
    text = MINI.format(morphemes="MORPHEME PL plural +lAr\nMORPHEME PL plural +lAr")
    with pytest.raises(ParadigmError, match="duplicate morpheme"):
        load_paradigms(text)


def test_feature_ownership_enforced():
    with pytest.raises(ParadigmError, match="not owned"):
        load_paradigms(MINI.format(morphemes="MORPHEME PL plural +lAr case=dative"))


def test_form_must_start_with_boundary():
    with pytest.raises(ParadigmError, match="must start"):
        load_paradigms(MINI.format(morphemes="MORPHEME PL plural lAr"))


def test_empty_inventory_accepts_only_bare_roots():
    automaton = load_paradigms(MINI.format(morphemes=""))
    start = automaton.start("noun")
    assert automaton.successors(start) == []
    assert automaton.accepting(start)

    class Entry:
        root = "ev"
        category = "noun"

    forms = enumerate_lexical_forms(Entry(), 3, automaton)
    assert [str(f) for f in forms] == ["ev"]


def test_successors_at_verbal_start(wb):
    names = {m.name for m in wb.automaton.successors(wb.automaton.start("verb"))}
    assert "PASS" in names and "PAST" in names
    # agreement is the first mandatory slot: nothing beyond it is reachable
    assert names == {"PASS", "NEG", "NEG-CAP", "PAST", "3SG", "1SG", "3PL"}


def test_successors_after_case_slot(wb):
    state = wb.automaton.start("noun")
    state = wb.automaton.step(state, "DAT")
    assert [m.name for m in wb.automaton.successors(state)] == ["REL"]
    state = wb.automaton.step(state, "REL")
    assert wb.automaton.successors(state) == []
    assert wb.automaton.accepting(state)


def test_bare_verb_root_not_accepted(wb):
    assert not wb.automaton.accepting(wb.automaton.start("verb"))


def test_enumerate_zero_suffixes(wb):
    ev = wb.lexicon.lookup("ev")[0]
    assert [str(f) for f in enumerate_lexical_forms(ev, 0, wb.automaton)] == ["ev"]


def test_enumerate_one_suffix_inventory(wb):
    ev = wb.lexicon.lookup("ev")[0]
    forms = {str(f) for f in enumerate_lexical_forms(ev, 1, wb.automaton)}
    assert {"ev+lAr", "ev+Hn", "ev+nHn", "ev+yA"} <= forms


def test_enumerate_includes_zero_agreement_path(wb):
    kes = wb.lexicon.lookup("kes")[0]
    forms = enumerate_lexical_forms(kes, 4, wb.automaton)
    matches = [f for f in forms if f.gloss() == "kes+Hl+yAmA+DH"]
    assert len(matches) == 1
    # the zero 3SG morpheme leaves a trailing boundary with an empty span
    assert str(matches[0]) == "kes+Hl+yAmA+DH+"
    assert matches[0].spans[-1][2] == "3SG"


def test_slot_order_strictly_increases(wb):
    for category in ("noun", "verb"):
        paradigm = "nominal" if category == "noun" else "verbal"
        slot_pos = {
            s.name: i for i, s in enumerate(wb.automaton.paradigms[paradigm])
        }
        for path in wb.automaton.enumerate_paths(category, 4):
            positions = [slot_pos[m.slot] for m in path]
            assert positions == sorted(positions)
            assert len(set(positions)) == len(positions)


def test_feature_soundness_along_paths(wb):
    for category in ("noun", "verb"):
        for path in wb.automaton.enumerate_paths(category, 4):
            dims = [d for m in path for d, _ in m.features]
            assert len(dims) == len(set(dims))


def _count_paths_brute_force(automaton, paradigm_name, max_suffixes):
    """Independent path count: ordered slot subsets x morpheme choices."""
    slots = automaton.paradigms[paradigm_name]
    per_slot = []
    for i, slot in enumerate(slots):
        members = [
            m for m in automaton.inventory.values() if m.slot == slot.name
        ]
        per_slot.append((i, slot, members))
    mandatory = {i for i, slot, _ in per_slot if not slot.optional}
    total = 0
    indices = list(range(len(slots)))
    for r in range(0, max_suffixes + 1):
        for chosen in combinations(indices, r):
            if not mandatory <= set(chosen):
                continue
            pools = [per_slot[i][2] for i in chosen]
            if any(not pool for pool in pools):
                continue
            for combo in product(*pools):
                dims = [d for m in combo for d, _ in m.features]
                if len(dims) == len(set(dims)):
                    total += 1
    return total


def test_path_enumeration_matches_counting_oracle(wb):
    for category, paradigm in (("noun", "nominal"), ("verb", "verbal")):
        for max_suffixes in (0, 1, 2, 3, 4):
            enumerated = len(wb.automaton.enumerate_paths(category, max_suffixes))
            counted = _count_paths_brute_force(wb.automaton, paradigm, max_suffixes)
            assert enumerated == counted, (category, max_suffixes)


def test_enumerate_rejects_negative(wb):
    ev = wb.lexicon.lookup("ev")[0]
    with pytest.raises(ValueError):
        enumerate_lexical_forms(ev, -1, wb.automaton)


def test_illegal_step_rejected(wb):
    state = wb.automaton.start("noun")
    state = wb.automaton.step(state, "DAT")
    with pytest.raises(ParadigmError):
        wb.automaton.step(state, "PL")  # plural slot already passed
    with pytest.raises(ParadigmError):
        wb.automaton.step(wb.automaton.start("noun"), "PASS")  # verbal morpheme
