from __future__ import annotations

import pytest

from morfwork.analyzer import (
    IllegalMorphotacticsError,
    UnknownWordError,
    casefold_turkish,
)


def test_turkish_casefold():
    assert casefold_turkish("EVİN") == "evin"
    assert casefold_turkish("KAPI") == "kapı"
    assert casefold_turkish("Musluğun") == "musluğun"
    assert casefold_turkish("IŞIK") == "ışık"


def test_evin_has_three_parses_in_documented_order(wb):
    parses = wb.analyzer.analyze("evin")
    assert len(parses) == 3
    assert [p.gloss for p in parses] == ["evin", "ev+Hn", "ev+nHn"]
    assert [p.morpheme_names() for p in parses] == [(), ("2SG-POSS",), ("GEN",)]
    assert parses[0].root.gloss == "wheat germ"
    assert parses[1].features.possessive == "2sg"
    assert parses[2].features.case == "genitive"
    assert all(p.features.category == "noun" for p in parses)


def test_kesilemedi_single_parse_with_reference_features(wb):
    parses = wb.analyzer.analyze("kesilemedi")
    assert len(parses) == 1
    p = parses[0]
    assert p.gloss == "kes+Hl+yAmA+DH"
    assert p.morpheme_names() == ("PASS", "NEG-CAP", "PAST", "3SG")
    f = p.features
    assert f.root == "kes"
    assert f.category == "verb"
    assert f.voice == "passive"
    assert f.sense == "negative-capability"
    assert f.aspect == "past"
    assert f.agreement == "3sg"
    assert f.case is None and f.possessive is None and f.tense is None


def test_bare_root_parse(wb):
    parses = wb.analyzer.analyze("ev")
    assert len(parses) == 1
    assert parses[0].features.case is None
    assert parses[0].features.category == "noun"
    assert parses[0].morphemes == ()


def test_mixed_case_input_is_folded(wb):
    assert [p.gloss for p in wb.analyzer.analyze("Evin")] == [
        p.gloss for p in wb.analyzer.analyze("evin")
    ]
    assert [p.gloss for p in wb.analyzer.analyze("EVİN")] == [
        p.gloss for p in wb.analyzer.analyze("evin")
    ]


def test_empty_input_rejected(wb):
    with pytest.raises(ValueError):
        wb.analyzer.analyze("")
    with pytest.raises(ValueError):
        wb.analyzer.analyze("   ")


def test_unknown_word_raises(wb):
    with pytest.raises(UnknownWordError):
        wb.analyzer.analyze("xyzq")


@pytest.mark.parametrize(
    "root,names,surface",
    [
        ("ev", ["1PL-POSS", "DAT"], "evimize"),
        ("ayak", ["GEN"], "ayağın"),
        ("masa", ["1SG-POSS"], "masam"),
        ("kes", ["PASS", "NEG-CAP", "PAST", "3SG"], "kesilemedi"),
    ],
)
def test_generate_word_reference_forms(wb, root, names, surface):
    entry = wb.lexicon.lookup(root)[0]
    assert wb.analyzer.generate_word(entry, names) == surface


def test_generate_word_rejects_bad_order(wb):
    ev = wb.lexicon.lookup("ev")[0]
    with pytest.raises(IllegalMorphotacticsError):
        wb.analyzer.generate_word(ev, ["DAT", "PL"])


def test_generate_word_rejects_unknown_morpheme(wb):
    ev = wb.lexicon.lookup("ev")[0]
    with pytest.raises(IllegalMorphotacticsError):
        wb.analyzer.generate_word(ev, ["NOPE"])


def test_generate_word_requires_mandatory_agreement(wb):
    kes = wb.lexicon.lookup("kes")[0]
    with pytest.raises(IllegalMorphotacticsError):
        wb.analyzer.generate_word(kes, ["PASS", "PAST"])


def test_ambiguity_degree(wb):
    assert wb.analyzer.ambiguity_degree("evin") == 3
    assert wb.analyzer.ambiguity_degree("kesilemedi") == 1
    assert wb.analyzer.ambiguity_degree("xyzq") == 0


def _corpus_vocabulary(corpus_text):
    words = []
    seen = set()
    for line in corpus_text.splitlines():
        for token in line.split():
            token = token.strip(".,")
            folded = casefold_turkish(token)
            if folded and folded not in seen:
                seen.add(folded)
                words.append(folded)
    return words


def test_soundness_over_corpus_vocabulary(wb, corpus_text):
    for word in _corpus_vocabulary(corpus_text):
        for p in wb.analyzer.analyze(word):
            assert wb.engine.recognize(word, p.lexical), (word, p.gloss)
            state = wb.automaton.start(p.root.category)
            for name in p.morpheme_names():
                state = wb.automaton.step(state, name)
            assert wb.automaton.accepting(state)


def test_round_trip_over_corpus_vocabulary(wb, corpus_text):
    for word in _corpus_vocabulary(corpus_text):
        for p in wb.analyzer.analyze(word):
            assert wb.analyzer.generate_word(p.root, list(p.morpheme_names())) == word


def test_feature_determinism(wb):
    first = wb.analyzer.analyze("kesilemedi")[0]
    second = wb.analyzer.analyze("kesilemedi")[0]
    assert first.features == second.features
    assert first.gloss == second.gloss
