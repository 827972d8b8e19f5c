from __future__ import annotations

import pytest

from morfwork.cli import main
from morfwork.workbench import _default_data


@pytest.fixture()
def artifacts(tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text(
        _default_data("sample_corpus.txt").read_text(encoding="utf-8"), encoding="utf-8"
    )
    tagged = tmp_path / "tagged.morf"
    index = tmp_path / "index.morf"
    assert main(["tag", str(corpus), "-o", str(tagged)]) == 0
    assert main(["index", str(tagged), "-o", str(index)]) == 0
    return corpus, tagged, index


def test_analyze_prints_three_parses(capsys):
    assert main(["analyze", "evin"]) == 0
    out = capsys.readouterr().out
    assert "3 parses" in out
    assert "ev+Hn" in out and "ev+nHn" in out and "evin" in out


def test_analyze_unknown_word_is_domain_error(capsys):
    assert main(["analyze", "xyzq"]) == 1
    assert "error" in capsys.readouterr().err


def test_generate_reference_forms(capsys):
    assert main(["generate", "ev", "1PL-POSS,DAT"]) == 0
    assert capsys.readouterr().out.strip() == "evimize"
    assert main(["generate", "ayak", "GEN"]) == 0
    assert capsys.readouterr().out.strip() == "ayağın"
    assert main(["generate", "masa", "1SG-POSS"]) == 0
    assert capsys.readouterr().out.strip() == "masam"


def test_generate_bare_root(capsys):
    assert main(["generate", "ev", "-"]) == 0
    assert capsys.readouterr().out.strip() == "ev"


def test_generate_illegal_order(capsys):
    assert main(["generate", "ev", "DAT,PL"]) == 1
    assert "error" in capsys.readouterr().err


def test_generate_unknown_root(capsys):
    assert main(["generate", "zzz", "DAT"]) == 1


def test_ascii_fold_output(capsys):
    assert main(["--ascii-fold", "generate", "ayak", "GEN"]) == 0
    assert capsys.readouterr().out.strip() == "ayaGIn"


def test_tag_report_on_stderr(artifacts, capsys):
    corpus, tagged, index = artifacts
    assert main(["tag", str(corpus)]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("#morfwork-tagged v1")
    assert "unresolved_rate" in captured.err


def test_search_conflict_exit_code(artifacts, capsys):
    _, tagged, index = artifacts
    code = main(
        [
            "search",
            "--tagged", str(tagged),
            "--index", str(index),
            "--case=dative",
            "--tense=past",
        ]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "conflict" in err
    assert "noun" in err and "verb" in err


def test_search_hits_and_porcelain(artifacts, capsys):
    _, tagged, index = artifacts
    args = [
        "search",
        "--tagged", str(tagged),
        "--index", str(index),
        "--agreement=3sg",
        "--aspect=past",
        "--voice=passive",
    ]
    assert main(args) == 0
    human = capsys.readouterr().out
    assert "**kesilemedi**" in human

    assert main(args + ["--porcelain"]) == 0
    porcelain = capsys.readouterr().out
    rows = [line.split("\t") for line in porcelain.strip().splitlines()]
    assert ["0", "4", "Musluğun akıntısı bir türlü kesilemedi."] in rows


def test_search_unknown_value(artifacts, capsys):
    _, tagged, index = artifacts
    code = main(
        ["search", "--tagged", str(tagged), "--index", str(index), "--case=blerg"]
    )
    assert code == 1


def test_search_empty_query(artifacts, capsys):
    _, tagged, index = artifacts
    code = main(["search", "--tagged", str(tagged), "--index", str(index)])
    assert code == 1


def test_search_without_paths_is_config_error(capsys):
    assert main(["search", "--case=dative"]) == 2


def test_missing_file_is_config_error(capsys):
    assert main(["tag", "/nonexistent/corpus.txt"]) == 2


def test_rules_check(capsys):
    assert main(["rules", "check"]) == 0
    assert "7 rules, no conflicts" in capsys.readouterr().out


def test_rules_check_reports_conflicts(tmp_path, capsys):
    bad = tmp_path / "bad.rules"
    bad.write_text(
        "ALPHABET\n SYMBOLS a e i u m s v ı ü\n CLASS Vowel = a e ı i u ü\n"
        " META H = ı i u ü\n PAIRS identity H:i H:u\nEND\n"
        "A: H:i <= _ ;\nB: H:u <= _ ;\n",
        encoding="utf-8",
    )
    assert main(["--rules", str(bad), "rules", "check"]) == 1
    assert "coerce" in capsys.readouterr().out


def test_bad_usage_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["definitely-not-a-command"])
    assert exc.value.code == 2


def test_config_file_via_environment(tmp_path, monkeypatch, capsys):
    config = tmp_path / "morfwork.conf"
    config.write_text("lexicon=missing.lex\n", encoding="utf-8")
    monkeypatch.setenv("MORFWORK_CONFIG", str(config))
    assert main(["analyze", "ev"]) == 2
    assert "missing" in capsys.readouterr().err

    monkeypatch.delenv("MORFWORK_CONFIG")
    assert main(["analyze", "ev"]) == 0


def test_strict_tag_fails_on_unresolved(tmp_path, capsys):
    corpus = tmp_path / "one.txt"
    corpus.write_text("güzel\n", encoding="utf-8")
    assert main(["tag", "--strict", str(corpus)]) == 1
    assert "unresolved" in capsys.readouterr().err


def test_interactive_tag_prompts(tmp_path, capsys, monkeypatch):
    import io

    corpus = tmp_path / "one.txt"
    corpus.write_text("güzel\n", encoding="utf-8")
    monkeypatch.setattr("sys.stdin", io.StringIO("2\n"))
    out_file = tmp_path / "tagged.morf"
    assert main(["tag", "--interactive", str(corpus), "-o", str(out_file)]) == 0
    err = capsys.readouterr().err
    assert "ambiguous token" in err
    assert "interactive=1" in err
    assert ":güzel:noun::" in out_file.read_text(encoding="utf-8")
