"""Command-line surface for the full pipeline.

Subcommands: analyze, generate, tag, index, search, serve, rules check.
Exit codes: 0 success, 1 domain errors (unknown word, conflict, unresolved
tokens in strict mode), 2 usage and configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus as corpus_io
from .analyzer import (
    IllegalMorphotacticsError,
    NoRealizationError,
    UnknownWordError,
)
from .corpus import build_index, load_index, load_tagged, save_index, save_tagged
from .disambiguator import UnresolvedTokensError, tag_corpus
from .display import ascii_fold, format_parse
from .phonology import RuleFileError, check_rule_conflicts, parse_rule_file
from .search import (
    Conflict,
    EmptyQueryError,
    Query,
    SearchError,
    UnknownFeatureValueError,
    search,
)
from .workbench import Config, ConfigError, Workbench, load_config

_QUERY_FLAGS = (
    "agreement",
    "aspect",
    "case",
    "category",
    "possessive",
    "sense",
    "tense",
    "voice",
    "suffix",
    "root",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morfwork",
        description="Turkish morphological analysis and corpus search workbench",
    )
    parser.add_argument("--config", help="config file (also via MORFWORK_CONFIG)")
    parser.add_argument(
        "--ascii-fold",
        action="store_true",
        help="render special Turkish letters as upper-case ASCII on output",
    )
    for key in ("rules", "paradigms", "lexicon", "constraints", "stats", "features"):
        parser.add_argument(f"--{key}", help=f"override the {key} file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print every parse of a word")
    p.add_argument("word")

    p = sub.add_parser("generate", help="realize a root plus morpheme names")
    p.add_argument("root")
    p.add_argument("morphemes", help="comma-separated morpheme names, or '-' for none")

    p = sub.add_parser("tag", help="disambiguate a one-sentence-per-line corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", help="tagged-corpus output file (default stdout)")
    p.add_argument("--interactive", action="store_true", help="prompt on residual ambiguity")
    p.add_argument("--strict", action="store_true", help="fail if any token stays unresolved")

    p = sub.add_parser("index", help="build the feature index from a tagged corpus")
    p.add_argument("tagged")
    p.add_argument("-o", "--output", help="index output file (default stdout)")

    p = sub.add_parser("search", help="find sentences whose words match the features")
    p.add_argument("--tagged", help="tagged-corpus file")
    p.add_argument("--index", help="feature-index file")
    p.add_argument("--porcelain", action="store_true", help="machine-readable output")
    for dim in _QUERY_FLAGS:
        p.add_argument(f"--{dim}", dest=f"q_{dim}")

    p = sub.add_parser("serve", help="serve the search API and UI over HTTP")
    p.add_argument("--tagged", help="tagged-corpus file")
    p.add_argument("--index", help="feature-index file")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--ui-dir", help="directory with the built UI bundle")

    p = sub.add_parser("rules", help="rule file tooling")
    rules_sub = p.add_subparsers(dest="rules_command", required=True)
    rules_sub.add_parser("check", help="report coercion conflicts between rules")

    return parser


def _resolve_config(args) -> Config:
    config = load_config(args.config)
    for key in ("rules", "paradigms", "lexicon", "constraints", "stats", "features"):
        value = getattr(args, key, None)
        if value:
            setattr(config, key, Path(value))
    if args.ascii_fold:
        config.ascii_fold = True
    for key in ("tagged", "index"):
        value = getattr(args, key, None)
        if value:
            setattr(config, key, Path(value))
    if getattr(args, "host", None):
        config.host = args.host
    if getattr(args, "port", None):
        config.port = args.port
    if getattr(args, "ui_dir", None):
        config.ui_dir = Path(args.ui_dir)
    return config


def _emit(text: str, fold: bool) -> None:
    sys.stdout.write((ascii_fold(text) if fold else text) + "\n")


def _read_file(path: str | Path, what: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"{what} file not found: {p}")
    return p.read_text(encoding="utf-8")


def _prompt_choice(tokens, index, candidates) -> int:
    sys.stderr.write(f"\nambiguous token {tokens[index]!r} in: {' '.join(tokens)}\n")
    for i, parse in enumerate(candidates, start=1):
        sys.stderr.write(f"  {i}. {format_parse(parse)}\n")
    while True:
        sys.stderr.write(f"choose 1-{len(candidates)}: ")
        sys.stderr.flush()
        line = sys.stdin.readline()
        if not line:
            return 0
        try:
            pick = int(line.strip()) - 1
        except ValueError:
            continue
        if 0 <= pick < len(candidates):
            return pick


def _cmd_analyze(args, config: Config) -> int:
    wb = Workbench.load(config)
    parses = wb.analyzer.analyze(args.word)
    _emit(f"{args.word}: {len(parses)} parse{'s' if len(parses) != 1 else ''}", config.ascii_fold)
    for i, parse in enumerate(parses, start=1):
        _emit(f"  {i}. {format_parse(parse)}", config.ascii_fold)
    return 0


def _cmd_generate(args, config: Config) -> int:
    wb = Workbench.load(config)
    names = [] if args.morphemes == "-" else [m for m in args.morphemes.split(",") if m]
    entries = wb.lexicon.lookup(args.root)
    if not entries:
        sys.stderr.write(f"error: root {args.root!r} is not in the lexicon\n")
        return 1
    last_error: Exception | None = None
    for entry in entries:
        try:
            _emit(wb.analyzer.generate_word(entry, names), config.ascii_fold)
            return 0
        except (IllegalMorphotacticsError, NoRealizationError) as exc:
            last_error = exc
    sys.stderr.write(f"error: {last_error}\n")
    return 1


def _cmd_tag(args, config: Config) -> int:
    wb = Workbench.load(config)
    corpus_text = _read_file(args.corpus, "corpus")
    callback = _prompt_choice if args.interactive else None
    tagged, report, _ = tag_corpus(
        corpus_text,
        wb.analyzer,
        wb.constraints,
        wb.stats,
        interactive=callback,
        strict=args.strict,
    )
    out = save_tagged(tagged)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    sys.stderr.write(report.summary() + "\n")
    return 0


def _cmd_index(args, config: Config) -> int:
    tagged = load_tagged(_read_file(args.tagged, "tagged corpus"))
    index = build_index(tagged)
    out = save_index(index)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def _collect_query(args) -> Query:
    mapping = {}
    for dim in _QUERY_FLAGS:
        value = getattr(args, f"q_{dim}", None)
        if value is not None:
            mapping[dim] = value
    return Query.from_mapping(mapping)


def _cmd_search(args, config: Config) -> int:
    if config.tagged is None or config.index is None:
        sys.stderr.write("error: search needs --tagged and --index (or config entries)\n")
        return 2
    wb = Workbench.load(config)
    tagged = load_tagged(_read_file(config.tagged, "tagged corpus"))
    index = load_index(_read_file(config.index, "index"))
    query = _collect_query(args)
    result = search(query, index, tagged, wb.catalog)
    if isinstance(result, Conflict):
        sys.stderr.write("conflict: " + result.explanation + "\n")
        for dim, value in result.features:
            sys.stderr.write(f"  {dim}={value}\n")
        return 1
    if args.porcelain:
        for hit in result:
            cells = ",".join(str(t) for t in hit.matches)
            _emit(f"{hit.sentence_id}\t{cells}\t{hit.text}", config.ascii_fold)
        return 0
    _emit(f"{len(result)} sentence{'s' if len(result) != 1 else ''}", config.ascii_fold)
    by_id = {s.id: s for s in tagged.sentences}
    for hit in result:
        sentence = by_id[hit.sentence_id]
        text = sentence.text
        marked = []
        spans = [sentence.tokens[t] for t in hit.matches]
        last = 0
        for token, start, end in spans:
            marked.append(text[last:start])
            marked.append(f"**{text[start:end]}**")
            last = end
        marked.append(text[last:])
        _emit(f"  [{hit.sentence_id}] {''.join(marked)}", config.ascii_fold)
    return 0


def _cmd_serve(args, config: Config) -> int:
    from .server import serve  # deferred: keeps CLI import light

    if config.tagged is None or config.index is None:
        sys.stderr.write("error: serve needs --tagged and --index (or config entries)\n")
        return 2
    wb = Workbench.load(config)
    tagged = load_tagged(_read_file(config.tagged, "tagged corpus"))
    index = load_index(_read_file(config.index, "index"))
    serve(wb, tagged, index, config)
    return 0


def _cmd_rules(args, config: Config) -> int:
    text = _read_file(config.rules, "rules")
    alphabet, rules = parse_rule_file(text)
    conflicts = check_rule_conflicts(alphabet, rules)
    if not conflicts:
        _emit(f"{len(rules)} rules, no conflicts", config.ascii_fold)
        return 0
    for c in conflicts:
        _emit(c.message(), config.ascii_fold)
    return 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
        if args.command == "analyze":
            return _cmd_analyze(args, config)
        if args.command == "generate":
            return _cmd_generate(args, config)
        if args.command == "tag":
            return _cmd_tag(args, config)
        if args.command == "index":
            return _cmd_index(args, config)
        if args.command == "search":
            return _cmd_search(args, config)
        if args.command == "serve":
            return _cmd_serve(args, config)
        if args.command == "rules":
            return _cmd_rules(args, config)
        parser.error(f"unknown command {args.command!r}")
    except (ConfigError, RuleFileError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (
        UnknownWordError,
        IllegalMorphotacticsError,
        NoRealizationError,
        UnknownFeatureValueError,
        EmptyQueryError,
        SearchError,
        UnresolvedTokensError,
        corpus_io.PersistenceError,
        ValueError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
