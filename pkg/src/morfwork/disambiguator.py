"""Sentence-context disambiguation of ambiguous analyses.

Resolution pipeline per token: pass through unambiguous analyses, apply
window constraints in priority order (each firing must keep at least one
candidate), fall back to root-frequency statistics, then to an interactive
callback when provided; remaining ties are flagged unresolved and keep the
first candidate so every token still carries one chosen parse downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .analyzer import Analyzer, Parse, UnknownWordError, casefold_turkish
from .corpus import ChosenAnalysis, Sentence, TaggedCorpus, is_word_token, tokenize

_FEATURE_DIMENSIONS = (
    "agreement",
    "aspect",
    "case",
    "category",
    "possessive",
    "root",
    "sense",
    "tense",
    "voice",
)

InteractiveCallback = Callable[[Sequence[str], int, Sequence[Parse]], int]


class ConstraintFileError(ValueError):
    """Raised for malformed constraint files."""


class UnresolvedTokensError(ValueError):
    """Strict tagging found tokens it could not resolve."""

    def __init__(self, listing: list[str]):
        self.listing = listing
        super().__init__(
            "unresolved tokens: " + "; ".join(listing)
        )


@dataclass(frozen=True)
class SlotPattern:
    """Conjunction of tests evaluated against one token and a candidate parse."""

    word: str | None
    features: tuple[tuple[str, str], ...]  # (dimension, value) equality tests
    suffixes: tuple[str, ...]  # morpheme names required in the parse

    def matches_parse(self, parse: Parse) -> bool:
        for dim, value in self.features:
            if parse.features.scalar(dim) != value:
                return False
        for name in self.suffixes:
            if name not in parse.features.suffixes:
                return False
        return True

    def matches_token(self, token: str, parses: Sequence[Parse]) -> bool:
        if self.word is not None and casefold_turkish(token) != casefold_turkish(self.word):
            return False
        if not self.features and not self.suffixes:
            return True
        return any(self.matches_parse(p) for p in parses)


@dataclass(frozen=True)
class Constraint:
    name: str
    priority: int
    action: str  # "select" or "discard"
    window: tuple[SlotPattern, ...]
    target_index: int


@dataclass(frozen=True)
class RootStats:
    """Root-unigram occurrence counts compiled from previously tagged text."""

    counts: dict[str, int]

    def count(self, root: str) -> int:
        return self.counts.get(root, 0)


@dataclass
class TokenAnalysis:
    token: str
    candidates: tuple[Parse, ...]
    chosen: int | None
    resolved_by: str | None


@dataclass(frozen=True)
class TagReport:
    tokens: int
    words: int
    unambiguous: int
    constraint: int
    statistics: int
    interactive: int
    unresolved: int
    unknown: int

    @property
    def unresolved_rate(self) -> float:
        analyzed = self.words - self.unknown
        return self.unresolved / analyzed if analyzed else 0.0

    def summary(self) -> str:
        return (
            f"tokens={self.tokens} words={self.words} unambiguous={self.unambiguous} "
            f"constraint={self.constraint} statistics={self.statistics} "
            f"interactive={self.interactive} unresolved={self.unresolved} "
            f"unknown={self.unknown} unresolved_rate={self.unresolved_rate:.3f}"
        )


def load_stats(text: str) -> RootStats:
    """Parse a TSV of root<TAB>count lines."""
    counts: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"line {lineno}: expected root<TAB>count")
        try:
            n = int(cols[1])
        except ValueError:
            raise ValueError(f"line {lineno}: bad count {cols[1]!r}") from None
        if n < 0:
            raise ValueError(f"line {lineno}: negative count")
        counts[cols[0].strip()] = n
    return RootStats(counts=counts)


# ---------------------------------------------------------------------------
# Constraint DSL


def _parse_slot(tokens: list[str], where: str) -> tuple[SlotPattern, bool]:
    is_target = False
    if tokens and tokens[0] == "TARGET:":
        is_target = True
        tokens = tokens[1:]
    word = None
    features: list[tuple[str, str]] = []
    suffixes: list[str] = []
    for test in tokens:
        if test.startswith("word="):
            literal = test[len("word="):]
            if not (literal.startswith('"') and literal.endswith('"') and len(literal) >= 2):
                raise ConstraintFileError(f"{where}: word test needs a quoted literal, got {test!r}")
            word = literal[1:-1]
        elif test.startswith("suffix~"):
            name = test[len("suffix~"):]
            if not name:
                raise ConstraintFileError(f"{where}: empty suffix test")
            suffixes.append(name)
        elif "=" in test:
            dim, value = test.split("=", 1)
            if dim not in _FEATURE_DIMENSIONS:
                raise ConstraintFileError(f"{where}: unknown feature dimension {dim!r}")
            if not value:
                raise ConstraintFileError(f"{where}: empty value in {test!r}")
            features.append((dim, value))
        else:
            raise ConstraintFileError(f"{where}: malformed test {test!r}")
    return SlotPattern(word=word, features=tuple(features), suffixes=tuple(suffixes)), is_target


def load_constraints(text: str) -> list[Constraint]:
    """Parse the constraint DSL; result is sorted by priority, highest first."""
    statements: list[tuple[int, list[str]]] = []
    current: list[str] = []
    start_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for piece in line.replace("[", " [ ").replace("]", " ] ").replace(";", " ; ").split():
            if not current:
                start_line = lineno
            if piece == ";":
                if current:
                    statements.append((start_line, current))
                    current = []
            else:
                current.append(piece)
    if current:
        raise ConstraintFileError(f"line {start_line}: statement is missing ';'")

    constraints: list[Constraint] = []
    priorities: set[int] = set()
    for lineno, toks in statements:
        where = f"line {lineno}"
        if len(toks) < 5 or toks[0] != "CONSTRAINT" or toks[2] != "PRIORITY":
            raise ConstraintFileError(
                f"{where}: expected 'CONSTRAINT name PRIORITY n SELECT|DISCARD [slots...]'"
            )
        name = toks[1]
        try:
            priority = int(toks[3])
        except ValueError:
            raise ConstraintFileError(f"{where}: bad priority {toks[3]!r}") from None
        if priority in priorities:
            raise ConstraintFileError(f"{where}: duplicate priority {priority}")
        priorities.add(priority)
        action = toks[4].lower()
        if action not in ("select", "discard"):
            raise ConstraintFileError(f"{where}: unknown action {toks[4]!r}")
        slots: list[SlotPattern] = []
        target_index = None
        i = 5
        while i < len(toks):
            if toks[i] != "[":
                raise ConstraintFileError(f"{where}: expected '[' to open a slot pattern")
            j = i + 1
            depth_tokens = []
            while j < len(toks) and toks[j] != "]":
                depth_tokens.append(toks[j])
                j += 1
            if j >= len(toks):
                raise ConstraintFileError(f"{where}: unclosed slot pattern")
            pattern, is_target = _parse_slot(depth_tokens, where)
            if is_target:
                if target_index is not None:
                    raise ConstraintFileError(f"{where}: multiple TARGET slots")
                target_index = len(slots)
            slots.append(pattern)
            i = j + 1
        if not 1 <= len(slots) <= 3:
            raise ConstraintFileError(f"{where}: window must have 1 to 3 slots")
        if target_index is None:
            raise ConstraintFileError(f"{where}: no TARGET slot")
        constraints.append(
            Constraint(
                name=name,
                priority=priority,
                action=action,
                window=tuple(slots),
                target_index=target_index,
            )
        )
    constraints.sort(key=lambda c: -c.priority)
    return constraints


# ---------------------------------------------------------------------------
# Tagging


def tag_sentence(
    tokens: Sequence[str],
    analyzer: Analyzer,
    constraints: Sequence[Constraint],
    stats: RootStats,
    interactive: Optional[InteractiveCallback] = None,
) -> list[TokenAnalysis]:
    """Disambiguate one tokenized sentence.

    Deterministic without an interactive callback; the chosen parse is always
    one of the analyzer's candidates.
    """
    analyses: list[TokenAnalysis] = []
    remaining: list[list[int]] = []
    for token in tokens:
        if not is_word_token(token):
            analyses.append(TokenAnalysis(token, (), None, "punctuation"))
            remaining.append([])
            continue
        try:
            candidates = tuple(analyzer.analyze(token))
        except UnknownWordError:
            analyses.append(TokenAnalysis(token, (), None, "unknown"))
            remaining.append([])
            continue
        if len(candidates) == 1:
            analyses.append(TokenAnalysis(token, candidates, 0, "unambiguous"))
            remaining.append([0])
        else:
            analyses.append(TokenAnalysis(token, candidates, None, None))
            remaining.append(list(range(len(candidates))))

    for constraint in constraints:
        for t in range(len(tokens)):
            if len(remaining[t]) <= 1:
                continue
            base = t - constraint.target_index
            if base < 0 or base + len(constraint.window) > len(tokens):
                continue
            window_ok = True
            for offset, pattern in enumerate(constraint.window):
                if offset == constraint.target_index:
                    continue
                pos = base + offset
                parses = [analyses[pos].candidates[i] for i in remaining[pos]]
                if not pattern.matches_token(tokens[pos], parses):
                    window_ok = False
                    break
            if not window_ok:
                continue
            target_pattern = constraint.window[constraint.target_index]
            if target_pattern.word is not None and casefold_turkish(
                tokens[t]
            ) != casefold_turkish(target_pattern.word):
                continue
            old = remaining[t]
            if constraint.action == "select":
                new = [i for i in old if target_pattern.matches_parse(analyses[t].candidates[i])]
            else:
                new = [i for i in old if not target_pattern.matches_parse(analyses[t].candidates[i])]
            if not new or len(new) == len(old):
                continue
            remaining[t] = new
            if len(new) == 1:
                analyses[t].chosen = new[0]
                analyses[t].resolved_by = f"constraint:{constraint.name}"

    for t, ta in enumerate(analyses):
        if len(remaining[t]) <= 1:
            continue
        candidates = [ta.candidates[i] for i in remaining[t]]
        best = max(stats.count(p.features.root) for p in candidates)
        if best > 0:
            winner_root = next(
                p.features.root for p in candidates if stats.count(p.features.root) == best
            )
            for i in remaining[t]:
                if ta.candidates[i].features.root == winner_root:
                    ta.chosen = i
                    ta.resolved_by = "statistics"
                    remaining[t] = [i]
                    break
            continue
        if interactive is not None:
            pick = interactive(tokens, t, candidates)
            if not 0 <= pick < len(candidates):
                raise ValueError(f"interactive callback returned bad index {pick}")
            ta.chosen = remaining[t][pick]
            ta.resolved_by = "interactive"
            remaining[t] = [ta.chosen]
        else:
            ta.chosen = remaining[t][0]
            ta.resolved_by = "unresolved"
    return analyses


def chosen_analysis(ta: TokenAnalysis) -> ChosenAnalysis | None:
    """Serialize the chosen parse of a token, or None for punctuation/unknown."""
    if ta.chosen is None:
        return None
    parse = ta.candidates[ta.chosen]
    return ChosenAnalysis(
        root=parse.features.root,
        category=parse.features.category,
        morphemes=parse.morpheme_names(),
        features=tuple(parse.features.present_scalars()),
    )


def tag_corpus(
    corpus_text: str,
    analyzer: Analyzer,
    constraints: Sequence[Constraint],
    stats: RootStats,
    interactive: Optional[InteractiveCallback] = None,
    strict: bool = False,
) -> tuple[TaggedCorpus, TagReport, list[list[TokenAnalysis]]]:
    """Tag a one-sentence-per-line corpus.

    Returns the tagged corpus, a resolution report, and the full per-token
    analyses.  The unresolved rate counts unresolved tokens against all word
    tokens that produced at least one candidate.  With strict=True and no
    interactive callback, any unresolved token aborts with a listing.
    """
    sentences: list[Sentence] = []
    rows: list[tuple[ChosenAnalysis | None, ...]] = []
    all_analyses: list[list[TokenAnalysis]] = []
    counts = {
        "unambiguous": 0,
        "constraint": 0,
        "statistics": 0,
        "interactive": 0,
        "unresolved": 0,
        "unknown": 0,
    }
    tokens_total = 0
    words_total = 0
    unresolved_listing: list[str] = []

    sid = 0
    for raw_line in corpus_text.splitlines():
        line = raw_line.strip()
        if not line:
            continue
        token_spans = tuple(tokenize(line))
        token_texts = [t for t, _, _ in token_spans]
        analyses = tag_sentence(token_texts, analyzer, constraints, stats, interactive)
        for ta in analyses:
            tokens_total += 1
            if ta.resolved_by == "punctuation":
                continue
            words_total += 1
            if ta.resolved_by == "unknown":
                counts["unknown"] += 1
            elif ta.resolved_by == "unambiguous":
                counts["unambiguous"] += 1
            elif ta.resolved_by and ta.resolved_by.startswith("constraint:"):
                counts["constraint"] += 1
            elif ta.resolved_by == "statistics":
                counts["statistics"] += 1
            elif ta.resolved_by == "interactive":
                counts["interactive"] += 1
            elif ta.resolved_by == "unresolved":
                counts["unresolved"] += 1
                unresolved_listing.append(f"sentence {sid}: {ta.token!r}")
        sentences.append(Sentence(id=sid, text=line, tokens=token_spans))
        rows.append(tuple(chosen_analysis(ta) for ta in analyses))
        all_analyses.append(analyses)
        sid += 1

    if strict and unresolved_listing:
        raise UnresolvedTokensError(unresolved_listing)

    report = TagReport(
        tokens=tokens_total,
        words=words_total,
        unambiguous=counts["unambiguous"],
        constraint=counts["constraint"],
        statistics=counts["statistics"],
        interactive=counts["interactive"],
        unresolved=counts["unresolved"],
        unknown=counts["unknown"],
    )
    return (
        TaggedCorpus(sentences=tuple(sentences), analyses=tuple(rows)),
        report,
        all_analyses,
    )
