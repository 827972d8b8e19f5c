"""Conjunctive feature search over the index, with implied-feature expansion.

Setting a nominal feature (case, possessive) implies category noun; setting
a verbal one (voice, sense, aspect, tense) implies category verb.  A query
whose implications clash is reported as a structured Conflict rather than
silently returning the empty set.  Nominative case has no overt morpheme:
it matches nominal-category bundles with no case value at all.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .corpus import ChosenAnalysis, FeatureIndex, TaggedCorpus
from .morphotactics import ParadigmAutomaton

QUERY_DIMENSIONS = (
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

_NOMINAL_CATEGORIES = frozenset({"noun", "adjective", "pronoun"})


class SearchError(ValueError):
    pass


class EmptyQueryError(SearchError):
    pass


class UnknownFeatureValueError(SearchError):
    def __init__(self, dimension: str, value: str):
        self.dimension = dimension
        self.value = value
        super().__init__(f"unknown value {value!r} for feature {dimension!r}")


class OutOfRangeError(SearchError):
    pass


class NoAnalysisError(SearchError):
    """The addressed token is punctuation or had no analysis."""


@dataclass(frozen=True)
class Query:
    agreement: str | None = None
    aspect: str | None = None
    case: str | None = None
    category: str | None = None
    possessive: str | None = None
    sense: str | None = None
    tense: str | None = None
    voice: str | None = None
    suffix: str | None = None
    root: str | None = None

    def set_fields(self) -> list[tuple[str, str]]:
        return [
            (dim, getattr(self, dim))
            for dim in QUERY_DIMENSIONS
            if getattr(self, dim) is not None
        ]

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "Query":
        unknown = set(mapping) - set(QUERY_DIMENSIONS)
        if unknown:
            raise SearchError(f"unknown query fields {sorted(unknown)}")
        q = cls(**mapping)
        if not q.set_fields():
            raise EmptyQueryError("a query must set at least one feature")
        return q


@dataclass(frozen=True)
class Conflict:
    """Feature pairs whose category implications cannot co-occur in one word."""

    features: tuple[tuple[str, str], ...]
    explanation: str


@dataclass(frozen=True)
class SentenceHit:
    sentence_id: int
    text: str
    matches: tuple[int, ...]


@dataclass(frozen=True)
class AnalysisView:
    """Labeled analysis of one token, in display order."""

    lexical_gloss: str
    fields: tuple[tuple[str, str], ...]


_VIEW_ORDER = (
    "sense",
    "voice",
    "agreement",
    "aspect",
    "case",
    "possessive",
    "tense",
)


class FeatureCatalog:
    """Dimension vocabularies, display labels and the implication table.

    An implication maps one (dimension, value) to the set of categories a
    matching word could still have; 'nominal' in the data file stands for
    the noun/adjective/pronoun class.
    """

    def __init__(
        self,
        values: dict[str, list[str]],
        labels: dict[tuple[str, str], str],
        implications: dict[tuple[str, str], frozenset[str]],
        suffix_names: tuple[str, ...],
    ):
        self.values = values
        self.labels = labels
        self.implications = implications
        self.suffix_names = suffix_names

    def is_valid(self, dimension: str, value: str) -> bool:
        if dimension == "root":
            return True
        if dimension == "suffix":
            return value in self.suffix_names
        return value in self.values.get(dimension, ())

    def check(self, dimension: str, value: str) -> None:
        if not self.is_valid(dimension, value):
            raise UnknownFeatureValueError(dimension, value)

    def label(self, dimension: str, value: str) -> str:
        return self.labels.get((dimension, value), value)

    def implied_categories(self, dimension: str, value: str) -> frozenset[str] | None:
        return self.implications.get((dimension, value))


def load_catalog(text: str, automaton: ParadigmAutomaton) -> FeatureCatalog:
    """Parse the feature catalog TSV and attach the live suffix inventory."""
    values: dict[str, list[str]] = {}
    labels: dict[tuple[str, str], str] = {}
    implications: dict[tuple[str, str], frozenset[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ValueError(f"line {lineno}: expected dimension, implies, value, label")
        dim, implies, value, label = cols
        values.setdefault(dim, []).append(value)
        labels[(dim, value)] = label
        if implies == "-":
            continue
        if implies == "nominal":
            implications[(dim, value)] = _NOMINAL_CATEGORIES
        else:
            implications[(dim, value)] = frozenset({implies})
    return FeatureCatalog(
        values=values,
        labels=labels,
        implications=implications,
        suffix_names=tuple(sorted(automaton.inventory)),
    )


def _implied_side(categories: frozenset[str]) -> str:
    if len(categories) == 1:
        return f"category={next(iter(categories))}"
    return "a category among " + "/".join(sorted(categories))


def implied_features(query: Query, catalog: FeatureCatalog) -> Query | Conflict:
    """Expand implied categories, or report the clash as a Conflict.

    Every implication narrows the set of categories a matching word could
    have; an empty intersection is a Conflict, a singleton fills in the
    category field.  Idempotent: expanding an expanded query changes nothing.
    """
    contributors: list[tuple[str, str, frozenset[str]]] = []
    for dim, value in query.set_fields():
        if dim in ("category", "suffix", "root"):
            continue
        implied = catalog.implied_categories(dim, value)
        if implied is not None:
            contributors.append((dim, value, implied))
    allowed: frozenset[str] | None = None
    for _, _, implied in contributors:
        allowed = implied if allowed is None else allowed & implied
    if query.category is not None:
        explicit = frozenset({query.category})
        contributors.append(("category", query.category, explicit))
        allowed = explicit if allowed is None else allowed & explicit
    if allowed is not None and not allowed:
        pairs = tuple((dim, value) for dim, value, _ in contributors)
        sides = []
        for dim, value, implied in contributors:
            if dim == "category":
                sides.append(f"category={value} is set explicitly")
            else:
                sides.append(f"{dim}={value} implies {_implied_side(implied)}")
        explanation = (
            " but ".join(sides) + "; no single word form can satisfy all of them"
        )
        return Conflict(features=pairs, explanation=explanation)
    if allowed is not None and len(allowed) == 1 and query.category is None:
        return replace(query, category=next(iter(allowed)))
    return query


def _satisfies(chosen: ChosenAnalysis, expanded: Query) -> bool:
    for dim, value in expanded.set_fields():
        if dim == "suffix":
            if not chosen.has_suffix(value):
                return False
        elif dim == "case" and value == "nominative":
            if chosen.category not in _NOMINAL_CATEGORIES or chosen.value_of("case") is not None:
                return False
        else:
            if chosen.value_of(dim) != value:
                return False
    return True


def _validate(query: Query, catalog: FeatureCatalog) -> None:
    for dim, value in query.set_fields():
        catalog.check(dim, value)


def linear_scan(
    query: Query, tagged: TaggedCorpus, catalog: FeatureCatalog, *, expand: bool = True
) -> list[SentenceHit] | Conflict:
    """Reference search: test every chosen bundle directly, no index."""
    _validate(query, catalog)
    expanded = implied_features(query, catalog) if expand else query
    if isinstance(expanded, Conflict):
        return expanded
    hits: list[SentenceHit] = []
    for sentence, row in zip(tagged.sentences, tagged.analyses):
        matches = [
            tid
            for tid, chosen in enumerate(row)
            if chosen is not None and _satisfies(chosen, expanded)
        ]
        if matches:
            hits.append(SentenceHit(sentence.id, sentence.text, tuple(matches)))
    return hits


def search(
    query: Query,
    index: FeatureIndex,
    tagged: TaggedCorpus,
    catalog: FeatureCatalog,
) -> list[SentenceHit] | Conflict:
    """Index-backed conjunctive search over the tagged corpus.

    Posting lists for every set field are intersected; candidates are then
    verified against the chosen bundles, which also gives nominative case
    (no posting list of its own) its absent-case semantics.
    """
    _validate(query, catalog)
    expanded = implied_features(query, catalog)
    if isinstance(expanded, Conflict):
        return expanded

    posting_sets: list[set[tuple[int, int]]] = []
    for dim, value in expanded.set_fields():
        if dim == "case" and value == "nominative":
            base: set[tuple[int, int]] = set()
            for cat in _NOMINAL_CATEGORIES:
                base.update(index.get("category", cat))
            posting_sets.append(base)
        else:
            posting_sets.append(set(index.get(dim, value)))
    candidates = set.intersection(*posting_sets) if posting_sets else set()

    by_sentence: dict[int, list[int]] = {}
    sentence_by_id = {s.id: i for i, s in enumerate(tagged.sentences)}
    for sid, tid in sorted(candidates):
        row_index = sentence_by_id.get(sid)
        if row_index is None:
            continue
        chosen = tagged.analyses[row_index][tid]
        if chosen is not None and _satisfies(chosen, expanded):
            by_sentence.setdefault(sid, []).append(tid)
    return [
        SentenceHit(sid, tagged.sentences[sentence_by_id[sid]].text, tuple(sorted(tids)))
        for sid, tids in sorted(by_sentence.items())
    ]


def analysis_view(
    sentence_id: int,
    token_index: int,
    tagged: TaggedCorpus,
    automaton: ParadigmAutomaton,
    catalog: FeatureCatalog,
) -> AnalysisView:
    """The labeled display record for one analyzed token.

    Fields appear as Root, Category, then the present dimensions in the
    fixed pane order; values carry display labels.
    """
    sentence_by_id = {s.id: i for i, s in enumerate(tagged.sentences)}
    row_index = sentence_by_id.get(sentence_id)
    if row_index is None:
        raise OutOfRangeError(f"no sentence {sentence_id}")
    row = tagged.analyses[row_index]
    if not 0 <= token_index < len(row):
        raise OutOfRangeError(f"no token {token_index} in sentence {sentence_id}")
    chosen = row[token_index]
    if chosen is None:
        raise NoAnalysisError("token has no analysis (punctuation or unknown word)")

    gloss_parts = [chosen.root]
    for name in chosen.morphemes:
        m = automaton.inventory.get(name)
        form = m.form if m is not None else f"+{name}"
        if form != "+":
            gloss_parts.append(form)
    fields: list[tuple[str, str]] = [
        ("Root", chosen.root),
        ("Category", catalog.label("category", chosen.category)),
    ]
    for dim in _VIEW_ORDER:
        value = chosen.value_of(dim)
        if value is not None:
            fields.append((dim.capitalize(), catalog.label(dim, value)))
    return AnalysisView(lexical_gloss="".join(gloss_parts), fields=tuple(fields))
