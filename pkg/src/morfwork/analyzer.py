"""Word-level morphological analysis and generation.

Analysis seeds candidate roots from the lexicon, walks the paradigm
automaton for each candidate, and keeps exactly those suffix paths whose
lexical string aligns with the surface word under the two-level rules.
Generation runs the same machinery forward from a root and morpheme names.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import Lexicon, RootEntry
from .morphotactics import Morpheme, ParadigmAutomaton, build_lexical
from .phonology import LexicalString, PhonologyEngine

SCALAR_DIMENSIONS = (
    "agreement",
    "aspect",
    "case",
    "possessive",
    "sense",
    "tense",
    "voice",
)


class UnknownWordError(ValueError):
    """No parse exists: the word is out of lexicon or outside the rule set."""

    def __init__(self, word: str):
        self.word = word
        super().__init__(f"no analysis for {word!r}")


class IllegalMorphotacticsError(ValueError):
    """The requested morpheme sequence is not accepted by the paradigm."""


class NoRealizationError(ValueError):
    """The phonology admits no surface string for the lexical form."""


class AmbiguousRealizationError(ValueError):
    """The phonology admits more than one surface string (rule bug)."""


def casefold_turkish(text: str) -> str:
    """Lowercase with the Turkish dotted/dotless i distinction preserved."""
    return text.replace("İ", "i").replace("I", "ı").lower()


@dataclass(frozen=True)
class FeatureBundle:
    """One reading's feature values: category and root always, scalars optional."""

    category: str
    root: str
    suffixes: tuple[str, ...]
    agreement: str | None = None
    aspect: str | None = None
    case: str | None = None
    possessive: str | None = None
    sense: str | None = None
    tense: str | None = None
    voice: str | None = None

    def scalar(self, dimension: str) -> str | None:
        if dimension == "category":
            return self.category
        if dimension == "root":
            return self.root
        return getattr(self, dimension)

    def present_scalars(self) -> list[tuple[str, str]]:
        out = []
        for dim in SCALAR_DIMENSIONS:
            value = getattr(self, dim)
            if value is not None:
                out.append((dim, value))
        return out


@dataclass(frozen=True)
class Parse:
    root: RootEntry
    morphemes: tuple[Morpheme, ...]
    lexical: LexicalString
    features: FeatureBundle
    gloss: str

    def morpheme_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.morphemes)


def _bundle(entry: RootEntry, morphemes: tuple[Morpheme, ...]) -> FeatureBundle:
    values: dict[str, str] = {}
    for m in morphemes:
        for dim, value in m.features:
            if dim in values:
                raise AssertionError(f"dimension {dim} assigned twice in {entry.root}")
            values[dim] = value
    return FeatureBundle(
        category=entry.category,
        root=entry.root,
        suffixes=tuple(m.name for m in morphemes),
        **values,
    )


class Analyzer:
    """Pure analysis/generation facade over immutable loaded resources."""

    def __init__(self, lexicon: Lexicon, automaton: ParadigmAutomaton, engine: PhonologyEngine):
        self.lexicon = lexicon
        self.automaton = automaton
        self.engine = engine

    def analyze(self, word: str) -> list[Parse]:
        """All parses of a surface word, in a fixed documented order.

        Parses are sorted by root length (longest first), then morpheme
        count, then gloss, then category.  Raises UnknownWordError when no
        parse exists and ValueError on empty input.
        """
        folded = casefold_turkish(word.strip())
        if not folded:
            raise ValueError("cannot analyze an empty word")
        parses: list[Parse] = []
        engine = self.engine
        for entry in self.lexicon.candidate_roots(folded):
            states = engine.recognition_extend(
                engine.recognition_start(), tuple(entry.root), folded
            )
            if not states:
                continue
            self._suffix_walk(entry, self.automaton.start(entry.category), states, (), folded, parses)
        if not parses:
            raise UnknownWordError(word)
        parses.sort(
            key=lambda p: (
                -len(p.root.root),
                len(p.morphemes),
                p.gloss,
                p.root.category,
                p.morpheme_names(),
            )
        )
        return parses

    def _suffix_walk(self, entry, astate, states, morphemes, surface, parses) -> None:
        if self.automaton.accepting(astate) and self.engine.recognition_accepts(states, surface):
            lexical = build_lexical(entry.root, morphemes)
            parses.append(
                Parse(
                    root=entry,
                    morphemes=morphemes,
                    lexical=lexical,
                    features=_bundle(entry, morphemes),
                    gloss=lexical.gloss(),
                )
            )
        for m in self.automaton.successors(astate):
            nstates = self.engine.recognition_extend(
                states, ("+",) + m.form_symbols(), surface
            )
            if not nstates:
                continue
            self._suffix_walk(
                entry,
                self.automaton.step(astate, m.name),
                nstates,
                morphemes + (m,),
                surface,
                parses,
            )

    def generate_word(self, root: RootEntry, morpheme_names: list[str] | tuple[str, ...]) -> str:
        """The unique surface realization of root + named morphemes."""
        state = self.automaton.start(root.category)
        morphemes: list[Morpheme] = []
        try:
            for name in morpheme_names:
                state = self.automaton.step(state, name)
                morphemes.append(self.automaton.inventory[name])
        except Exception as exc:
            raise IllegalMorphotacticsError(str(exc)) from exc
        if not self.automaton.accepting(state):
            raise IllegalMorphotacticsError(
                f"{'+'.join(morpheme_names)} stops before a mandatory slot"
            )
        lexical = build_lexical(root.root, tuple(morphemes))
        surfaces = self.engine.generate(lexical)
        if not surfaces:
            raise NoRealizationError(f"no surface realization for {lexical}")
        if len(surfaces) > 1:
            raise AmbiguousRealizationError(
                f"{lexical} realizes as all of {sorted(surfaces)}"
            )
        return next(iter(surfaces))

    def ambiguity_degree(self, word: str) -> int:
        """Number of parses; 0 for unknown words."""
        try:
            return len(self.analyze(word))
        except UnknownWordError:
            return 0
