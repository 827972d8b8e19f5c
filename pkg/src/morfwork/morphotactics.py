"""Suffix-ordering automata for the nominal and verbal paradigms.

A paradigm is an ordered chain of slots, each optional or mandatory, and a
morpheme inventory assigns every suffix to one slot together with the
grammatical features it contributes.  Nouns, adjectives and pronouns share
the nominal paradigm; verbs use the verbal one.  Walking the automaton can
never revisit a slot, and no path may assign the same feature dimension
twice, so traversal always terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .phonology import BOUNDARY, LexicalString

# Feature dimensions a slot is allowed to assign.  The plural, relative and
# question slots contribute no scalar dimension; plural and relative readings
# stay searchable through the suffix listing.
SLOT_FEATURE_DIMENSIONS: dict[str, frozenset[str]] = {
    "plural": frozenset(),
    "possessive": frozenset({"possessive"}),
    "case": frozenset({"case"}),
    "relative": frozenset(),
    "voice": frozenset({"voice"}),
    "negation": frozenset({"sense"}),
    "modal": frozenset({"sense"}),
    "maintense": frozenset({"aspect"}),
    "question": frozenset(),
    "secondtense": frozenset({"tense"}),
    "agreement": frozenset({"agreement"}),
}

CATEGORY_PARADIGM = {
    "noun": "nominal",
    "adjective": "nominal",
    "pronoun": "nominal",
    "verb": "verbal",
}


class ParadigmError(ValueError):
    """Raised for malformed paradigm files or illegal suffix paths."""


@dataclass(frozen=True)
class Slot:
    name: str
    optional: bool


@dataclass(frozen=True)
class Morpheme:
    """One suffix: its paradigm slot, lexical material and feature payload.

    The lexical form always starts with the boundary '+'; a bare '+' marks a
    zero morpheme that contributes no segmental material.
    """

    name: str
    slot: str
    form: str
    features: tuple[tuple[str, str], ...]

    def form_symbols(self) -> tuple[str, ...]:
        return tuple(self.form[1:])


@dataclass(frozen=True)
class State:
    """Automaton position: paradigm, next fillable slot, dimensions used so far."""

    paradigm: str
    slot_index: int
    used_dims: frozenset[str]


class ParadigmAutomaton:
    """Immutable slot automaton plus morpheme inventory."""

    def __init__(self, paradigms: dict[str, tuple[Slot, ...]], morphemes: list[Morpheme]):
        self.paradigms = paradigms
        self.inventory: dict[str, Morpheme] = {}
        self._slot_location: dict[str, tuple[str, int]] = {}
        for pname, slots in paradigms.items():
            for i, slot in enumerate(slots):
                if slot.name in self._slot_location:
                    raise ParadigmError(f"duplicate slot name {slot.name!r}")
                self._slot_location[slot.name] = (pname, i)
        self._slot_morphemes: dict[tuple[str, int], list[Morpheme]] = {}
        for m in morphemes:
            if m.name in self.inventory:
                raise ParadigmError(f"duplicate morpheme name {m.name!r}")
            if m.slot not in self._slot_location:
                raise ParadigmError(f"unknown slot {m.slot!r} for morpheme {m.name}")
            owned = SLOT_FEATURE_DIMENSIONS.get(m.slot, frozenset())
            for dim, _ in m.features:
                if dim not in owned:
                    raise ParadigmError(
                        f"morpheme {m.name} assigns {dim!r}, not owned by slot {m.slot!r}"
                    )
            self.inventory[m.name] = m
            self._slot_morphemes.setdefault(self._slot_location[m.slot], []).append(m)

    def start(self, category: str) -> State:
        paradigm = CATEGORY_PARADIGM.get(category)
        if paradigm is None or paradigm not in self.paradigms:
            raise ParadigmError(f"no paradigm for category {category!r}")
        return State(paradigm, 0, frozenset())

    def accepting(self, state: State) -> bool:
        slots = self.paradigms[state.paradigm]
        return all(s.optional for s in slots[state.slot_index:])

    def successors(self, state: State) -> list[Morpheme]:
        """Morphemes legal next, including after skipping optional slots."""
        slots = self.paradigms[state.paradigm]
        out: list[Morpheme] = []
        for j in range(state.slot_index, len(slots)):
            for m in self._slot_morphemes.get((state.paradigm, j), []):
                dims = {d for d, _ in m.features}
                if dims & state.used_dims:
                    continue
                out.append(m)
            if not slots[j].optional:
                break
        return out

    def step(self, state: State, morpheme_name: str) -> State:
        m = self.inventory.get(morpheme_name)
        if m is None:
            raise ParadigmError(f"unknown morpheme {morpheme_name!r}")
        loc = self._slot_location[m.slot]
        if loc[0] != state.paradigm:
            raise ParadigmError(
                f"morpheme {m.name} belongs to the {loc[0]} paradigm, not {state.paradigm}"
            )
        j = loc[1]
        if j < state.slot_index:
            raise ParadigmError(f"slot {m.slot!r} already passed")
        slots = self.paradigms[state.paradigm]
        for k in range(state.slot_index, j):
            if not slots[k].optional:
                raise ParadigmError(f"cannot skip mandatory slot {slots[k].name!r}")
        dims = frozenset(d for d, _ in m.features)
        if dims & state.used_dims:
            raise ParadigmError(f"morpheme {m.name} reassigns a feature dimension")
        return State(state.paradigm, j + 1, state.used_dims | dims)

    def enumerate_paths(self, category: str, max_suffixes: int) -> list[tuple[Morpheme, ...]]:
        """Every accepted morpheme path of length <= max_suffixes, in slot order."""
        paths: list[tuple[Morpheme, ...]] = []

        def walk(state: State, acc: tuple[Morpheme, ...]) -> None:
            if self.accepting(state):
                paths.append(acc)
            if len(acc) >= max_suffixes:
                return
            for m in self.successors(state):
                walk(self.step(state, m.name), acc + (m,))

        walk(self.start(category), ())
        return paths


def build_lexical(root: str, morphemes: tuple[Morpheme, ...] | list[Morpheme]) -> LexicalString:
    """Attach suffix forms to a root, recording the morpheme spans."""
    symbols: list[str] = list(root)
    spans: list[tuple[int, int, str]] = [(0, len(root), root)]
    for m in morphemes:
        symbols.append(BOUNDARY)
        start = len(symbols)
        symbols.extend(m.form_symbols())
        spans.append((start, len(symbols), m.name))
    return LexicalString(symbols=tuple(symbols), spans=tuple(spans))


def enumerate_lexical_forms(entry, max_suffixes: int, automaton: ParadigmAutomaton) -> list[LexicalString]:
    """All lexical forms for a root entry with at most max_suffixes morphemes.

    Complete and duplicate-free; used as the brute-force oracle for the
    analyzer.  `entry` is any object with `root` and `category` attributes.
    """
    if max_suffixes < 0:
        raise ValueError("max_suffixes must be >= 0")
    paths = automaton.enumerate_paths(entry.category, max_suffixes)
    return [build_lexical(entry.root, path) for path in paths]


def load_paradigms(text: str) -> ParadigmAutomaton:
    """Parse a paradigm file: PARADIGM slot chains plus MORPHEME lines."""
    paradigms: dict[str, tuple[Slot, ...]] = {}
    morphemes: list[Morpheme] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "PARADIGM":
            if len(parts) < 2 or not parts[1].endswith(":"):
                raise ParadigmError(f"line {lineno}: expected 'PARADIGM name: slots...'")
            name = parts[1][:-1]
            if name in paradigms:
                raise ParadigmError(f"line {lineno}: duplicate paradigm {name!r}")
            slots = []
            for spec in parts[2:]:
                optional = spec.endswith("?")
                slots.append(Slot(spec.rstrip("?"), optional))
            paradigms[name] = tuple(slots)
        elif parts[0] == "MORPHEME":
            if len(parts) < 4:
                raise ParadigmError(
                    f"line {lineno}: expected 'MORPHEME name slot form [dim=value...]'"
                )
            name, slot, form = parts[1], parts[2], parts[3]
            if not form.startswith("+"):
                raise ParadigmError(f"line {lineno}: lexical form must start with '+'")
            features = []
            for fv in parts[4:]:
                if "=" not in fv:
                    raise ParadigmError(f"line {lineno}: malformed feature {fv!r}")
                dim, value = fv.split("=", 1)
                features.append((dim, value))
            morphemes.append(Morpheme(name, slot, form, tuple(features)))
        else:
            raise ParadigmError(f"line {lineno}: unknown directive {parts[0]!r}")
    if not paradigms:
        raise ParadigmError("no paradigms declared")
    return ParadigmAutomaton(paradigms, morphemes)
