"""Root-word lexicon: entries with category and phonological exception flags."""

from __future__ import annotations

from dataclasses import dataclass

CATEGORIES = ("noun", "adjective", "verb", "pronoun")
KNOWN_FLAGS = frozenset({"final-stop-softens", "harmony-exception"})


class LexiconError(ValueError):
    """Raised for malformed lexicon files."""


@dataclass(frozen=True)
class RootEntry:
    root: str
    category: str
    flags: frozenset[str]
    gloss: str


class Lexicon:
    """Immutable root store with prefix-based candidate lookup."""

    def __init__(self, entries: list[RootEntry]):
        self.entries = tuple(entries)
        self._by_root: dict[str, list[RootEntry]] = {}
        seen: set[tuple[str, str]] = set()
        for e in entries:
            key = (e.root, e.category)
            if key in seen:
                raise LexiconError(f"duplicate entry {e.root}/{e.category}")
            seen.add(key)
            self._by_root.setdefault(e.root, []).append(e)
        for group in self._by_root.values():
            group.sort(key=lambda e: e.category)

    def lookup(self, root: str) -> list[RootEntry]:
        return list(self._by_root.get(root, []))

    def candidate_roots(self, surface_word: str) -> list[RootEntry]:
        """Entries whose root (or its k->ğ softened form) prefixes the word.

        Softened matching is applied to every k-final root so that candidates
        cover everything the rule engine can realize; false candidates are
        discarded later when no alignment survives recognition.  Longest roots
        first, exact matches before softened ones at equal length.
        """
        out: list[RootEntry] = []
        for length in range(len(surface_word), 0, -1):
            prefix = surface_word[:length]
            bucket: list[RootEntry] = []
            bucket.extend(self._by_root.get(prefix, []))
            if prefix.endswith("ğ"):
                softened_source = prefix[:-1] + "k"
                bucket.extend(self._by_root.get(softened_source, []))
            bucket.sort(key=lambda e: (e.root, e.category))
            out.extend(bucket)
        return out


def candidate_roots(surface_word: str, lexicon: Lexicon) -> list[RootEntry]:
    return lexicon.candidate_roots(surface_word)


def load_lexicon(text: str) -> Lexicon:
    """Parse a TSV lexicon: root, category, comma-separated flags, gloss."""
    entries: list[RootEntry] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            raise LexiconError(f"line {lineno}: expected root<TAB>category[<TAB>flags[<TAB>gloss]]")
        root = cols[0].strip()
        category = cols[1].strip()
        flag_text = cols[2].strip() if len(cols) > 2 else ""
        gloss = cols[3].strip() if len(cols) > 3 else ""
        if not root:
            raise LexiconError(f"line {lineno}: empty root")
        if "+" in root or "0" in root:
            raise LexiconError(f"line {lineno}: root {root!r} contains a reserved symbol")
        if category not in CATEGORIES:
            raise LexiconError(f"line {lineno}: unknown category {category!r}")
        flags = frozenset(f for f in (p.strip() for p in flag_text.split(",")) if f)
        unknown = flags - KNOWN_FLAGS
        if unknown:
            raise LexiconError(f"line {lineno}: unknown flags {sorted(unknown)}")
        if "final-stop-softens" in flags and not root.endswith("k"):
            raise LexiconError(
                f"line {lineno}: final-stop-softens requires a k-final root, got {root!r}"
            )
        entries.append(RootEntry(root=root, category=category, flags=flags, gloss=gloss))
    return Lexicon(entries)
