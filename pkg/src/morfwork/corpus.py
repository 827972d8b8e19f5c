"""Tokenization, tagged-corpus persistence and feature-index construction.

The tagged corpus and the feature index are both stored as versioned,
line-oriented UTF-8 text so they stay inspectable and diffable at teaching
scale.  The index file additionally carries a whole-file checksum.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

TAGGED_HEADER = "#morfwork-tagged v1"
INDEX_HEADER = "#morfwork-index v1"

# Characters split off a token's edges; apostrophes inside words survive.
_PUNCTUATION = set(".,;:!?()[]{}<>\"'«»“”‘’…—–-/\\|")


class PersistenceError(ValueError):
    """Base class for tagged-corpus and index file problems."""


class VersionError(PersistenceError):
    pass


class ChecksumError(PersistenceError):
    pass


@dataclass(frozen=True)
class Sentence:
    id: int
    text: str
    tokens: tuple[tuple[str, int, int], ...]  # (token, charStart, charEnd)


@dataclass(frozen=True)
class ChosenAnalysis:
    """The disambiguated reading of one token, as persisted."""

    root: str
    category: str
    morphemes: tuple[str, ...]
    features: tuple[tuple[str, str], ...]

    def value_of(self, dimension: str) -> str | None:
        if dimension == "root":
            return self.root
        if dimension == "category":
            return self.category
        for dim, value in self.features:
            if dim == dimension:
                return value
        return None

    def has_suffix(self, name: str) -> bool:
        return name in self.morphemes


@dataclass(frozen=True)
class TaggedCorpus:
    sentences: tuple[Sentence, ...]
    analyses: tuple[tuple[ChosenAnalysis | None, ...], ...]

    def __post_init__(self):
        if len(self.sentences) != len(self.analyses):
            raise ValueError("sentence/analysis length mismatch")
        for s, a in zip(self.sentences, self.analyses):
            if len(s.tokens) != len(a):
                raise ValueError(f"sentence {s.id}: token/analysis length mismatch")


@dataclass(frozen=True)
class FeatureIndex:
    """Inverted postings from (dimension, value) to (sentenceId, tokenIndex)."""

    postings: dict[tuple[str, str], tuple[tuple[int, int], ...]]

    def get(self, dimension: str, value: str) -> tuple[tuple[int, int], ...]:
        return self.postings.get((dimension, value), ())


def tokenize(text: str) -> list[tuple[str, int, int]]:
    """Whitespace tokens with leading/trailing punctuation split off.

    Returns (token, start, end) with character spans into the original text.
    """
    out: list[tuple[str, int, int]] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        start, end = i, j
        i = j
        lead = start
        while lead < end and text[lead] in _PUNCTUATION:
            out.append((text[lead], lead, lead + 1))
            lead += 1
        trail = end
        trailing: list[tuple[str, int, int]] = []
        while trail > lead and text[trail - 1] in _PUNCTUATION:
            trailing.append((text[trail - 1], trail - 1, trail))
            trail -= 1
        if lead < trail:
            out.append((text[lead:trail], lead, trail))
        out.extend(reversed(trailing))
    return out


def is_word_token(token: str) -> bool:
    """Tokens without any letter carry no analyses downstream."""
    return any(ch.isalpha() for ch in token)


def build_index(tagged: TaggedCorpus) -> FeatureIndex:
    """One posting per scalar value, morpheme name and root of every chosen parse."""
    acc: dict[tuple[str, str], list[tuple[int, int]]] = {}

    def post(dim: str, value: str, sid: int, tid: int) -> None:
        acc.setdefault((dim, value), []).append((sid, tid))

    for sentence, row in zip(tagged.sentences, tagged.analyses):
        for tid, chosen in enumerate(row):
            if chosen is None:
                continue
            post("root", chosen.root, sentence.id, tid)
            post("category", chosen.category, sentence.id, tid)
            for dim, value in chosen.features:
                post(dim, value, sentence.id, tid)
            for name in chosen.morphemes:
                post("suffix", name, sentence.id, tid)
    postings = {
        key: tuple(sorted(set(positions))) for key, positions in acc.items()
    }
    return FeatureIndex(postings=postings)


# ---------------------------------------------------------------------------
# Field escaping: tokens and sentence text may contain the record separators.

_ESCAPES = [("%", "%25"), (":", "%3A"), ("|", "%7C"), ("\t", "%09")]


def _escape(field: str) -> str:
    for raw, enc in _ESCAPES:
        field = field.replace(raw, enc)
    return field


def _unescape(field: str) -> str:
    for raw, enc in reversed(_ESCAPES):
        field = field.replace(enc, raw)
    return field


def save_tagged(tagged: TaggedCorpus) -> str:
    lines = [TAGGED_HEADER]
    for sentence, row in zip(tagged.sentences, tagged.analyses):
        records = []
        for (token, _, _), chosen in zip(sentence.tokens, row):
            if chosen is None:
                records.append(f"{_escape(token)}::::")
            else:
                feats = ",".join(f"{d}={v}" for d, v in chosen.features)
                morphs = "+".join(chosen.morphemes)
                records.append(
                    f"{_escape(token)}:{chosen.root}:{chosen.category}:{morphs}:{feats}"
                )
        lines.append(f"{sentence.id}\t{_escape(sentence.text)}\t" + "|".join(records))
    return "\n".join(lines) + "\n"


def load_tagged(text: str) -> TaggedCorpus:
    lines = text.splitlines()
    if not lines:
        raise PersistenceError("empty tagged-corpus file")
    if lines[0] != TAGGED_HEADER:
        if lines[0].startswith("#morfwork-tagged"):
            raise VersionError(f"unsupported tagged-corpus version: {lines[0]!r}")
        raise PersistenceError("missing tagged-corpus header")
    sentences: list[Sentence] = []
    analyses: list[tuple[ChosenAnalysis | None, ...]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise PersistenceError(f"line {lineno}: expected id, text and token records")
        try:
            sid = int(cols[0])
        except ValueError:
            raise PersistenceError(f"line {lineno}: bad sentence id {cols[0]!r}") from None
        sentence_text = _unescape(cols[1])
        tokens = tuple(tokenize(sentence_text))
        records = cols[2].split("|") if cols[2] else []
        if len(records) != len(tokens):
            raise PersistenceError(
                f"line {lineno}: {len(records)} records for {len(tokens)} tokens"
            )
        row: list[ChosenAnalysis | None] = []
        for tid, (record, (token, _, _)) in enumerate(zip(records, tokens)):
            fields = record.split(":")
            if len(fields) != 5:
                raise PersistenceError(f"line {lineno}: malformed record {tid}")
            if _unescape(fields[0]) != token:
                raise PersistenceError(
                    f"line {lineno}: record {tid} token {fields[0]!r} does not match text"
                )
            if fields[1] == "" and fields[2] == "":
                row.append(None)
                continue
            morphemes = tuple(m for m in fields[3].split("+") if m)
            features = []
            if fields[4]:
                for fv in fields[4].split(","):
                    if "=" not in fv:
                        raise PersistenceError(f"line {lineno}: malformed feature {fv!r}")
                    dim, value = fv.split("=", 1)
                    features.append((dim, value))
            row.append(
                ChosenAnalysis(
                    root=fields[1],
                    category=fields[2],
                    morphemes=morphemes,
                    features=tuple(features),
                )
            )
        sentences.append(Sentence(id=sid, text=sentence_text, tokens=tokens))
        analyses.append(tuple(row))
    return TaggedCorpus(sentences=tuple(sentences), analyses=tuple(analyses))


def save_index(index: FeatureIndex) -> str:
    payload_lines = []
    for (dim, value), positions in sorted(index.postings.items()):
        cells = ",".join(f"{sid}:{tid}" for sid, tid in positions)
        payload_lines.append(f"{dim}={value}\t{cells}")
    payload = "".join(line + "\n" for line in payload_lines)
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    return f"{INDEX_HEADER}\nchecksum={digest}\n{payload}"


def load_index(text: str) -> FeatureIndex:
    lines = text.splitlines(keepends=True)
    if not lines:
        raise PersistenceError("empty index file")
    header = lines[0].rstrip("\n")
    if header != INDEX_HEADER:
        if header.startswith("#morfwork-index"):
            raise VersionError(f"unsupported index version: {header!r}")
        raise PersistenceError("missing index header")
    if len(lines) < 2 or not lines[1].startswith("checksum="):
        raise PersistenceError("missing checksum line")
    expected = lines[1].rstrip("\n")[len("checksum="):]
    payload = "".join(lines[2:])
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    if digest != expected:
        raise ChecksumError("index checksum mismatch (file corrupted or truncated)")
    postings: dict[tuple[str, str], tuple[tuple[int, int], ...]] = {}
    for lineno, raw in enumerate(payload.splitlines(), start=3):
        if not raw.strip():
            continue
        if "\t" not in raw or "=" not in raw.split("\t", 1)[0]:
            raise PersistenceError(f"line {lineno}: malformed posting line")
        key_text, cells = raw.split("\t", 1)
        dim, value = key_text.split("=", 1)
        positions = []
        if cells:
            for cell in cells.split(","):
                try:
                    sid_text, tid_text = cell.split(":")
                    positions.append((int(sid_text), int(tid_text)))
                except ValueError:
                    raise PersistenceError(
                        f"line {lineno}: malformed posting {cell!r}"
                    ) from None
        postings[(dim, value)] = tuple(positions)
    return FeatureIndex(postings=postings)
