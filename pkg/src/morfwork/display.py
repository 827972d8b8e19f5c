"""Output helpers shared by the CLI and the HTTP service."""

from __future__ import annotations

from .analyzer import Parse

# Historical terminal fallback: special Turkish letters become the nearest
# ASCII letter in upper case, on output only.
_ASCII_FOLD = str.maketrans(
    {
        "ç": "C",
        "ğ": "G",
        "ı": "I",
        "ö": "O",
        "ş": "S",
        "ü": "U",
        "Ç": "C",
        "Ğ": "G",
        "İ": "I",
        "Ö": "O",
        "Ş": "S",
        "Ü": "U",
    }
)


def ascii_fold(text: str) -> str:
    return text.translate(_ASCII_FOLD)


def fold_deep(value, enabled: bool):
    """Apply ascii_fold to every string inside a JSON-able structure."""
    if not enabled:
        return value
    if isinstance(value, str):
        return ascii_fold(value)
    if isinstance(value, list):
        return [fold_deep(v, enabled) for v in value]
    if isinstance(value, tuple):
        return [fold_deep(v, enabled) for v in value]
    if isinstance(value, dict):
        return {k: fold_deep(v, enabled) for k, v in value.items()}
    return value


def parse_record(parse: Parse) -> dict:
    """JSON-able summary of one parse."""
    return {
        "root": parse.features.root,
        "category": parse.features.category,
        "gloss": parse.gloss,
        "morphemes": list(parse.morpheme_names()),
        "features": {dim: value for dim, value in parse.features.present_scalars()},
    }


def format_parse(parse: Parse) -> str:
    """Single-line human-readable rendering of one parse."""
    feats = " ".join(f"{d}={v}" for d, v in parse.features.present_scalars())
    morphs = "+".join(parse.morpheme_names()) or "-"
    line = f"{parse.gloss}  [{parse.features.category}]  morphemes: {morphs}"
    if feats:
        line += f"  {feats}"
    return line
