"""Resource loading: configuration plus the fully wired analysis stack."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analyzer import Analyzer
from .disambiguator import Constraint, RootStats, load_constraints, load_stats
from .lexicon import Lexicon, load_lexicon
from .morphotactics import ParadigmAutomaton, load_paradigms
from .phonology import Alphabet, PhonologyEngine, TwoLevelRule, compile_rules, parse_rule_file
from .search import FeatureCatalog, load_catalog

CONFIG_ENV = "MORFWORK_CONFIG"

_RESOURCE_KEYS = ("rules", "paradigms", "lexicon", "constraints", "stats", "features")
_PATH_KEYS = _RESOURCE_KEYS + ("corpus", "tagged", "index", "ui_dir")


class ConfigError(ValueError):
    pass


def _default_data(name: str) -> Path:
    return Path(str(resources.files("morfwork").joinpath("data", name)))


@dataclass
class Config:
    """File locations and server settings for the CLI and the service."""

    rules: Path = field(default_factory=lambda: _default_data("turkish.rules"))
    paradigms: Path = field(default_factory=lambda: _default_data("turkish.paradigms"))
    lexicon: Path = field(default_factory=lambda: _default_data("turkish.lex"))
    constraints: Path = field(default_factory=lambda: _default_data("turkish.constraints"))
    stats: Path = field(default_factory=lambda: _default_data("turkish.stats"))
    features: Path = field(default_factory=lambda: _default_data("features.tsv"))
    corpus: Path | None = None
    tagged: Path | None = None
    index: Path | None = None
    host: str = "127.0.0.1"
    port: int = 8765
    ascii_fold: bool = False
    ui_dir: Path | None = None


def load_config(path: str | Path | None = None) -> Config:
    """Build a Config from defaults plus an optional key=value file.

    Without an explicit path, the MORFWORK_CONFIG environment variable is
    consulted.  Relative paths in the file resolve against its directory.
    """
    if path is None:
        env = os.environ.get(CONFIG_ENV)
        if not env:
            return Config()
        path = env
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    config = Config()
    base = path.parent
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in _PATH_KEYS:
            setattr(config, key, (base / value).resolve())
        elif key == "host":
            config.host = value
        elif key == "port":
            try:
                config.port = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: bad port {value!r}") from None
        elif key == "ascii_fold":
            config.ascii_fold = value.lower() in ("1", "true", "yes", "on")
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return config


@dataclass(frozen=True)
class Workbench:
    """Every loaded resource, wired into an analyzer and feature catalog."""

    alphabet: Alphabet
    rules: tuple[TwoLevelRule, ...]
    engine: PhonologyEngine
    automaton: ParadigmAutomaton
    lexicon: Lexicon
    constraints: tuple[Constraint, ...]
    stats: RootStats
    catalog: FeatureCatalog
    analyzer: Analyzer

    @classmethod
    def load(cls, config: Config | None = None) -> "Workbench":
        config = config or Config()
        for key in _RESOURCE_KEYS:
            p = getattr(config, key)
            if not Path(p).is_file():
                raise ConfigError(f"missing {key} file: {p}")
        alphabet, rules = parse_rule_file(Path(config.rules).read_text(encoding="utf-8"))
        engine = compile_rules(alphabet, rules)
        automaton = load_paradigms(Path(config.paradigms).read_text(encoding="utf-8"))
        lexicon = load_lexicon(Path(config.lexicon).read_text(encoding="utf-8"))
        constraints = tuple(
            load_constraints(Path(config.constraints).read_text(encoding="utf-8"))
        )
        stats = load_stats(Path(config.stats).read_text(encoding="utf-8"))
        catalog = load_catalog(Path(config.features).read_text(encoding="utf-8"), automaton)

        lexical_symbols = alphabet.lexical_symbols()
        for m in automaton.inventory.values():
            for sym in m.form_symbols():
                if sym not in lexical_symbols:
                    raise ConfigError(
                        f"morpheme {m.name} uses symbol {sym!r} absent from the alphabet"
                    )
        analyzer = Analyzer(lexicon, automaton, engine)
        return cls(
            alphabet=alphabet,
            rules=tuple(rules),
            engine=engine,
            automaton=automaton,
            lexicon=lexicon,
            constraints=constraints,
            stats=stats,
            catalog=catalog,
            analyzer=analyzer,
        )
