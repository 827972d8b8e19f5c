"""Turkish morphological analysis and corpus search workbench."""

from .analyzer import (
    Analyzer,
    FeatureBundle,
    Parse,
    UnknownWordError,
    casefold_turkish,
)
from .corpus import (
    FeatureIndex,
    Sentence,
    TaggedCorpus,
    build_index,
    load_index,
    load_tagged,
    save_index,
    save_tagged,
    tokenize,
)
from .disambiguator import (
    Constraint,
    RootStats,
    TokenAnalysis,
    load_constraints,
    load_stats,
    tag_corpus,
    tag_sentence,
)
from .lexicon import Lexicon, RootEntry, candidate_roots, load_lexicon
from .morphotactics import (
    Morpheme,
    ParadigmAutomaton,
    build_lexical,
    enumerate_lexical_forms,
    load_paradigms,
)
from .phonology import (
    Alphabet,
    LexicalString,
    PhonologyEngine,
    SymbolPair,
    TwoLevelRule,
    check_rule_conflicts,
    compile_rules,
    parse_rule_file,
)
from .search import (
    AnalysisView,
    Conflict,
    Query,
    SentenceHit,
    analysis_view,
    implied_features,
    linear_scan,
    search,
)
from .workbench import Config, Workbench, load_config

__version__ = "0.1.0"
