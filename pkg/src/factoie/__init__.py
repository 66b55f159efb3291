"""Complete fact-synset benchmarks for Open Information Extraction.

Gold annotations cluster all acceptable surface realizations of one fact
(optional tokens, alternatives) into synsets; scoring then becomes exact:
an extraction is correct iff it equals one of the expanded realizations.
The package bundles the annotation backend, the shorthand notation and its
expansion, both scoring protocols, and the file formats tying them together.
"""

from .errors import (
    AllOptional,
    ConfidenceOutOfRange,
    DuplicateId,
    EmptyAlternative,
    EmptyInput,
    EmptyText,
    FactoieError,
    GoldOverlapWarning,
    MalformedInput,
    SchemaViolation,
    TokenNotInSentence,
    TokenizationMismatch,
    UnbalancedBrackets,
    UnknownSentence,
    VariantLimitExceeded,
    VersionUnsupported,
)
from .io_formats import (
    AnnotationState,
    export_tsv,
    import_gold_tsv,
    load_sentences,
    load_state,
    load_system_extractions,
    save_state,
)
from .model import (
    ConcreteTriple,
    FactSynset,
    GoldBenchmark,
    Highlight,
    NerTag,
    NormalizationConfig,
    PosTag,
    SlotTemplate,
    SlotToken,
    SystemExtraction,
    TaggedSentence,
    Token,
    TripleTemplate,
    normalize_slot,
    triple_key,
)
from .scoring import (
    Diagnostic,
    PairScore,
    ScoreReport,
    TokenOverlapReport,
    lint_gold,
    match_extraction,
    pair_token_overlap,
    prune_ne_centric,
    score_fact_based,
    score_token_overlap,
)
from .shorthand import (
    ExpansionLimits,
    GoldIndex,
    build_gold_index,
    expand_synset,
    expand_triple,
    format_slot_shorthand,
    parse_slot_shorthand,
)
from .tagger import HighlightScheme, NerMode, TaggerConfig, ingest_pretagged, tag, tokenize

__version__ = "0.1.0"
