"""Tokenization and tokens-of-interest labeling.

No statistical models are bundled: verbs come from a plain word-list
lexicon and named entities from a capitalization heuristic, which is enough
to highlight candidate predicate heads and arguments for an annotator.
Externally tagged sentences enter through :func:`ingest_pretagged`, so any
real POS/NER pipeline can replace the built-in rules. Mis-highlighting
never corrupts annotations; it only changes button colors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .errors import EmptyText, SchemaViolation, TokenizationMismatch
from .model import Highlight, NerTag, PosTag, TaggedSentence, Token

SENTENCE_END_PUNCT = ".,!?;:"


class NerMode(str, Enum):
    CAPITALIZATION_HEURISTIC = "CAPITALIZATION_HEURISTIC"
    PRETAGGED_ONLY = "PRETAGGED_ONLY"


class HighlightScheme(str, Enum):
    FULL = "FULL"
    VERBS = "VERBS"
    NAMED_ENTITIES = "NAMED_ENTITIES"
    NONE = "NONE"


def load_verb_lexicon(path=None) -> frozenset[str]:
    """Read a verb lexicon: one lowercase word per line, UTF-8, '#' comments."""
    if path is None:
        text = resources.files("factoie.data").joinpath("verb_lexicon.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    words = set()
    for line in text.splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word.casefold())
    return frozenset(words)


@dataclass(frozen=True)
class TaggerConfig:
    verb_lexicon: frozenset[str] = field(default_factory=load_verb_lexicon)
    ner_mode: NerMode = NerMode.CAPITALIZATION_HEURISTIC
    highlight_scheme: HighlightScheme = HighlightScheme.FULL
    language: str = "en"

    def __post_init__(self):
        object.__setattr__(self, "verb_lexicon", frozenset(self.verb_lexicon))
        for word in self.verb_lexicon:
            if not word or word != word.casefold():
                raise ValueError(f"verb lexicon entries must be non-empty lowercase: {word!r}")


def load_tagger_config(path) -> TaggerConfig:
    """Read a tagger config JSON file.

    Keys (all optional): ``verb_lexicon_path``, ``ner_mode``,
    ``highlight_scheme``, ``language``.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"tagger config is not valid JSON: {exc}", "$") from exc
    if not isinstance(raw, dict):
        raise SchemaViolation("tagger config must be a JSON object", "$")
    kwargs = {}
    if "verb_lexicon_path" in raw:
        kwargs["verb_lexicon"] = load_verb_lexicon(raw["verb_lexicon_path"])
    try:
        if "ner_mode" in raw:
            kwargs["ner_mode"] = NerMode(raw["ner_mode"])
        if "highlight_scheme" in raw:
            kwargs["highlight_scheme"] = HighlightScheme(raw["highlight_scheme"])
    except ValueError as exc:
        raise SchemaViolation(str(exc), "$") from exc
    if "language" in raw:
        kwargs["language"] = str(raw["language"])
    return TaggerConfig(**kwargs)


def tokenize(text: str, language: str = "en") -> list[str]:
    """Whitespace tokenization with one sentence-final punctuation detached.

    Mid-sentence abbreviation periods stay attached ("Prof." is one token).
    Languages without whitespace word boundaries must arrive pre-tokenized
    (tokens separated by spaces); no internal segmentation is attempted.
    """
    if not text.strip():
        raise EmptyText("no tokens in empty text")
    tokens = text.split()
    last = tokens[-1]
    if len(last) > 1 and last[-1] in SENTENCE_END_PUNCT:
        tokens[-1] = last[:-1]
        tokens.append(last[-1])
    return tokens


def highlight_for(pos: PosTag, ner: NerTag, scheme: HighlightScheme) -> Highlight:
    """Highlight class as a pure function of the token labels and scheme."""
    if pos is PosTag.VERB and scheme in (HighlightScheme.FULL, HighlightScheme.VERBS):
        return Highlight.VERB
    if ner is not NerTag.NONE and scheme in (
        HighlightScheme.FULL,
        HighlightScheme.NAMED_ENTITIES,
    ):
        return Highlight.NAMED_ENTITY
    return Highlight.NONE


def _capitalized_runs(texts: list[str], is_verb: list[bool]) -> set[int]:
    """Indices belonging to named-entity runs under the capitalization rule.

    A maximal run of capitalized, non-verb tokens counts as an entity
    unless it consists of the sentence-initial token alone, which is
    capitalized whether or not it names an entity.
    """
    entity_indices: set[int] = set()
    run: list[int] = []
    for i in range(len(texts) + 1):
        in_run = i < len(texts) and texts[i][0].isupper() and not is_verb[i]
        if in_run:
            run.append(i)
            continue
        if run and run != [0]:
            entity_indices.update(run)
        run = []
    return entity_indices


def tag(sentence_text: str, sentence_id: str, cfg: TaggerConfig | None = None) -> TaggedSentence:
    """Tokenize and label one sentence with the rule/lexicon fallback."""
    if cfg is None:
        cfg = TaggerConfig()
    texts = tokenize(sentence_text, cfg.language)
    is_verb = [t.casefold() in cfg.verb_lexicon for t in texts]
    if cfg.ner_mode is NerMode.CAPITALIZATION_HEURISTIC:
        entity_indices = _capitalized_runs(texts, is_verb)
    else:
        entity_indices = set()
    tokens = []
    for i, text in enumerate(texts):
        pos = PosTag.VERB if is_verb[i] else PosTag.OTHER
        ner = NerTag.MISC if i in entity_indices else NerTag.NONE
        tokens.append(
            Token(
                index=i,
                text=text,
                pos=pos,
                ner=ner,
                highlight=highlight_for(pos, ner, cfg.highlight_scheme),
            )
        )
    return TaggedSentence(
        id=sentence_id, raw=sentence_text, tokens=tuple(tokens), language=cfg.language
    )


_NER_ALIASES = {
    "PERSON": NerTag.PERSON,
    "PER": NerTag.PERSON,
    "ORG": NerTag.ORG,
    "ORGANIZATION": NerTag.ORG,
    "LOC": NerTag.LOC,
    "LOCATION": NerTag.LOC,
    "GPE": NerTag.LOC,
    "MISC": NerTag.MISC,
    "NONE": NerTag.NONE,
    "O": NerTag.NONE,
    "": NerTag.NONE,
}


def map_pos_label(label: str) -> PosTag:
    """Map a fine-grained POS label down to the coarse tag set."""
    upper = label.upper()
    if upper.startswith("V"):
        return PosTag.VERB
    if upper.startswith("N"):
        return PosTag.NOUN
    if upper.startswith(("J", "A")):
        return PosTag.ADJ
    if upper.startswith("D"):
        return PosTag.DET
    return PosTag.OTHER


def map_ner_label(label: str) -> NerTag:
    """Map an external NER label case-insensitively; unknown labels → MISC."""
    return _NER_ALIASES.get(label.upper(), NerTag.MISC)


def ingest_pretagged(data: bytes, cfg: TaggerConfig | None = None) -> TaggedSentence:
    """Accept an externally tagged sentence as JSON.

    Schema: ``{"id", "raw", "tokens": [{"text", "pos", "ner"}]}`` with
    arbitrary upstream label sets, mapped down to the coarse tags. The
    highlight class is derived from the mapped labels under the active
    scheme.
    """
    if cfg is None:
        cfg = TaggerConfig()
    try:
        raw = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaViolation(f"pre-tagged sentence is not valid JSON: {exc}", "$") from exc
    if not isinstance(raw, dict):
        raise SchemaViolation("pre-tagged sentence must be a JSON object", "$")
    for key in ("id", "raw", "tokens"):
        if key not in raw:
            raise SchemaViolation(f"missing field {key!r}", f"$.{key}")
    if not isinstance(raw["id"], str) or not isinstance(raw["raw"], str):
        raise SchemaViolation("id and raw must be strings", "$")
    if not isinstance(raw["tokens"], list) or not raw["tokens"]:
        raise SchemaViolation("tokens must be a non-empty array", "$.tokens")
    tokens = []
    for i, item in enumerate(raw["tokens"]):
        path = f"$.tokens[{i}]"
        if not isinstance(item, dict) or not isinstance(item.get("text"), str):
            raise SchemaViolation("token must be an object with a text string", path)
        text = item["text"]
        if not text or any(ch.isspace() for ch in text):
            raise SchemaViolation(f"bad token text {text!r}", path)
        pos = map_pos_label(str(item.get("pos", "")))
        ner = map_ner_label(str(item.get("ner", "")))
        tokens.append(
            Token(
                index=i,
                text=text,
                pos=pos,
                ner=ner,
                highlight=highlight_for(pos, ner, cfg.highlight_scheme),
            )
        )
    squeezed_tokens = "".join(t.text for t in tokens)
    squeezed_raw = "".join(raw["raw"].split())
    if squeezed_tokens != squeezed_raw:
        raise TokenizationMismatch(
            f"tokens do not reassemble raw text of sentence {raw['id']!r}"
        )
    return TaggedSentence(
        id=raw["id"],
        raw=raw["raw"],
        tokens=tuple(tokens),
        language=str(raw.get("language", cfg.language)),
    )
