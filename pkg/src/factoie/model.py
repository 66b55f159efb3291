"""Core domain types: tokens, sentences, triple templates, fact synsets.

Gold annotations reference sentence tokens by index, which structurally
guarantees that every word of a gold triple occurs in the sentence. System
extractions are free strings and get whitespace-tokenized at comparison
time. Triple equality is slot-wise token-sequence equality after
normalization (case folding by default).

All types are immutable after construction and validate their invariants in
``__post_init__``; invalid construction raises ``ValueError``.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence


class PosTag(str, Enum):
    VERB = "VERB"
    NOUN = "NOUN"
    ADJ = "ADJ"
    DET = "DET"
    OTHER = "OTHER"


class NerTag(str, Enum):
    PERSON = "PERSON"
    ORG = "ORG"
    LOC = "LOC"
    MISC = "MISC"
    NONE = "NONE"


class Highlight(str, Enum):
    VERB = "VERB"
    NAMED_ENTITY = "NAMED_ENTITY"
    NONE = "NONE"


def _has_whitespace(text: str) -> bool:
    return any(ch.isspace() for ch in text)


def _has_control(text: str) -> bool:
    return any(unicodedata.category(ch) == "Cc" for ch in text)


@dataclass(frozen=True)
class Token:
    """One sentence token with its display labels."""

    index: int
    text: str
    pos: PosTag = PosTag.OTHER
    ner: NerTag = NerTag.NONE
    highlight: Highlight = Highlight.NONE

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if _has_whitespace(self.text):
            raise ValueError(f"token text contains whitespace: {self.text!r}")
        # control characters are reserved for the triple-key slot separator
        if _has_control(self.text):
            raise ValueError(f"token text contains control characters: {self.text!r}")
        if self.index < 0:
            raise ValueError("token index must be non-negative")


@dataclass(frozen=True)
class TaggedSentence:
    """A tokenized sentence with per-token labels; the annotation substrate."""

    id: str
    raw: str
    tokens: tuple[Token, ...]
    language: str = "en"

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.id:
            raise ValueError("sentence id must be non-empty")
        if not self.tokens:
            raise ValueError(f"sentence {self.id!r} has no tokens")
        for position, token in enumerate(self.tokens):
            if token.index != position:
                raise ValueError(
                    f"sentence {self.id!r}: token index {token.index} at position {position}"
                )
        squeezed_tokens = "".join(t.text for t in self.tokens)
        squeezed_raw = "".join(self.raw.split())
        if squeezed_tokens != squeezed_raw:
            raise ValueError(
                f"sentence {self.id!r}: tokens do not reassemble the raw text"
            )

    def token_texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)


@dataclass(frozen=True)
class SlotToken:
    """A reference to one sentence token, optionally omittable on expansion."""

    token_index: int
    optional: bool = False

    def __post_init__(self):
        if self.token_index < 0:
            raise ValueError("token_index must be non-negative")


@dataclass(frozen=True)
class SlotTemplate:
    """One triple slot: alternatives of token sequences, with optional flags.

    Each alternative is an ordered run of slot tokens following sentence
    order; at least one token per alternative must be required, so a slot
    can never expand to the empty sequence.
    """

    alternatives: tuple[tuple[SlotToken, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "alternatives", tuple(tuple(alt) for alt in self.alternatives)
        )
        if not self.alternatives:
            raise ValueError("slot must have at least one alternative")
        for alt in self.alternatives:
            if not alt:
                raise ValueError("slot alternative must be non-empty")
            if all(st.optional for st in alt):
                raise ValueError("slot alternative has no required token")
            indices = [st.token_index for st in alt]
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise ValueError(
                    f"slot token indices must be strictly increasing: {indices}"
                )

    def max_token_index(self) -> int:
        return max(st.token_index for alt in self.alternatives for st in alt)


@dataclass(frozen=True)
class TripleTemplate:
    """One annotated (subject; predicate; object) with per-token optionality."""

    subject: SlotTemplate
    predicate: SlotTemplate
    object: SlotTemplate

    def slots(self) -> tuple[SlotTemplate, SlotTemplate, SlotTemplate]:
        return (self.subject, self.predicate, self.object)

    def max_token_index(self) -> int:
        return max(s.max_token_index() for s in self.slots())


@dataclass(frozen=True)
class FactSynset:
    """All annotated realizations of one fact; the unit of recall."""

    id: str
    triples: tuple[TripleTemplate, ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(self.triples))
        if not self.id:
            raise ValueError("synset id must be non-empty")
        if not self.triples:
            raise ValueError(f"synset {self.id!r} has no triples")


@dataclass(frozen=True)
class GoldBenchmark:
    """Sentences plus their fact synsets."""

    sentences: tuple[TaggedSentence, ...]
    synsets: Mapping[str, tuple[FactSynset, ...]]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(
            self,
            "synsets",
            {sid: tuple(groups) for sid, groups in self.synsets.items()},
        )
        known = {s.id for s in self.sentences}
        if len(known) != len(self.sentences):
            raise ValueError("duplicate sentence ids in benchmark")
        for sid, groups in self.synsets.items():
            if sid not in known:
                raise ValueError(f"synsets reference unknown sentence {sid!r}")
            ids = [g.id for g in groups]
            if len(set(ids)) != len(ids):
                raise ValueError(f"duplicate synset ids for sentence {sid!r}")

    def sentence_by_id(self, sid: str) -> TaggedSentence:
        for s in self.sentences:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def synsets_for(self, sid: str) -> tuple[FactSynset, ...]:
        return self.synsets.get(sid, ())

    def total_synsets(self) -> int:
        return sum(len(groups) for groups in self.synsets.values())


@dataclass(frozen=True)
class ConcreteTriple:
    """One fully expanded surface realization of a triple."""

    subject: tuple[str, ...]
    predicate: tuple[str, ...]
    object: tuple[str, ...]

    def __post_init__(self):
        for name in ("subject", "predicate", "object"):
            value = tuple(getattr(self, name))
            object.__setattr__(self, name, value)
            if not value:
                raise ValueError(f"concrete triple has empty {name}")

    def slots(self) -> tuple[tuple[str, ...], ...]:
        return (self.subject, self.predicate, self.object)


@dataclass(frozen=True)
class SystemExtraction:
    """One triple emitted by a system under evaluation, as plain strings."""

    sentence_id: str
    subject: str
    predicate: str
    object: str
    confidence: Optional[float] = None

    def __post_init__(self):
        if not self.sentence_id:
            raise ValueError("extraction sentence_id must be non-empty")
        for name in ("subject", "predicate", "object"):
            if not getattr(self, name).strip():
                raise ValueError(f"extraction {name} is empty")
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of [0,1]: {self.confidence}")

    def to_concrete(self) -> ConcreteTriple:
        """Whitespace-tokenize the three slots."""
        return ConcreteTriple(
            subject=tuple(self.subject.split()),
            predicate=tuple(self.predicate.split()),
            object=tuple(self.object.split()),
        )


@dataclass(frozen=True)
class NormalizationConfig:
    """String normalization applied before any triple comparison."""

    case_fold: bool = True
    strip_terminal_punct: bool = False


DEFAULT_NORMALIZATION = NormalizationConfig()

# Unit separator: cannot appear in token text (Token rejects control chars),
# so joining slots with it keeps triple keys injective.
_SLOT_SEPARATOR = "\x1f"


def _is_single_punct(text: str) -> bool:
    return len(text) == 1 and unicodedata.category(text).startswith("P")


def normalize_slot(
    words: Sequence[str], cfg: NormalizationConfig = DEFAULT_NORMALIZATION
) -> tuple[str, ...]:
    """Normalize one slot's token sequence for comparison.

    Case folding applies per config; ``strip_terminal_punct`` drops a final
    token that is a single punctuation mark, but never empties the slot.
    """
    out = list(words)
    if cfg.strip_terminal_punct and len(out) > 1 and _is_single_punct(out[-1]):
        out.pop()
    if cfg.case_fold:
        out = [w.casefold() for w in out]
    return tuple(out)


def normalize_word(word: str, cfg: NormalizationConfig = DEFAULT_NORMALIZATION) -> str:
    """Normalize a single word (used for token alignment and overlap)."""
    return word.casefold() if cfg.case_fold else word


def triple_key(
    t: ConcreteTriple, cfg: NormalizationConfig = DEFAULT_NORMALIZATION
) -> str:
    """Canonical comparison key: normalized slots joined by a control char.

    Tokens carry no whitespace, so the space-join within a slot and the
    control-character join across slots make the key injective over
    normalized triples.
    """
    return _SLOT_SEPARATOR.join(
        " ".join(normalize_slot(slot, cfg)) for slot in t.slots()
    )


def validate_template_for_sentence(
    template: TripleTemplate, sentence: TaggedSentence
) -> None:
    """Raise ``ValueError`` if the template references tokens out of range."""
    limit = len(sentence.tokens)
    if template.max_token_index() >= limit:
        raise ValueError(
            f"template references token {template.max_token_index()} but sentence "
            f"{sentence.id!r} has {limit} tokens"
        )
