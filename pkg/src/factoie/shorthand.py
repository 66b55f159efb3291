"""Shorthand gold notation and its exhaustive expansion.

Grammar (bit-exact)::

    SLOT := ALT ("|" ALT)*
    ALT  := WORD+
    WORD := "[" TEXT "]" | TEXT

``TEXT`` is a maximal run of non-whitespace, non-bracket, non-bar
characters; whitespace separates words and is otherwise insignificant.
``[word]`` marks the token optional; ``|`` separates interchangeable
alternatives. Expansion produces every combination of alternatives and
optional-token subsets, i.e. the full set of acceptable surface
realizations a slot stands for.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    AllOptional,
    EmptyAlternative,
    GoldOverlapWarning,
    TokenNotInSentence,
    UnbalancedBrackets,
    VariantLimitExceeded,
)
from .model import (
    ConcreteTriple,
    DEFAULT_NORMALIZATION,
    FactSynset,
    GoldBenchmark,
    NormalizationConfig,
    SlotTemplate,
    SlotToken,
    TaggedSentence,
    TripleTemplate,
    normalize_word,
    triple_key,
)


@dataclass(frozen=True)
class ExpansionLimits:
    """Guards against combinatorial blow-up of optional-token subsets."""

    max_variants_per_triple: int = 4096
    max_variants_per_synset: int = 65536

    def __post_init__(self):
        if self.max_variants_per_triple < 1 or self.max_variants_per_synset < 1:
            raise ValueError("expansion limits must be >= 1")


DEFAULT_LIMITS = ExpansionLimits()


@dataclass(frozen=True)
class _Word:
    text: str
    optional: bool


def _lex_alternative(segment: str, location: str | None) -> list[_Word]:
    """Split one '|'-free segment into words, honoring [brackets]."""
    words: list[_Word] = []
    i, n = 0, len(segment)
    while i < n:
        ch = segment[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "]":
            raise UnbalancedBrackets("']' without matching '['", location)
        optional = ch == "["
        if optional:
            i += 1
        start = i
        while i < n and not segment[i].isspace() and segment[i] not in "[]":
            i += 1
        text = segment[start:i]
        if optional:
            if i >= n or segment[i] != "]":
                raise UnbalancedBrackets(
                    f"'[' not closed after {text!r}" if text else "'[' never closed",
                    location,
                )
            if not text:
                raise UnbalancedBrackets("empty brackets '[]'", location)
            i += 1
        elif i < n and segment[i] == "[":
            raise UnbalancedBrackets(
                f"'[' must start a word, found after {text!r}", location
            )
        words.append(_Word(text, optional))
    return words


def parse_slot_shorthand(
    text: str,
    sentence: TaggedSentence,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    location: str | None = None,
) -> SlotTemplate:
    """Parse shorthand into a slot template aligned to the sentence.

    Words align greedily left-to-right: each word binds to the earliest
    sentence token after the previous match whose text is equal under the
    normalization config.
    """
    if not text.strip():
        raise EmptyAlternative("slot shorthand is empty", location)
    token_texts = [normalize_word(t.text, cfg) for t in sentence.tokens]
    alternatives: list[tuple[SlotToken, ...]] = []
    for segment in text.split("|"):
        words = _lex_alternative(segment, location)
        if not words:
            raise EmptyAlternative(f"empty alternative in {text!r}", location)
        if all(w.optional for w in words):
            raise AllOptional(f"alternative has no required token: {segment.strip()!r}", location)
        slot_tokens: list[SlotToken] = []
        cursor = 0
        for word in words:
            target = normalize_word(word.text, cfg)
            for idx in range(cursor, len(token_texts)):
                if token_texts[idx] == target:
                    slot_tokens.append(SlotToken(idx, word.optional))
                    cursor = idx + 1
                    break
            else:
                raise TokenNotInSentence(
                    f"word {word.text!r} not found in sentence {sentence.id!r} "
                    f"after token {cursor}",
                    location,
                )
        alternatives.append(tuple(slot_tokens))
    return SlotTemplate(tuple(alternatives))


def format_slot_shorthand(slot: SlotTemplate, sentence: TaggedSentence) -> str:
    """Render a slot template back into shorthand (inverse of parsing)."""
    parts = []
    for alt in slot.alternatives:
        words = [
            f"[{sentence.tokens[st.token_index].text}]"
            if st.optional
            else sentence.tokens[st.token_index].text
            for st in alt
        ]
        parts.append(" ".join(words))
    return " | ".join(parts)


def parse_triple_shorthand(
    subject: str,
    predicate: str,
    object_: str,
    sentence: TaggedSentence,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    location: str | None = None,
) -> TripleTemplate:
    return TripleTemplate(
        subject=parse_slot_shorthand(subject, sentence, cfg, location),
        predicate=parse_slot_shorthand(predicate, sentence, cfg, location),
        object=parse_slot_shorthand(object_, sentence, cfg, location),
    )


def slot_variant_count(slot: SlotTemplate) -> int:
    """Number of expansions of one slot before deduplication."""
    return sum(2 ** sum(1 for st in alt if st.optional) for alt in slot.alternatives)


def triple_variant_count(template: TripleTemplate) -> int:
    """Pre-dedup expansion count: the product over slots of per-slot counts."""
    count = 1
    for slot in template.slots():
        count *= slot_variant_count(slot)
    return count


def _slot_variants(slot: SlotTemplate, sentence: TaggedSentence) -> Iterator[tuple[str, ...]]:
    """All surface realizations of one slot, in deterministic order."""
    for alt in slot.alternatives:
        optional_positions = [i for i, st in enumerate(alt) if st.optional]
        for mask in range(2 ** len(optional_positions)):
            dropped = {
                optional_positions[bit]
                for bit in range(len(optional_positions))
                if not mask >> bit & 1
            }
            yield tuple(
                sentence.tokens[st.token_index].text
                for i, st in enumerate(alt)
                if i not in dropped
            )


def expand_triple(
    template: TripleTemplate,
    sentence: TaggedSentence,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
) -> set[ConcreteTriple]:
    """Expand one template into all acceptable concrete triples.

    The result is deduplicated under the triple key, keeping the first
    realization in generation order.
    """
    would_be = triple_variant_count(template)
    if would_be > lim.max_variants_per_triple:
        raise VariantLimitExceeded(
            f"triple expansion exceeds limit {lim.max_variants_per_triple}", would_be
        )
    seen: dict[str, ConcreteTriple] = {}
    for subj in _slot_variants(template.subject, sentence):
        for pred in _slot_variants(template.predicate, sentence):
            for obj in _slot_variants(template.object, sentence):
                triple = ConcreteTriple(subj, pred, obj)
                seen.setdefault(triple_key(triple, cfg), triple)
    return set(seen.values())


def expand_synset(
    synset: FactSynset,
    sentence: TaggedSentence,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
) -> set[ConcreteTriple]:
    """Union of the expansions of all templates in the synset."""
    would_be = sum(triple_variant_count(t) for t in synset.triples)
    if would_be > lim.max_variants_per_synset:
        raise VariantLimitExceeded(
            f"synset {synset.id!r} expansion exceeds limit "
            f"{lim.max_variants_per_synset}",
            would_be,
        )
    seen: dict[str, ConcreteTriple] = {}
    for template in synset.triples:
        for triple in sorted_expansion(template, sentence, cfg, lim):
            seen.setdefault(triple_key(triple, cfg), triple)
    return set(seen.values())


def sorted_expansion(
    template: TripleTemplate,
    sentence: TaggedSentence,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
) -> list[ConcreteTriple]:
    """Deterministically ordered expansion (for listings and reports)."""
    return sorted(expand_triple(template, sentence, cfg, lim), key=lambda t: t.slots())


class GoldIndex:
    """Precomputed exact-match lookup from expanded triples to synset ids."""

    def __init__(
        self,
        benchmark: GoldBenchmark,
        cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
        lim: ExpansionLimits = DEFAULT_LIMITS,
    ):
        self.cfg = cfg
        self.sentence_ids = tuple(s.id for s in benchmark.sentences)
        self.synset_ids: dict[str, tuple[str, ...]] = {}
        self.entries: dict[tuple[str, str], frozenset[str]] = {}
        self._sentence_id_set = frozenset(self.sentence_ids)

        building: dict[tuple[str, str], set[str]] = {}
        for sentence in benchmark.sentences:
            groups = benchmark.synsets_for(sentence.id)
            self.synset_ids[sentence.id] = tuple(g.id for g in groups)
            for synset in groups:
                for triple in expand_synset(synset, sentence, cfg, lim):
                    key = (sentence.id, triple_key(triple, cfg))
                    owners = building.setdefault(key, set())
                    if owners and synset.id not in owners:
                        warnings.warn(
                            GoldOverlapWarning(
                                f"sentence {sentence.id!r}: synsets "
                                f"{sorted(owners | {synset.id})} share a gold triple"
                            )
                        )
                    owners.add(synset.id)
        self.entries = {key: frozenset(owners) for key, owners in building.items()}

    def has_sentence(self, sentence_id: str) -> bool:
        return sentence_id in self._sentence_id_set

    def lookup(self, sentence_id: str, key: str) -> frozenset[str]:
        return self.entries.get((sentence_id, key), frozenset())

    def total_synsets(self) -> int:
        return sum(len(ids) for ids in self.synset_ids.values())


def build_gold_index(
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
) -> GoldIndex:
    """Expand every synset of every sentence into an exact-match index."""
    return GoldIndex(benchmark, cfg, lim)
