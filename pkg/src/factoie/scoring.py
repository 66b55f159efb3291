"""Scoring of system extractions against fact-synset gold.

Two protocols live here. Fact-based scoring is exact: a system extraction
counts only if it equals one of the expanded gold realizations, a synset is
a true positive when covered by at least one extraction (rewarded once no
matter how many variants a system emits), uncovered synsets are false
negatives, and unmatched extractions are false positives. Token-overlap
scoring is the lenient per-slot multiset-intersection measure used by
earlier benchmarks, kept for comparison.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import UnknownSentence, VariantLimitExceeded
from .model import (
    ConcreteTriple,
    DEFAULT_NORMALIZATION,
    GoldBenchmark,
    NerTag,
    NormalizationConfig,
    SystemExtraction,
    normalize_slot,
    triple_key,
)
from .shorthand import (
    DEFAULT_LIMITS,
    ExpansionLimits,
    GoldIndex,
    build_gold_index,
    expand_synset,
)


def precision_recall_f1(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return precision, recall, f1


@dataclass(frozen=True)
class ScoreReport:
    """Fact-based counts and ratios, with a per-sentence breakdown."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    per_sentence: dict[str, tuple[int, int, int]]
    matched: tuple[tuple[int, str, str], ...]  # (extraction index, sentence, synset)


@dataclass(frozen=True)
class PairScore:
    """Token-wise precision/recall of one (extraction, gold triple) pair."""

    precision: float
    recall: float

    def f1(self) -> float:
        if self.precision + self.recall == 0:
            return 0.0
        return 2 * self.precision * self.recall / (self.precision + self.recall)


@dataclass(frozen=True)
class TokenOverlapReport:
    """Dataset-level token-overlap summary with the pair assignment."""

    precision: float
    recall: float
    f1: float
    # (sentence id, extraction index, gold triple index, pair score)
    assigned: tuple[tuple[str, int, int, PairScore], ...]


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning" | "review"
    sentence_id: str
    synset_id: str
    code: str
    message: str


def match_extraction(
    extraction: SystemExtraction,
    index: GoldIndex,
    cfg: NormalizationConfig | None = None,
) -> frozenset[str]:
    """Synset ids whose expansion contains the extraction, exactly.

    The normalization config must be the one the index was built with
    (defaults to exactly that), or the keys would not be comparable.
    """
    if cfg is None:
        cfg = index.cfg
    elif cfg != index.cfg:
        raise ValueError("normalization config differs from the index's")
    if not index.has_sentence(extraction.sentence_id):
        raise UnknownSentence(
            f"extraction references unknown sentence {extraction.sentence_id!r}"
        )
    key = triple_key(extraction.to_concrete(), cfg)
    return index.lookup(extraction.sentence_id, key)


def score_fact_based(
    extractions: list[SystemExtraction],
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
    unknown_sentences: str = "strict",
) -> ScoreReport:
    """Score extractions by exact fact matching.

    ``unknown_sentences`` is ``"strict"`` (raise on an extraction whose
    sentence is not in the benchmark) or ``"fp"`` (count it as a false
    positive; silently dropping it would inflate precision).
    """
    if unknown_sentences not in ("strict", "fp"):
        raise ValueError(f"unknown_sentences must be 'strict' or 'fp': {unknown_sentences!r}")
    index = build_gold_index(benchmark, cfg, lim)

    covered: set[tuple[str, str]] = set()
    matched: list[tuple[int, str, str]] = []
    fp_by_sentence: Counter[str] = Counter()
    fp = 0
    for i, extraction in enumerate(extractions):
        if not index.has_sentence(extraction.sentence_id):
            if unknown_sentences == "strict":
                raise UnknownSentence(
                    f"extraction {i} references unknown sentence "
                    f"{extraction.sentence_id!r}"
                )
            fp += 1
            fp_by_sentence[extraction.sentence_id] += 1
            continue
        synset_ids = match_extraction(extraction, index, cfg)
        if synset_ids:
            for synset_id in sorted(synset_ids):
                covered.add((extraction.sentence_id, synset_id))
                matched.append((i, extraction.sentence_id, synset_id))
        else:
            fp += 1
            fp_by_sentence[extraction.sentence_id] += 1

    tp = len(covered)
    fn = index.total_synsets() - tp
    per_sentence: dict[str, tuple[int, int, int]] = {}
    for sid in index.sentence_ids:
        synset_ids = index.synset_ids[sid]
        tp_s = sum(1 for gid in synset_ids if (sid, gid) in covered)
        per_sentence[sid] = (tp_s, fp_by_sentence.pop(sid, 0), len(synset_ids) - tp_s)
    for sid in sorted(fp_by_sentence):  # unknown ids kept in fp mode
        per_sentence[sid] = (0, fp_by_sentence[sid], 0)

    precision, recall, f1 = precision_recall_f1(tp, fp, fn)
    return ScoreReport(
        tp=tp,
        fp=fp,
        fn=fn,
        precision=precision,
        recall=recall,
        f1=f1,
        per_sentence=per_sentence,
        matched=tuple(matched),
    )


def pair_token_overlap(
    extraction: SystemExtraction,
    gold: ConcreteTriple,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
) -> PairScore:
    """Per-slot multiset token intersection, summed over the three slots.

    Multiset (not set) intersection keeps repeated words from being
    over-credited.
    """
    system = extraction.to_concrete()
    matched = 0
    system_total = 0
    gold_total = 0
    for system_slot, gold_slot in zip(system.slots(), gold.slots()):
        system_tokens = Counter(normalize_slot(system_slot, cfg))
        gold_tokens = Counter(normalize_slot(gold_slot, cfg))
        matched += sum((system_tokens & gold_tokens).values())
        system_total += sum(system_tokens.values())
        gold_total += sum(gold_tokens.values())
    return PairScore(
        precision=matched / system_total if system_total else 0.0,
        recall=matched / gold_total if gold_total else 0.0,
    )


def score_token_overlap(
    extractions: list[SystemExtraction],
    gold_triples: dict[str, list[ConcreteTriple]],
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
) -> TokenOverlapReport:
    """Dataset-level token-overlap scores under a greedy 1:1 assignment.

    Per sentence, extraction/gold pairs are assigned in descending pair-F1
    (ties: lower extraction index, then lower gold index). Unassigned
    extractions and gold triples contribute zero to the respective
    numerators but stay in the denominators.
    """
    by_sentence: dict[str, list[int]] = {}
    for i, extraction in enumerate(extractions):
        by_sentence.setdefault(extraction.sentence_id, []).append(i)

    assigned: list[tuple[str, int, int, PairScore]] = []
    precision_sum = 0.0
    recall_sum = 0.0
    for sid, extraction_indices in by_sentence.items():
        golds = gold_triples.get(sid, [])
        if not golds:
            continue
        pairs = []
        for ei in extraction_indices:
            for gi, gold in enumerate(golds):
                score = pair_token_overlap(extractions[ei], gold, cfg)
                pairs.append((-score.f1(), ei, gi, score))
        pairs.sort(key=lambda item: item[:3])
        used_extractions: set[int] = set()
        used_golds: set[int] = set()
        for _, ei, gi, score in pairs:
            if ei in used_extractions or gi in used_golds:
                continue
            used_extractions.add(ei)
            used_golds.add(gi)
            assigned.append((sid, ei, gi, score))
            precision_sum += score.precision
            recall_sum += score.recall

    total_gold = sum(len(triples) for triples in gold_triples.values())
    precision = precision_sum / len(extractions) if extractions else 0.0
    recall = recall_sum / total_gold if total_gold else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    assigned.sort(key=lambda item: item[1])
    return TokenOverlapReport(
        precision=precision, recall=recall, f1=f1, assigned=tuple(assigned)
    )


def benchmark_gold_triples(
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
) -> dict[str, list[ConcreteTriple]]:
    """Per-sentence expanded gold triples, deduplicated, in a stable order."""
    from .shorthand import sorted_expansion

    result: dict[str, list[ConcreteTriple]] = {}
    for sentence in benchmark.sentences:
        seen: dict[str, ConcreteTriple] = {}
        for synset in benchmark.synsets_for(sentence.id):
            for template in synset.triples:
                for triple in sorted_expansion(template, sentence, cfg, lim):
                    seen.setdefault(triple_key(triple, cfg), triple)
        result[sentence.id] = list(seen.values())
    return result


def _contains_subsequence(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    if len(needle) > len(haystack):
        return False
    return any(
        haystack[i : i + len(needle)] == needle
        for i in range(len(haystack) - len(needle) + 1)
    )


def gold_argument_phrases(
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
) -> dict[str, set[tuple[str, ...]]]:
    """Normalized subject/object token sequences of all expanded gold triples."""
    phrases: dict[str, set[tuple[str, ...]]] = {}
    for sentence in benchmark.sentences:
        collected: set[tuple[str, ...]] = set()
        for synset in benchmark.synsets_for(sentence.id):
            for triple in expand_synset(synset, sentence, cfg, lim):
                collected.add(normalize_slot(triple.subject, cfg))
                collected.add(normalize_slot(triple.object, cfg))
        phrases[sentence.id] = collected
    return phrases


def ner_span_phrases(
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
) -> dict[str, set[tuple[str, ...]]]:
    """Maximal NER-labeled token runs per sentence, normalized."""
    phrases: dict[str, set[tuple[str, ...]]] = {}
    for sentence in benchmark.sentences:
        collected: set[tuple[str, ...]] = set()
        run: list[str] = []
        for token in (*sentence.tokens, None):
            if token is not None and token.ner is not NerTag.NONE:
                run.append(token.text)
                continue
            if run:
                collected.add(normalize_slot(run, cfg))
            run = []
        phrases[sentence.id] = collected
    return phrases


def prune_ne_centric(
    extractions: list[SystemExtraction],
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits = DEFAULT_LIMITS,
    containment_targets: str = "gold-arguments",
) -> list[SystemExtraction]:
    """Keep extractions whose subject and object both contain a gold argument.

    Containment is contiguous normalized token subsequence. Extractions for
    sentences with no gold arguments (including unknown sentences) are
    dropped: there is no entity pair they could be about.

    ``containment_targets`` selects what must be contained: the default
    ``"gold-arguments"`` uses the subject/object strings of all expanded
    gold triples (in an entity-centric benchmark those are entities by
    construction); ``"ner-spans"`` uses NER-labeled token runs of the
    sentence instead.
    """
    if containment_targets == "gold-arguments":
        phrases = gold_argument_phrases(benchmark, cfg, lim)
    elif containment_targets == "ner-spans":
        phrases = ner_span_phrases(benchmark, cfg)
    else:
        raise ValueError(
            f"containment_targets must be 'gold-arguments' or 'ner-spans', "
            f"not {containment_targets!r}"
        )
    kept = []
    for extraction in extractions:
        arguments = phrases.get(extraction.sentence_id, set())
        if not arguments:
            continue
        concrete = extraction.to_concrete()
        subject = normalize_slot(concrete.subject, cfg)
        object_ = normalize_slot(concrete.object, cfg)
        if any(_contains_subsequence(subject, arg) for arg in arguments) and any(
            _contains_subsequence(object_, arg) for arg in arguments
        ):
            kept.append(extraction)
    return kept


_SEVERITIES = {
    "EXPLICITNESS_VIOLATION": "error",
    "EMPTY_SYNSET": "error",
    "EMPTY_SLOT": "error",
    "ALL_OPTIONAL_ALTERNATIVE": "error",
    "GOLD_OVERLAP": "warning",
    "ADJACENT_OPTIONAL_REVIEW": "review",
}


_LINT_LIMITS = ExpansionLimits(
    max_variants_per_triple=1 << 20, max_variants_per_synset=1 << 20
)


def lint_gold(
    benchmark: GoldBenchmark,
    cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
    lim: ExpansionLimits | None = None,
) -> list[Diagnostic]:
    """Check a benchmark against the structural annotation guidelines.

    Re-checks constructor invariants too, so gold assembled by other tools
    and deserialized leniently still gets flagged. Diagnostics are ordered
    by sentence, then synset, then code. Linting never fails: synsets too
    large to expand under the (generous) internal bound simply skip the
    overlap comparison.
    """
    if lim is None:
        lim = _LINT_LIMITS
    found: list[tuple[int, int, str, Diagnostic]] = []

    def add(sentence_pos: int, synset_pos: int, sid: str, gid: str, code: str, message: str):
        found.append(
            (
                sentence_pos,
                synset_pos,
                code,
                Diagnostic(_SEVERITIES[code], sid, gid, code, message),
            )
        )

    for s_pos, sentence in enumerate(benchmark.sentences):
        expansions: dict[str, set[str]] = {}
        for g_pos, synset in enumerate(benchmark.synsets_for(sentence.id)):
            if not synset.triples:
                add(s_pos, g_pos, sentence.id, synset.id, "EMPTY_SYNSET", "synset has no triples")
                continue
            expandable = True
            for t_pos, template in enumerate(synset.triples):
                for slot_name, slot in zip(
                    ("subject", "predicate", "object"), template.slots()
                ):
                    where = f"triple {t_pos} {slot_name}"
                    if not slot.alternatives or any(not alt for alt in slot.alternatives):
                        add(s_pos, g_pos, sentence.id, synset.id, "EMPTY_SLOT",
                            f"{where}: empty slot or alternative")
                        expandable = False
                        continue
                    for alt in slot.alternatives:
                        if all(st.optional for st in alt):
                            add(s_pos, g_pos, sentence.id, synset.id,
                                "ALL_OPTIONAL_ALTERNATIVE",
                                f"{where}: alternative could expand to nothing")
                            expandable = False
                        if any(st.token_index >= len(sentence.tokens) for st in alt):
                            add(s_pos, g_pos, sentence.id, synset.id,
                                "EXPLICITNESS_VIOLATION",
                                f"{where}: references a token outside the sentence")
                            expandable = False
                        if any(
                            a.optional and b.optional for a, b in zip(alt, alt[1:])
                        ):
                            add(s_pos, g_pos, sentence.id, synset.id,
                                "ADJACENT_OPTIONAL_REVIEW",
                                f"{where}: adjacent optional tokens expand to mixed "
                                "subsets; review whether all are acceptable")
            if expandable:
                try:
                    expansions[synset.id] = {
                        triple_key(t, cfg)
                        for t in expand_synset(synset, sentence, cfg, lim)
                    }
                except VariantLimitExceeded:
                    pass

        synset_positions = {
            synset.id: pos
            for pos, synset in enumerate(benchmark.synsets_for(sentence.id))
        }
        overlapping: dict[str, set[str]] = {}
        ids = sorted(expansions, key=synset_positions.get)
        for i, gid_a in enumerate(ids):
            for gid_b in ids[i + 1 :]:
                if expansions[gid_a] & expansions[gid_b]:
                    overlapping.setdefault(gid_a, set()).add(gid_b)
                    overlapping.setdefault(gid_b, set()).add(gid_a)
        for gid, partners in overlapping.items():
            add(s_pos, synset_positions[gid], sentence.id, gid, "GOLD_OVERLAP",
                f"shares expanded triples with {sorted(partners)}")

    found.sort(key=lambda item: item[:3])
    return [diagnostic for *_, diagnostic in found]
