"""Independent brute-force reference implementations.

These deliberately avoid the library's expansion and scoring code paths:
expansion is done with itertools over explicit optional-token subsets, and
scoring by index-free set membership over fully expanded string triples.
The test suites compare the real implementations against these.
"""

import itertools
import random

from factoie.model import (
    FactSynset,
    GoldBenchmark,
    SlotTemplate,
    SlotToken,
    TaggedSentence,
    Token,
    TripleTemplate,
)


def slot_variants_bruteforce(slot, tokens):
    """Every realization of one slot as a tuple of raw token texts."""
    variants = []
    for alt in slot.alternatives:
        optional_positions = [i for i, st in enumerate(alt) if st.optional]
        for r in range(len(optional_positions) + 1):
            for kept in itertools.combinations(optional_positions, r):
                variants.append(
                    tuple(
                        tokens[st.token_index]
                        for i, st in enumerate(alt)
                        if not st.optional or i in kept
                    )
                )
    return variants


def expand_bruteforce(template, sentence):
    """Pre-dedup list of (subject, predicate, object) raw-text triples."""
    tokens = [t.text for t in sentence.tokens]
    return [
        triple
        for triple in itertools.product(
            slot_variants_bruteforce(template.subject, tokens),
            slot_variants_bruteforce(template.predicate, tokens),
            slot_variants_bruteforce(template.object, tokens),
        )
    ]


def normalize_bruteforce(triple, cfg):
    out = []
    for slot in triple:
        words = list(slot)
        if cfg.strip_terminal_punct and len(words) > 1 and len(words[-1]) == 1:
            import unicodedata

            if unicodedata.category(words[-1]).startswith("P"):
                words = words[:-1]
        if cfg.case_fold:
            words = [w.casefold() for w in words]
        out.append(tuple(words))
    return tuple(out)


def synset_realizations(synset, sentence, cfg):
    """Set of normalized string triples the synset accepts."""
    return {
        normalize_bruteforce(triple, cfg)
        for template in synset.triples
        for triple in expand_bruteforce(template, sentence)
    }


def score_bruteforce(extractions, benchmark, cfg):
    """Fact-based (tp, fp, fn) by direct set membership, no index."""
    accepted = {}  # (sentence id, synset id) -> realization set
    for sentence in benchmark.sentences:
        for synset in benchmark.synsets_for(sentence.id):
            accepted[(sentence.id, synset.id)] = synset_realizations(
                synset, sentence, cfg
            )
    covered = set()
    fp = 0
    for extraction in extractions:
        triple = normalize_bruteforce(
            (
                tuple(extraction.subject.split()),
                tuple(extraction.predicate.split()),
                tuple(extraction.object.split()),
            ),
            cfg,
        )
        hits = [
            key
            for key, realizations in accepted.items()
            if key[0] == extraction.sentence_id and triple in realizations
        ]
        if hits:
            covered.update(hits)
        else:
            fp += 1
    return len(covered), fp, len(accepted) - len(covered)


# -- random instance generators ----------------------------------------------

WORDS = [
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    "india", "juliet", "kilo", "lima", "mike", "november", "oscar", "papa",
    "quebec", "romeo", "sierra", "tango", "uniform", "victor", "whiskey",
    "xray", "yankee", "zulu", "Amber", "Basel", "Cairo", "Dover", "Erie",
    "Fargo", "Galway", "Hanoi", "Izmir", "Jaipur",
]


def random_sentence(rng: random.Random, sentence_id="s1", n_min=6, n_max=14):
    """Random sentence with distinct token texts (greedy alignment is exact)."""
    n = rng.randint(n_min, n_max)
    texts = rng.sample(WORDS, n)
    return TaggedSentence(
        id=sentence_id,
        raw=" ".join(texts),
        tokens=tuple(Token(index=i, text=t) for i, t in enumerate(texts)),
    )


def random_slot(rng: random.Random, sentence, max_alts=3, max_len=4, max_optional=3):
    n = len(sentence.tokens)
    alternatives = []
    for _ in range(rng.randint(1, max_alts)):
        length = rng.randint(1, min(max_len, n))
        indices = sorted(rng.sample(range(n), length))
        optional_count = rng.randint(0, min(max_optional, length - 1))
        optional_at = set(rng.sample(range(length), optional_count))
        alternatives.append(
            tuple(
                SlotToken(idx, position in optional_at)
                for position, idx in enumerate(indices)
            )
        )
    return SlotTemplate(tuple(alternatives))


def random_template(rng: random.Random, sentence, **kwargs):
    return TripleTemplate(
        subject=random_slot(rng, sentence, **kwargs),
        predicate=random_slot(rng, sentence, **kwargs),
        object=random_slot(rng, sentence, **kwargs),
    )


def random_benchmark(rng: random.Random, n_sentences=2, max_synsets=3, max_templates=3):
    sentences = tuple(
        random_sentence(rng, sentence_id=f"s{i + 1}") for i in range(n_sentences)
    )
    synsets = {}
    for sentence in sentences:
        groups = []
        for g in range(rng.randint(0, max_synsets)):
            templates = tuple(
                random_template(rng, sentence, max_alts=2, max_len=3, max_optional=2)
                for _ in range(rng.randint(1, max_templates))
            )
            groups.append(FactSynset(id=f"g{g + 1}", triples=templates))
        if groups:
            synsets[sentence.id] = tuple(groups)
    return GoldBenchmark(sentences=sentences, synsets=synsets)
