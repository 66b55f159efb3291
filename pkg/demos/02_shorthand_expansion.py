"""Gold shorthand and its exhaustive expansion.

A complete benchmark lists *every* acceptable realization of each fact.
Writing them out one by one is hopeless, so gold is annotated compactly:
`[token]` marks a token optional, `|` separates alternatives (e.g.
coreferent subjects), and expansion enumerates the full set.
"""

from factoie.model import FactSynset
from factoie.shorthand import (
    expand_synset,
    format_slot_shorthand,
    parse_triple_shorthand,
    sorted_expansion,
)
from factoie.tagger import tag

sentence = tag(
    "Sen. Mitchell is confident he has sufficient votes to block such a "
    "measure with procedural actions.",
    "sent1",
)

rows = [
    ("Sen. Mitchell | he", "is confident he has", "sufficient votes"),
    ("Sen. Mitchell | he", "is confident he has", "sufficient votes to block [such] [a] measure"),
]
templates = tuple(parse_triple_shorthand(s, p, o, sentence) for s, p, o in rows)
synset = FactSynset("f2", templates)

print("One fact, two annotated templates:")
for template in synset.triples:
    print(
        "  (%s ; %s ; %s)"
        % tuple(format_slot_shorthand(slot, sentence) for slot in template.slots())
    )

print()
print("Expanded, the synset accepts these extractions (and only these):")
for template in synset.triples:
    for triple in sorted_expansion(template, sentence):
        print("  (%s ; %s ; %s)" % tuple(" ".join(s) for s in triple.slots()))

expanded = expand_synset(synset, sentence)
print()
print(f"{len(synset.triples)} templates -> {len(expanded)} acceptable surface forms")
print("2 subjects x 1 x 1  +  2 subjects x 1 x 2^2 optional subsets = 2 + 8")
