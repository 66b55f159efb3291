"""Tokenize sentences and highlight tokens of interest.

The bundled tagger is deliberately simple: a verb lexicon for predicate
candidates and a capitalization heuristic for named entities. It exists so
the annotation tool runs standalone; any real tagger can replace it through
the pre-tagged ingestion path shown at the end.
"""

import json

from factoie.tagger import HighlightScheme, TaggerConfig, ingest_pretagged, tag

for raw in (
    "Edmund Barton was born in Australia .",
    "Prof. Michael Jordan lives in USA.",
):
    sentence = tag(raw, "demo")
    print(raw)
    for token in sentence.tokens:
        marker = {"VERB": "v", "NAMED_ENTITY": "N", "NONE": " "}[token.highlight.value]
        print(f"  [{marker}] {token.index:>2} {token.text:<12} pos={token.pos.value:<5} ner={token.ner.value}")
    print()

print("Coloring schemes change only the display class, never the labels:")
for scheme in HighlightScheme:
    cfg = TaggerConfig(highlight_scheme=scheme)
    sentence = tag("Edmund Barton was born in Australia .", "demo", cfg)
    shown = [t.text for t in sentence.tokens if t.highlight.value != "NONE"]
    print(f"  {scheme.value:<15} highlights {shown}")

print()
print("Externally tagged sentences are accepted as JSON, labels mapped down:")
payload = {
    "id": "zh1",
    "raw": "迈克尔·乔丹 出生 在 布鲁克林 。",
    "language": "zh",
    "tokens": [
        {"text": "迈克尔·乔丹", "pos": "NR", "ner": "PER"},
        {"text": "出生", "pos": "VV", "ner": "O"},
        {"text": "在", "pos": "P", "ner": "O"},
        {"text": "布鲁克林", "pos": "NR", "ner": "LOC"},
        {"text": "。", "pos": "PU", "ner": "O"},
    ],
}
sentence = ingest_pretagged(json.dumps(payload).encode())
for token in sentence.tokens:
    print(f"  {token.text:<8} {token.pos.value:<6} {token.ner.value}")
