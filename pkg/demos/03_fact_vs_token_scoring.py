"""Why token overlap misleads, and what exact fact matching does instead.

Four system extractions from one sentence: three state wrong facts but are
built entirely from gold tokens, one states the right fact tersely. Token
overlap gives all four perfect precision and ranks a wrong one highest on
recall. Fact matching against expanded synsets scores them 0,0,0,1.
"""

from factoie.model import ConcreteTriple, SystemExtraction
from factoie.scoring import match_extraction, pair_token_overlap, score_fact_based
from factoie.shorthand import ExpansionLimits, build_gold_index
from factoie.io_formats import import_gold_tsv
from factoie.tagger import tag

RAW = (
    "Sen. Mitchell is confident he has sufficient votes to block such a "
    "measure with procedural actions."
)
SUBJECT = "Sen. Mitchell | he"
GOLD_TSV = "".join(
    line + "\n"
    for line in (
        f"sent1\tf1\t{SUBJECT}\tis\tconfident [he] [has] [sufficient] [votes] "
        "[to] [block] [such] [a] [measure] [with] [procedural] [actions]",
        f"sent1\tf2\t{SUBJECT}\tis confident he has\tsufficient votes",
        f"sent1\tf2\t{SUBJECT}\tis confident he has\tsufficient votes to block "
        "[such] [a] measure",
        f"sent1\tf3\t{SUBJECT}\tis confident he has sufficient votes to block\t"
        "[such] [a] measure",
        f"sent1\tf3\t{SUBJECT}\tis confident he has sufficient votes to block "
        "[such]\t[a] measure",
        f"sent1\tf3\t{SUBJECT}\tis confident he has sufficient votes to block "
        "[such] [a]\tmeasure",
        f"sent1\tf4\t{SUBJECT}\tis confident he has sufficient votes to block "
        "[such] [a] measure with\tprocedural actions",
        f"sent1\tf4\t{SUBJECT}\tis confident he has sufficient votes to block "
        "[such] [a] measure\twith procedural actions",
    )
)

sentence = tag(RAW, "sent1")
benchmark = import_gold_tsv(GOLD_TSV.encode(), [sentence])
limits = ExpansionLimits(max_variants_per_triple=16384)
index = build_gold_index(benchmark, lim=limits)

lenient_gold = ConcreteTriple(
    ("Sen.", "Mitchell"),
    ("is", "confident", "he", "has"),
    tuple("sufficient votes to block such a measure with procedural actions".split()),
)

extractions = [
    SystemExtraction("sent1", "Sen. Mitchell", "is confident he has", obj)
    for obj in (
        "sufficient",
        "sufficient actions",
        "sufficient procedural actions",
        "sufficient votes",
    )
]

print(f"{'object slot':<32} {'overlap P':>9} {'overlap R':>9} {'fact':>5}")
for extraction in extractions:
    pair = pair_token_overlap(extraction, lenient_gold)
    facts = match_extraction(extraction, index)
    print(
        f"{extraction.object:<32} {pair.precision:>9.2f} {pair.recall:>9.2f} "
        f"{1 if facts else 0:>5}"
    )

report = score_fact_based(extractions, benchmark, lim=limits)
print()
print(
    f"fact-based aggregate over {benchmark.total_synsets()} synsets: "
    f"TP {report.tp} FP {report.fp} FN {report.fn} -> "
    f"P {report.precision:.2f} R {report.recall:.2f} F1 {report.f1:.2f}"
)
