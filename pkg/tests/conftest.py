import pytest

from factoie.io_formats import AnnotationState, import_gold_tsv
from factoie.model import NormalizationConfig, SystemExtraction
from factoie.shorthand import ExpansionLimits
from factoie.tagger import tag

SENATE_RAW = (
    "Sen. Mitchell is confident he has sufficient votes to block such a "
    "measure with procedural actions."
)

SUBJECT = "Sen. Mitchell | he"

# Gold synsets for the senate sentence. The bracketed whole-phrase object of
# f1 is encoded one optional token at a time.
SENATE_GOLD_TSV = "".join(
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

# The single lenient-benchmark gold extraction for the same sentence.
LENIENT_GOLD = (
    "Sen. Mitchell",
    "is confident he has",
    "sufficient votes to block such a measure with procedural actions",
)

T1 = SystemExtraction("sent1", "Sen. Mitchell", "is confident he has", "sufficient")
T2 = SystemExtraction("sent1", "Sen. Mitchell", "is confident he has", "sufficient actions")
T3 = SystemExtraction(
    "sent1", "Sen. Mitchell", "is confident he has", "sufficient procedural actions"
)
T4 = SystemExtraction("sent1", "Sen. Mitchell", "is confident he has", "sufficient votes")


@pytest.fixture(scope="session")
def senate_sentence():
    return tag(SENATE_RAW, "sent1")


@pytest.fixture(scope="session")
def big_limits():
    # f1 alone expands to 2 * 2**12 = 8192 variants, above the default cap
    return ExpansionLimits(max_variants_per_triple=16384, max_variants_per_synset=65536)


@pytest.fixture(scope="session")
def senate_benchmark(senate_sentence):
    return import_gold_tsv(SENATE_GOLD_TSV.encode(), [senate_sentence])


@pytest.fixture(scope="session")
def senate_state(senate_benchmark):
    return AnnotationState(
        sentences=senate_benchmark.sentences,
        synsets=dict(senate_benchmark.synsets),
        cursor="sent1",
        meta={"annotator": "fixture"},
    )


@pytest.fixture(scope="session")
def default_cfg():
    return NormalizationConfig()
