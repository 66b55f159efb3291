"""The full pipeline on the bundled 10-sentence toy benchmark, via the CLI.

Everything the CLI prints here is byte-deterministic: same files, same
flags, same bytes.
"""

import subprocess
import sys
import tempfile
from importlib import resources
from pathlib import Path

toy = resources.files("factoie.data").joinpath("toy")
workdir = Path(tempfile.mkdtemp(prefix="factoie-demo-"))
for name in ("sentences.txt", "gold.tsv", "system.tsv"):
    (workdir / name).write_bytes(toy.joinpath(name).read_bytes())


def run(*argv):
    print(f"$ factoie {' '.join(argv)}")
    result = subprocess.run(
        [sys.executable, "-m", "factoie.cli", *argv],
        capture_output=True,
        text=True,
        cwd=workdir,
    )
    for stream, prefix in ((result.stdout, ""), (result.stderr, "! ")):
        for line in stream.splitlines():
            print(f"  {prefix}{line}")
    print()


run("score", "gold.tsv", "system.tsv", "--sentences", "sentences.txt")
run("score", "gold.tsv", "system.tsv", "--sentences", "sentences.txt",
    "--mode", "token-overlap")
run("expand", "gold.tsv", "--sentences", "sentences.txt", "--counts-only")
run("lint", "gold.tsv", "--sentences", "sentences.txt")
run("prune", "gold.tsv", "system.tsv", "--sentences", "sentences.txt")
