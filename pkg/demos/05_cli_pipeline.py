"""Drive the full command-line pipeline in-process.

Every subcommand is a plain function of its argv, so the whole
sample -> estimate -> eval -> benchmark flow can run inside one interpreter.
The same commands work verbatim from a shell via the `gwgraphon` entry
point; paths below land in a temporary directory.
"""

import os
import tempfile

from gwgraphon.cli import main

root = tempfile.mkdtemp(prefix="gwgraphon_cli_")
pop = os.path.join(root, "population")
est = os.path.join(root, "estimate.txt")
pgm = os.path.join(root, "estimate.pgm")
scores = os.path.join(root, "scores.csv")
bench = os.path.join(root, "bench.csv")

steps = [
    ["sample", "--graphon", "xy", "--count", "6", "--nodes", "60:100",
     "--seed", "3", "--out", pop],
    ["estimate", "--in", pop, "--method", "gwb", "--outer", "3",
     "--out", est, "--heatmap", pgm],
    ["eval", "--estimate", est, "--truth", "xy", "--metric", "mse",
     "--resolution", "300", "--csv", scores],
    ["eval", "--estimate", est, "--truth", "xy", "--metric", "gw",
     "--resolution", "300", "--csv", scores],
    ["benchmark", "--families", "xy", "--methods", "usvt,naive",
     "--trials", "2", "--count", "4", "--nodes", "40:60",
     "--resolution", "200", "--csv", bench],
]

for argv in steps:
    print("$ gwgraphon " + " ".join(argv))
    code = main(argv)
    assert code == 0, "exit status %d" % code
    print()

print("artifacts under %s:" % root)
for dirpath, _, filenames in sorted(os.walk(root)):
    for name in sorted(filenames):
        path = os.path.join(dirpath, name)
        print("  %-40s %6d bytes"
              % (os.path.relpath(path, root), os.path.getsize(path)))
