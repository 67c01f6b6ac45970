"""
Files and the command line
==========================

Specs and circuits have small text formats; the cyclesmith command wraps the
pipelines.  This script drives the CLI in-process through a temp directory.
"""
import tempfile
from pathlib import Path

from cyclesmith.cli import main
from cyclesmith.formats import parse_circuit

with tempfile.TemporaryDirectory() as tmp:
    d = Path(tmp)
    spec, circ, report = d / "hwb5.spec", d / "hwb5.circ", d / "hwb5.report"
    main(["gen", "hwb", "5", "--out", str(spec)])
    print(spec.read_text()[:80], "...")

    code = main(["synth", str(spec), "--parallel", "3", "--out", str(circ), "--report", str(report)])
    print("synth exit code", code)
    print("".join(report.read_text().splitlines(keepends=True)[:8]))

    print("verify exit code", main(["verify", str(spec), str(circ)]))
    print("gates in file:", len(parse_circuit(circ.read_text())))
    main(["bounds", "10"])
