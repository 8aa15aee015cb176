"""Drive the command line front end end to end in a scratch directory.

Run:  python3 demos/cli_tour.py
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def effana(*argv, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "effana", *argv],
        capture_output=True,
        text=True,
    )
    label = " ".join(argv)
    print(f"$ effana {label}")
    out = proc.stdout.rstrip("\n")
    if out:
        print("\n".join("  " + line for line in out.splitlines()[:12]))
        if len(out.splitlines()) > 12:
            print(f"  ... ({len(out.splitlines()) - 12} more lines)")
    if proc.returncode != expect:
        print(f"  unexpected exit code {proc.returncode} (wanted {expect})")
        print(proc.stderr)
        sys.exit(1)
    print(f"  -> exit {proc.returncode}")
    print()
    return proc.stdout


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        alg = tmp / "quadrant.json"
        effana("make", "example-4.6", "--out", str(alg))

        mu = tmp / "mu.json"
        doc = {
            "values": {
                "empty": 0, "X+": 1, "X-": 1, "Y+": 5, "Y-": -3, "R2": 2,
            }
        }
        mu.write_text(json.dumps(doc))

        effana("validate", str(alg))
        effana("rdp", str(alg), expect=3)
        effana("check", str(alg), str(mu))
        effana("variation", str(alg), str(mu), "--witness")
        effana("theorems", str(alg), str(mu))
        effana("examples", "lemma-2.2", "--imax", "5", "--witness-count", "10")
        effana("properties", "--sizes", "2")


if __name__ == "__main__":
    main()
