"""Rewrite the golden CLI reports under tests/golden/ (run from the repository root)."""

import subprocess
import sys
from pathlib import Path

from wittsuper.fixtures import GOLDEN_JOBS

ROOT = Path(__file__).resolve().parent.parent


def main():
    out_dir = ROOT / "tests" / "golden"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, args in GOLDEN_JOBS.items():
        target = out_dir / f"{name}.json"
        proc = subprocess.run([sys.executable, "-m", "wittsuper", *args, "--out", str(target)], cwd=ROOT, capture_output=True, text=True)
        print(f"{name}: exit {proc.returncode}")
        if proc.returncode != 0:
            print(proc.stdout, proc.stderr)


if __name__ == "__main__":
    main()
