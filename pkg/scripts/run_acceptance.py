#!/usr/bin/env python3
"""Run the acceptance gate and show its one-line-per-criterion verdicts.

Equivalent to ``pytest -s tests/test_acceptance.py``; exists so the go/no-go
lines are visible without remembering the capture flag.
"""

import subprocess
import sys
from pathlib import Path


def main() -> int:
    root = Path(__file__).resolve().parent.parent
    return subprocess.call(
        [
            sys.executable, "-m", "pytest",
            "-s", "-v", str(root / "tests" / "test_acceptance.py"),
        ],
        cwd=root,
    )


if __name__ == "__main__":
    sys.exit(main())
