"""Run a few representative CLI sweeps and print their summaries.

The dirichlet sweep covers the corner (n, m), where the grid identity fails, so the exit status is 1.
"""

import contextlib
import io
import json
import sys

from atanforge.cli import main as cli

SWEEPS = [
    ["sweep", "th1", "--n", "0:10", "--m", "0:10", "--alpha", "0.1,1,10"],
    ["sweep", "th2", "--n", "1:9:2", "--m", "1:9:2", "--alpha", "0.2,1,5"],
    ["sweep", "th3", "--n", "1:5:2", "--m", "1:5:2", "--theta", "0.3,0.7", "--phi", "0.3,1.2"],
    ["sweep", "bragg", "--x", "0.25:3:0.25"],
    ["sweep", "dirichlet", "--n", "4", "--m", "5", "--x", "1:4", "--y", "1:5", "--a", "1.6"],
]


def main() -> int:
    worst = 0
    for argv in SWEEPS:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli(argv + ["--format", "json", "--workers", "2"])
        s = json.loads(buf.getvalue())["summary"]
        print(f"{' '.join(argv[1:]):<70} exit={code} reports={s['count']} statuses={s['statuses']} "
              f"max_residual={s['max_residual']}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
