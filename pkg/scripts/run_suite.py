"""Run the acceptance matrix and write JSON and CSV reports.

    python3 scripts/run_suite.py --digits 60 --out-dir results/
"""

import argparse
import pathlib
import sys

from atanforge import suite
from atanforge.precision import PrecisionContext
from atanforge.report import rows_to_csv, to_json


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--digits", type=int, default=60)
    p.add_argument("--seed", type=int, default=suite.DEFAULT_SEED)
    p.add_argument("--no-scaling", action="store_true")
    p.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("results"))
    args = p.parse_args()

    ctx = PrecisionContext(args.digits)
    result = suite.run_suite(ctx, seed=args.seed, scaling=not args.no_scaling,
                             progress=lambda c: print(f"criterion {c.number}: "
                                                      f"{'PASS' if c.passed else 'FAIL'} "
                                                      f"({len(c.failures)}/{len(c.checks)} failing, "
                                                      f"{c.elapsed_ms / 1000:.1f} s)", flush=True))
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "suite.json").write_text(to_json(result.to_dict(ctx)), encoding="utf-8")
    (args.out_dir / "suite.csv").write_text(rows_to_csv(result.rows(ctx)), encoding="utf-8", newline="")
    print(f"wrote {args.out_dir}/suite.json and suite.csv")
    return 0 if result.passed else 1


if __name__ == "__main__":
    sys.exit(main())
