"""Rebuild the invariance table from the bundled scenarios and print it."""

from __future__ import annotations

import argparse
import sys

from invprob.scenarios import run_table


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    t = run_table(seed=args.seed)
    print(t.to_json() if args.json else t.to_text())
    print(f"\n{t.seconds:.1f}s", file=sys.stderr)
    return 0 if t.ok else 1


if __name__ == "__main__":
    sys.exit(main())
