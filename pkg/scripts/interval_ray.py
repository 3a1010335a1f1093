"""Walk the unit interval by +r / -1/2 steps (r = sqrt(2)/4) and split the walk into a ray."""

from __future__ import annotations

import argparse
from fractions import Fraction

from invprob.action import BudgetExceeded, Interval, R, TranslateQuad, TranslateRational, partial_orbit_closure, interval_walk
from invprob.equidecomp import ray_decomposition


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("-n", type=int, default=1000, help="number of steps")
    p.add_argument("--prefix", type=int, default=50, help="ray prefix length")
    args = p.parse_args()

    xs = interval_walk(args.n)
    print(f"{len(xs)} points, {len(set(xs))} distinct; first: " + ", ".join(map(str, xs[:6])))
    moves = [TranslateQuad(R), TranslateRational(Fraction(-1, 2))]
    space = Interval(0, 1)
    res = partial_orbit_closure(moves, xs[0], space, budget=args.n)
    kind = "budget exceeded" if isinstance(res, BudgetExceeded) else f"finite ({len(res)} points)"
    print(f"closure of 0 under the two moves: {kind}")

    rd = ray_decomposition(xs[: args.prefix], moves, space)
    for w, pts in rd.pieces.items():
        print(f"  piece moved by {w}: {len(pts)} points")
    print(f"ray check {'passed' if rd.verified else 'FAILED'}; " + "; ".join(rd.notes))


if __name__ == "__main__":
    main()
