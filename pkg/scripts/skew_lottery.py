"""Print the weakly translation-invariant conditional probabilities on a few integer sets."""

from __future__ import annotations

import argparse

from invprob.cone import parse_zset, skew_popper

DEFAULT = [
    ("finite:[5]", "finite:[5,9]"),
    ("Lm:0", "Lm:0 | sparse:double-exp"),
    ("sparse:double-exp", "Lm:0 | sparse:double-exp"),
    ("Lm:0", "cofinite-ex:[]"),
    ("Rn:0", "cofinite-ex:[]"),
    ("sparse:double-exp", "sparse:squares"),
    ("sparse:double-exp", "Rn:1"),
]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("pairs", nargs="*", help="A::B literal pairs")
    args = p.parse_args()
    pairs = [tuple(s.split("::", 1)) for s in args.pairs] or DEFAULT
    width = max(len(a) + len(b) for a, b in pairs) + 6
    for a, b in pairs:
        label = f"P({a} given {b})"
        print(f"{label:<{width}} = {skew_popper(parse_zset(a), parse_zset(b))}")


if __name__ == "__main__":
    main()
