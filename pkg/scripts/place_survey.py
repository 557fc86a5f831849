#!/usr/bin/env python3
"""Survey every place of small degree: action-polynomial profile, moduli
counts, and the shape of the correspondence graph.

Usage: python scripts/place_survey.py [--q 3] [--max-degree 2] [--m 2]
"""

import argparse
import sys

from drinfeld.basearith import ext_field, finite_field
from drinfeld.carlitz import all_places, carlitz_coefficient_profile
from drinfeld.hecke import build_correspondence


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--m", type=int, default=2)
    args = ap.parse_args(argv)

    field = finite_field(args.q) if args.q in (2, 3, 5, 7) else None
    if field is None:
        for p in (2, 3):
            for e in (2, 3):
                if p ** e == args.q:
                    field = finite_field(p, e)
    if field is None:
        ap.error(f"unsupported q = {args.q}")

    for place in all_places(field, args.max_degree):
        prof = carlitz_coefficient_profile(place)
        corr = build_correspondence(place, args.m)
        f_fixed = sum(1 for p in corr.ordinary
                      if corr.edges_from(p, "F")[0].dst == p)
        print(f"{place}: action poly {prof.poly}")
        print(f"  moduli over F_{ext_field(place, args.m).size}: "
              f"{len(corr.ordinary)} ordinary, "
              f"{len(corr.supersingular)} supersingular; "
              f"{len(corr.edges)} edges, {f_fixed} fixed under the twist")
    return 0


if __name__ == "__main__":
    sys.exit(main())
