#!/usr/bin/env python3
"""Tabulate how the candidate space grows with the restriction bound.

The closed form counts every (event subset, interaction assignment, initial
value) candidate the enumerator has to account for. With nop in the type a
full drain of the region stream examines exactly that many, which --verify
spot-checks against a generated 16-event input.
"""

import argparse
import time

import bnetsynth as b

VERIFY_UNIVERSE = ["X1", "X2", "X3", "X4"]
VERIFY_SETS = [["X1", "X2"], ["X2", "X3"], ["X1", "X4"], ["X1", "X3", "X4"]]


def print_table(event_counts, non_nop, max_d):
    header = ["|E|"] + [f"d={d}" for d in range(max_d + 1)]
    rows = [header]
    for n in event_counts:
        row = [str(n)]
        for d in range(max_d + 1):
            row.append(str(b.candidate_count_formula(n, non_nop, d)))
        rows.append(row)
    widths = [max(len(row[col]) for row in rows)
              for col in range(len(header))]
    for row in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))


def verify_drain(max_d):
    inst = b.build_hs_instance(VERIFY_UNIVERSE, VERIFY_SETS, 2)
    art = b.reduce_t11(inst)
    non_nop = len(art.default_type) - 1
    n = len(art.ts.events)
    print(f"\nfull drain on a generated input "
          f"({len(art.ts.states)} states, {n} events, "
          f"type size {len(art.default_type)}):")
    for d in range(max_d + 1):
        want = b.candidate_count_formula(n, non_nop, d)
        stats = b.EnumerationStats()
        start = time.perf_counter()
        valid = sum(1 for _ in b.enumerate_valid_regions(
            art.ts, art.default_type, d, stats=stats))
        elapsed = time.perf_counter() - start
        mark = "ok" if stats.candidates_examined == want else "MISMATCH"
        print(f"  d={d}: examined {stats.candidates_examined} "
              f"(closed form {want}, {mark}), "
              f"{valid} valid regions, {elapsed:.3f}s")


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="print the closed-form candidate counts per bound")
    parser.add_argument("--events", type=int, nargs="+",
                        default=[4, 8, 12, 16, 20, 24],
                        help="event counts to tabulate")
    parser.add_argument("--non-nop", type=int, default=2, dest="non_nop",
                        help="number of non-nop interactions in the type")
    parser.add_argument("--max-d", type=int, default=6, dest="max_d",
                        help="largest restriction bound")
    parser.add_argument("--verify", action="store_true",
                        help="drain the stream on a generated input and "
                             "compare against the closed form (d up to 4)")
    args = parser.parse_args(argv)

    print_table(args.events, args.non_nop, args.max_d)
    if args.verify:
        verify_drain(min(args.max_d, 4))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
