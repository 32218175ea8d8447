"""Compare extracted Moore machines against direct simulation on random specs."""

import argparse
import collections
import random

from ffspec import extract_moore
from ffspec.equivalence import compare_runs, random_component, random_streams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", type=int, default=20)
    ap.add_argument("--streams", type=int, default=100)
    ap.add_argument("--length", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    sizes = collections.Counter()
    mismatches = errors = total = 0
    for _ in range(args.specs):
        comp = random_component(rng)
        m = extract_moore(comp)
        sizes[len(m.states)] += 1
        errors += sum(tr.error is not None for tr in m.transitions.values())
        total += len(m.transitions)
        for _ in range(args.streams):
            if not compare_runs(comp, m, random_streams(comp, rng, rng.randint(1, args.length))):
                mismatches += 1
    print(f"specs={args.specs} runs={args.specs * args.streams} mismatches={mismatches}")
    print(f"state counts: {dict(sorted(sizes.items()))}")
    print(f"error transitions: {errors}/{total}")


if __name__ == "__main__":
    main()
