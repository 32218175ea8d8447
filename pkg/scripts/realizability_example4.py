"""Score the stateful adder on the fuzzy-3 / fuzzy-7 streams for a sweep of alphas."""

from ffspec import (FuzzyChannel, FuzzyType, UntimedStream, check_alpha_realizable, extend_behavior,
                    realizability_frontier)


def main():
    f3 = FuzzyType.from_pairs("FUZZY3", [(0.5, 2), (1, 3), (0.5, 4)])
    f7 = FuzzyType.from_pairs("FUZZY7", [(0.5, 6), (1, 7), (0.5, 8)])
    b = extend_behavior(lambda a, c: a + c, [FuzzyChannel("i1", f3), FuzzyChannel("i2", f7)], "o")
    inputs = {"i1": UntimedStream.of(2, 3, 4, 3, 3, 4, 2, 3),
              "i2": UntimedStream.of(7, 6, 6, 7, 6, 7, 9, 7)}

    print("output type:", {x: d for x, d in b.output.type.mu.items()})
    out = b(inputs)
    _, rep = check_alpha_realizable(b, inputs, 0)
    print("output stream:", [f"{x:g}" for x in out.elements])
    print("per-tick acceptance:", list(rep.degrees))
    print(f"lower={rep.lower:g} upper={rep.upper:g} mean={rep.mean:g}")
    for alpha in (0.25, 0.5, 0.75, 1.0):
        print(f"alpha={alpha:<4g} realizable={check_alpha_realizable(b, inputs, alpha)[0]}")
    print("frontier:", realizability_frontier(b, inputs))


if __name__ == "__main__":
    main()
