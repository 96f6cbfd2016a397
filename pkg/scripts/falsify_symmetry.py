"""Random search for invariant families whose cheapest covers are all asymmetric.

    python scripts/falsify_symmetry.py --n 4 --group symmetric --trials 300 --seed 1
"""

import argparse

from threshkit.cover import PermutationGroup
from threshkit.verify import falsify_symmetry


def group(name, n):
    if name == "trivial":
        return PermutationGroup.trivial(n)
    if name == "swap":
        return PermutationGroup(((0, 2, 1) + tuple(range(3, n)),), n)
    if name == "cycle":
        return PermutationGroup((tuple(list(range(1, n)) + [0]),), n)
    return PermutationGroup.symmetric(n)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--group", choices=("trivial", "swap", "cycle", "symmetric"), default="swap")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--max-generators", type=int, default=4)
    args = ap.parse_args()
    found = falsify_symmetry(args.n, group(args.group, args.n), args.trials, args.seed, args.max_generators)
    print(f"{len(found)} witnesses")
    for F, q in found:
        print(f"  {F} at q = {q}")


if __name__ == "__main__":
    main()
