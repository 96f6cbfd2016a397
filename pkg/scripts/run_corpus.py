"""Sweep the bound and cloning checks over the standard corpus and summarise.

    python scripts/run_corpus.py --max-n 4 --random 200 --jobs 4
"""

import argparse
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from threshkit.verify import all_families, check_bounds, check_clone_scaling, random_family


def corpus(max_n, n_random, random_n, max_generators):
    fams = [F for n in range(1, max_n + 1) for F in all_families(n)]
    return fams + [random_family(random_n, max_generators, seed) for seed in range(n_random)]


def one(args):
    F, K, width, ks = args
    rep = check_bounds(F, K, width)
    scaling = [check_clone_scaling(F, k, width, include_qf=False).ok for k in ks]
    return str(F), rep.verdicts, all(scaling)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--random-n", type=int, default=5)
    ap.add_argument("--max-generators", type=int, default=8)
    ap.add_argument("-K", type=Fraction, default=Fraction(16))
    ap.add_argument("--width", type=Fraction, default=Fraction(1, 2**20))
    ap.add_argument("-k", type=int, action="append", help="cloning factors (default 2 and 3)")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    ks = args.k or [2, 3]

    fams = corpus(args.max_n, args.random, args.random_n, args.max_generators)
    work = [(F, args.K, args.width, ks) for F in fams]
    t0 = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(one, work, chunksize=8))
    else:
        results = [one(w) for w in work]

    tally = Counter()
    bad_scaling = []
    for name, verdicts, scaling_ok in sorted(results):
        for key, v in verdicts.items():
            tally[key.split(":")[0], v] += 1
        if not scaling_ok:
            bad_scaling.append(name)
    print(f"{len(fams)} families in {time.perf_counter() - t0:.1f}s")
    for (check, verdict), count in sorted(tally.items()):
        print(f"  {check:<12} {verdict:<20} {count}")
    print(f"cloning residuals excluding 0: {len(bad_scaling)}")
    for name in bad_scaling:
        print("  ", name)


if __name__ == "__main__":
    main()
