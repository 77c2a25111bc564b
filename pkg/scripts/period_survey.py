"""Count periodic and aperiodic theta over small (m, n), exhaustively or by sampling."""
import argparse
import itertools
import random
from collections import Counter

from kg2.core import make_theta, random_theta
from kg2.periodicity import AperiodicityCertificate, DegeneratePeriodicity, PeriodWitness, find_period


def all_thetas(m, n):
    keys = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for images in itertools.permutations(keys):
        yield make_theta(m, n, dict(zip(keys, images)))


def survey(m, n, bound, samples, seed):
    if samples:
        rng = random.Random(seed)
        thetas = (random_theta(m, n, rng) for _ in range(samples))
    else:
        thetas = all_thetas(m, n)
    counts = Counter()
    for G in thetas:
        res = find_period(G, bound, bound)
        if isinstance(res, PeriodWitness):
            counts[f"period ({res.a},-{res.b})"] += 1
        elif isinstance(res, DegeneratePeriodicity):
            counts["degenerate"] += 1
        elif isinstance(res, AperiodicityCertificate):
            counts["aperiodic up to bounds"] += 1
    return counts


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--samples", type=int, default=0, help="0 means every theta")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    counts = survey(args.m, args.n, args.bound, args.samples, args.seed)
    total = sum(counts.values())
    print(f"m={args.m} n={args.n} bound={args.bound}: {total} theta")
    for key, c in sorted(counts.items()):
        print(f"  {key}: {c}")


if __name__ == "__main__":
    main()
