"""Search for a cyclically reduced relator whose cyclic 2-letter subwords,
together with their inverses, are pairwise distinct. Every piece of such a
relator is a single letter, so it satisfies C(n) for n < length.

    python3 tools/make_c50.py --rank 6 --length 60 --seed 7
"""
import argparse
import random
import sys

from scring.words import Alphabet


def search(rank: int, length: int, rng: random.Random):
    n = 2 * rank
    used: set = set()
    word: list = []

    def pair_ok(a, b):
        return b != a ^ 1 and (a, b) not in used and (b ^ 1, a ^ 1) not in used and (a, b) != (b ^ 1, a ^ 1)

    def dfs():
        if len(word) == length:
            a, b = word[-1], word[0]
            if pair_ok(a, b):
                return True
            return False
        options = list(range(n))
        rng.shuffle(options)
        for c in options:
            if word and not pair_ok(word[-1], c):
                continue
            if word:
                used.add((word[-1], c))
            word.append(c)
            if dfs():
                used.add((word[-1], word[0]))
                return True
            word.pop()
            if word:
                used.discard((word[-1], c))
        return False

    sys.setrecursionlimit(10000)
    return tuple(word) if dfs() else None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank", type=int, default=6)
    ap.add_argument("--length", type=int, default=60)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    w = search(args.rank, args.length, random.Random(args.seed))
    if w is None:
        raise SystemExit("no relator found")
    print(Alphabet.default(args.rank).format(w))


if __name__ == "__main__":
    main()
