"""Time the compiled kernels against their pure-Python twins.

Run from the repository root after installing the package::

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Inputs come from the bundled C(50) presentation and the non-amenability
witness words, so the timings reflect real workloads.
"""
import argparse
import time

import numpy as np

from scring import _pykernels
from scring.construct import build_free_pair, v_word
from scring.cover import automaton
from scring.kernels import as_codes
from scring.measure import small_pieces
from scring.presentation import load_presentation

try:
    from scring import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(quick):
    pres = load_presentation("bundled:c50")
    rs = pres.close()
    pt = small_pieces(rs, pres.tau)
    fp = build_free_pair(rs, pt)
    host = as_codes(v_word(fp.w2, fp.w1, 90, 120 if quick else 180))
    auto = automaton(rs)
    lengths = _pykernels.suffix_lengths(host, auto.delta, auto.depth)
    starts, ends = _pykernels.maximal_spans(lengths)
    child, flag = pt._trie.child, pt.flags("prime")
    relator = as_codes(pres.relations[0].words[0])
    to_id = np.arange(pt._trie.size, dtype=np.int64)
    n = len(host)
    return len(host), {
        "suffix_lengths": lambda k: k.suffix_lengths(host, auto.delta, auto.depth),
        "maximal_spans": lambda k: k.maximal_spans(lengths),
        "greedy_cover": lambda k: k.greedy_cover(starts, ends),
        "min_segments": lambda k: k.min_segments(host, 0, n, child, flag),
        "first_heavy_occurrence": lambda k: k.first_heavy_occurrence(host, starts, ends, child, flag, 13),
        "triangle_ids": lambda k: [k.triangle_ids(relator[i:], child, to_id) for i in range(len(relator))],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="shorter host word")
    args = ap.parse_args()
    size, jobs = workloads(args.quick)
    print(f"host length {size}; best of {args.repeat}")
    print(f"{'kernel':<24}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, job in jobs.items():
        tp = best_of(lambda: job(_pykernels), args.repeat)
        if _kernels is None:
            print(f"{name:<24}{tp:>12.4f}{'n/a':>14}{'':>10}")
            continue
        tc = best_of(lambda: job(_kernels), args.repeat)
        print(f"{name:<24}{tp:>12.4f}{tc:>14.5f}{tp / max(tc, 1e-9):>9.0f}x")


if __name__ == "__main__":
    main()
