#!/usr/bin/env python3
"""Benchmark the compiled n-gram kernels against the pure-Python fallback.

Runs the three kernel entry points on synthetic workloads and prints
wall-clock timings plus the speedup factor. The compiled backend must be
importable for a comparison; otherwise only the pure numbers are shown.

Usage: python bench/benchmark_kernels.py [--repeat N]
"""

import argparse
import random
import string
import time

from mtconstrain._kernels import _pure

try:
    from mtconstrain._kernels import _speed
except ImportError:
    _speed = None


def make_workload(seed=42):
    rng = random.Random(seed)
    vocab = ["".join(rng.choices(string.ascii_lowercase, k=rng.randint(2, 9)))
             for _ in range(500)]
    sentence_pairs = []
    for _ in range(2000):
        n = rng.randint(5, 40)
        hyp = [rng.choice(vocab) for _ in range(n)]
        ref = list(hyp)
        for _ in range(rng.randint(0, n // 3)):
            ref[rng.randrange(n)] = rng.choice(vocab)
        sentence_pairs.append((hyp, ref))
    texts = ["".join(rng.choices(string.ascii_lowercase + " ", k=rng.randint(40, 400)))
             for _ in range(2000)]
    return sentence_pairs, texts


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run(impl, pairs, texts, repeat):
    timings = {}
    timings["token_ngram_stats"] = bench(
        lambda: [impl.token_ngram_stats(h, r, 4) for h, r in pairs], repeat)
    stripped = [(("".join(h), "".join(r))) for h, r in pairs]
    timings["char_ngram_match_stats"] = bench(
        lambda: [impl.char_ngram_match_stats(h, r, 6) for h, r in stripped], repeat)
    timings["count_char_ngrams"] = bench(
        lambda: [impl.count_char_ngrams(t, n) for t in texts for n in (1, 2, 3)], repeat)
    return timings


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best-of (default 3)")
    args = parser.parse_args()

    pairs, texts = make_workload()
    pure_times = run(_pure, pairs, texts, args.repeat)
    speed_times = run(_speed, pairs, texts, args.repeat) if _speed else None

    header = f"{'kernel':<24}{'pure (s)':>10}"
    if speed_times:
        header += f"{'c (s)':>10}{'speedup':>9}"
    print(header)
    for name, pure_t in pure_times.items():
        line = f"{name:<24}{pure_t:>10.4f}"
        if speed_times:
            c_t = speed_times[name]
            line += f"{c_t:>10.4f}{pure_t / c_t:>8.1f}x"
        print(line)
    if not speed_times:
        print("(compiled backend not available; showing pure-Python only)")


if __name__ == "__main__":
    main()
