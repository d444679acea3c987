"""Acceptance gate: one PASS/FAIL line per criterion, printed uncaptured."""

import itertools
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from subrep import (RationalDelta, Word, compute_gapped_repeats, compute_runs,
                    find_subrepetitions, find_subrepetitions_with_stats, generate)
from subrep.oracle import (brute_max_repeats, brute_pair_repeats, brute_runs, maximal_factors,
                           select_delta)
from subrep.pairs import pair_context, psi_enumerate, psi_nondominating
from subrep.word import border_array

from .conftest import DELTAS, WP, block_word

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(tag, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
        assert ok, detail
    return emit


def found(w, d):
    return {(x.beg, x.end, x.period) for x in find_subrepetitions(w, d)}


def warm():
    find_subrepetitions(Word.from_text("abaababaab"), "1/2")
    compute_runs(Word.from_text("abaab"))


def random_delta(rng):
    while True:
        den = rng.randint(2, 1000)
        f = Fraction(rng.randint(1, den - 1), den)
        if Fraction(1, 20) < f < Fraction(19, 20):
            return RationalDelta.of(f)


def random_corpus(count=1000, seed=2024):
    rng = random.Random(seed)
    for _ in range(count):
        sigma = rng.choice([2, 3, 4])
        n = rng.randint(1, 512)
        yield Word([rng.randrange(sigma) for _ in range(n)]), random_delta(rng)


def test_c1_runs_example(report):
    warm()
    t = time.perf_counter()
    runs = compute_runs(Word.from_text(WP))
    dt = time.perf_counter() - t
    factors = sorted(WP[r.beg - 1 : r.end] for r in runs)
    expected = sorted(["ababa", "abaabaa", "aabaaaba", "aa", "aaa", "ababab"])
    report("C1 runs on ababaabaaababab", factors == expected and dt < 1.0,
           f"{len(runs)} runs ({', '.join(factors)}) in {dt * 1e3:.2f} ms")


def test_c2_exhaustive(report):
    warm()
    t = time.perf_counter()
    checked = 0
    bad = []
    for sigma, max_n in ((2, 16), (3, 11)):
        for n in range(max_n + 1):
            for tup in itertools.product(range(sigma), repeat=n):
                w = Word(tup)
                factors = maximal_factors(w)
                for d in DELTAS:
                    checked += 1
                    if found(w, d) != select_delta(factors, d):
                        bad.append((tup, d))
    dt = time.perf_counter() - t
    report("C2 exhaustive binary n<=16, ternary n<=11", not bad and dt < 600,
           f"{checked} cases, {len(bad)} mismatches, {dt:.1f} s"
           + (f", first {bad[0]}" if bad else ""))


def test_c3_random(report):
    warm()
    t = time.perf_counter()
    count = 0
    bad = []
    for w, d in random_corpus():
        count += 1
        if found(w, d) != select_delta(maximal_factors(w), d):
            bad.append((w.symbols.tolist(), d))
    dt = time.perf_counter() - t
    report("C3 random words", count >= 1000 and not bad and dt < 300,
           f"{count} words, {len(bad)} mismatches, {dt:.1f} s")


def test_c4_sub_oracles(report):
    rng = random.Random(44)
    runs_bad = gr_bad = psi_bad = 0
    words = 0
    for w, d in random_corpus():
        words += 1
        if sorted((r.beg, r.end, r.period) for r in compute_runs(w)) != sorted(
                (r.beg, r.end, r.period) for r in brute_runs(w)):
            runs_bad += 1
        fast = sorted(tuple(r) for r in compute_gapped_repeats(w, None, d))
        slow = sorted(tuple(r) for r in brute_max_repeats(w)
                      if r.copylen < r.period and r.period * d.num <= r.copylen * d.den)
        gr_bad += fast != slow
    pairs = 0
    while pairs < 300:
        w = Word(block_word(rng, max_blocks=4, max_p=4))
        runs = compute_runs(w)
        sym = w.symbols.tolist()
        root = lambda r: min(tuple(sym[r.beg - 1 + k : r.beg - 1 + r.period] + sym[r.beg - 1 : r.beg - 1 + k])
                             for k in range(r.period))
        for a, b in itertools.combinations(runs, 2):
            if a.period != b.period or root(a) != root(b):
                continue
            d = rng.choice(DELTAS)
            ctx = pair_context(w, a, b)
            pairs += 1
            if sorted(tuple(r[:3]) for r in psi_enumerate(ctx, d)) != sorted(
                    tuple(r) for r in brute_pair_repeats(w, a, b, "gapped", d)):
                psi_bad += 1
            if sorted(tuple(r[:3]) for r in psi_nondominating(ctx, d)) != sorted(
                    tuple(r) for r in brute_pair_repeats(w, a, b, "nondominating", d)):
                psi_bad += 1
    ok = not (runs_bad or gr_bad or psi_bad)
    report("C4 sub-oracles", ok,
           f"runs {runs_bad}/{words} bad, GR {gr_bad}/{words} bad, Psi {psi_bad} bad over {pairs} pairs")


def test_c5_bounds(report):
    rng = random.Random(55)
    worst = {"runs": 0.0, "exp": 0.0, "gr": 0.0, "out": 0.0}
    ok = True
    corpus = list(itertools.islice(random_corpus(seed=5), 500))
    corpus += [(Word(block_word(rng, max_blocks=10)), random_delta(rng)) for _ in range(500)]
    corpus += [(generate(k, n), RationalDelta.of(d)) for k in ("fibonacci", "thue_morse")
               for n in (100, 1000, 4000) for d in DELTAS]
    for w, d in corpus:
        n = w.n
        runs = compute_runs(w)
        out, stats = find_subrepetitions_with_stats(w, d)
        esum = sum(Fraction(r.end - r.beg + 1, r.period) for r in runs)
        lim = 18 * d.alpha * n
        ok &= len(runs) < n and esum < 3 * n and stats.gr <= lim and len(out) <= lim
        worst["runs"] = max(worst["runs"], len(runs) / n)
        worst["exp"] = max(worst["exp"], float(esum) / n)
        worst["gr"] = max(worst["gr"], stats.gr / float(d.alpha * n))
        worst["out"] = max(worst["out"], len(out) / float(d.alpha * n))
    report("C5 size bounds", ok,
           f"{len(corpus)} words; max |runs|/n={worst['runs']:.3f}, sum e/n={worst['exp']:.3f}, "
           f"|GR|/(alpha n)={worst['gr']:.3f}, |out|/(alpha n)={worst['out']:.3f}")


def test_c6_large_word_validity(report):
    n = 10**6
    w = generate("random", n, 2, seed=6)
    d = RationalDelta(1, 2)
    t = time.perf_counter()
    out = find_subrepetitions(w, d)
    dt = time.perf_counter() - t
    sample = random.Random(6).sample(out, min(10**4, len(out)))
    s = [-1] + w.symbols.tolist() + [-2]
    bad = 0
    for x in sample:
        v = s[x.beg : x.end + 1]
        p = len(v) - border_array(v)[-1]
        e = Fraction(len(v), x.period)
        good = (p == x.period and Fraction(3, 2) <= e < 2
                and s[x.beg - 1] != s[x.beg - 1 + p] and s[x.end + 1] != s[x.end + 1 - p])
        bad += not good
    report("C6 n=10^6 output validity", bad == 0 and len(sample) > 0,
           f"{len(out)} outputs in {dt:.1f} s, {len(sample)} sampled, {bad} invalid")


def test_c7_staircase(report):
    worst = 0.0
    rng = random.Random(77)
    observed = []
    corpus = list(itertools.islice(random_corpus(seed=9), 300))
    corpus += [(Word(block_word(rng, max_blocks=12)), random_delta(rng)) for _ in range(300)]
    corpus += [(generate(k, 1 << 14), RationalDelta.of(dd)) for k in ("fibonacci", "thue_morse")
               for dd in DELTAS]
    corpus += [(generate("random", 1 << 16, sg, seed=sg), RationalDelta.of(dd))
               for sg in (2, 4) for dd in DELTAS]
    for w, d in corpus:
        _, stats = find_subrepetitions_with_stats(w, d)
        observed.append(stats.max_tree)
        worst = max(worst, stats.max_tree / float(d.alpha))
    report("C7 staircase size <= 64 alpha", worst <= 64,
           f"largest tree {max(observed)}, largest tree/alpha {worst:.3f} over {len(corpus)} words")


def test_c8_scaling(report):
    warm()
    d = RationalDelta(1, 2)
    times = {}
    for k in range(16, 21):
        w = generate("random", 1 << k, 2, seed=k)
        best = float("inf")
        for _ in range(3):
            t = time.perf_counter()
            find_subrepetitions(w, d)
            best = min(best, time.perf_counter() - t)
        times[k] = best
    ratios = [times[k + 1] / times[k] for k in range(16, 20)]
    ok = max(ratios) <= 3 and times[20] < 60
    detail = ", ".join(f"2^{k}: {times[k]:.3f}s" for k in times)
    report("C8 scaling", ok, f"{detail}; ratios {', '.join(f'{r:.2f}' for r in ratios)}")
