import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from subrep import (AnnotatedRepeat, DuplicateRepeatError, MaxRepeat, RationalDelta, Run,
                    Word, build_position_lists, compute_gapped_repeats, compute_runs,
                    generated_repeats, merge_by_key, reprincipal_repeats)
from subrep.oracle import brute_max_repeats

from .conftest import block_word


def brute_gr(w, delta):
    d = RationalDelta.of(delta)
    return sorted((r.beg, r.period, r.copylen) for r in brute_max_repeats(w)
                  if r.copylen < r.period and r.period * d.num <= r.copylen * d.den)


def keys(reps):
    return sorted((r.beg, r.period, r.copylen) for r in reps)


def test_w1_gapped_repeats(w1):
    assert keys(compute_gapped_repeats(w1, None, "1/2")) == [
        (1, 9, 8), (1, 11, 8), (3, 7, 6), (5, 5, 4), (7, 3, 2), (10, 6, 4)]


def test_periodic_word_has_one_gapped_repeat():
    w = Word.from_text("abababababab")
    assert keys(compute_gapped_repeats(w, None, "1/2")) == [(1, 8, 4)]


def test_unary_word(wu):
    assert keys(compute_gapped_repeats(wu, None, "1/3")) == [(1, 3, 1)]


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=80),
       st.sampled_from(["1/10", "1/3", "1/2", "3/4", "2/7"]))
def test_matches_brute(seq, delta):
    w = Word(seq)
    assert keys(compute_gapped_repeats(w, None, delta)) == brute_gr(w, delta)


def test_matches_brute_on_run_heavy_words():
    rng = random.Random(2)
    for _ in range(200):
        w = Word(block_word(rng))
        d = rng.choice(["1/10", "1/4", "1/2", "5/6"])
        assert keys(compute_gapped_repeats(w, None, d)) == brute_gr(w, d)


def test_size_bound():
    rng = random.Random(9)
    for _ in range(200):
        w = Word(block_word(rng))
        d = RationalDelta.of(rng.choice(["1/10", "1/3", "1/2"]))
        assert len(compute_gapped_repeats(w, None, d)) <= 18 * d.alpha * w.n


def test_maxrepeat_properties():
    r = MaxRepeat(3, 7, 6)
    assert r.end == 15 and r.gapped and r.key == (3, 7)
    assert r.alpha_gapped(RationalDelta.of("1/2"))
    assert not MaxRepeat(1, 13, 6).alpha_gapped(RationalDelta.of("1/2"))
    assert not MaxRepeat(1, 2, 3).gapped


def test_annotated_periodicity():
    d = RationalDelta.of("1/2")
    r = AnnotatedRepeat(1, 9, 8, q=1)
    assert r.periodic and r.alpha_periodic(d)
    assert AnnotatedRepeat(1, 9, 8, q=2).periodic
    assert not AnnotatedRepeat(1, 9, 8, q=2).alpha_periodic(d)
    assert not AnnotatedRepeat(1, 9, 5, q=2).periodic


def test_generated_repeats_of_a_run():
    run = Run(1, 12, 2)
    got = [(g.beg, g.period, g.copylen) for g in generated_repeats(run, "1/3")]
    assert got == [(1, 8, 4)]
    got = [(g.beg, g.period, g.copylen) for g in generated_repeats(Run(1, 20, 2), "1/3")]
    assert got == [(1, 12, 8), (1, 14, 6)]
    assert all(g.beg == run.beg and g.end == run.end for g in generated_repeats(run, "1/3"))


def test_generated_repeats_are_maximal_gapped_repeats():
    rng = random.Random(4)
    for _ in range(100):
        w = Word(block_word(rng))
        d = rng.choice(["1/10", "1/3", "1/2"])
        gr = set(keys(compute_gapped_repeats(w, None, d)))
        for run in compute_runs(w):
            for g in generated_repeats(run, d):
                assert (g.beg, g.period, g.copylen) in gr


def test_reprincipal(wp):
    runs = compute_runs(wp)
    rep = reprincipal_repeats(runs)
    assert keys(rep) == sorted((r.beg, r.period, r.length - r.period) for r in runs)
    assert all(not r.gapped for r in rep)


class TestPositionLists:
    def test_buckets_sorted_by_period(self):
        pl = build_position_lists([MaxRepeat(3, 7, 2), MaxRepeat(1, 9, 8), MaxRepeat(3, 5, 2)], 20)
        assert [r.period for r in pl.bucket(3)] == [5, 7]
        assert pl.bucket(2) == [] and pl.bucket(0) == [] and len(pl) == 3
        assert pl.keys() == {(1, 9), (3, 5), (3, 7)}

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateRepeatError):
            build_position_lists([MaxRepeat(3, 7, 2), MaxRepeat(3, 7, 4)], 20)

    def test_merge_ops(self):
        a = build_position_lists([MaxRepeat(1, 4, 2), MaxRepeat(2, 5, 3), MaxRepeat(4, 4, 1)], 10)
        b = build_position_lists([MaxRepeat(2, 5, 3), MaxRepeat(6, 3, 1)], 10)
        assert merge_by_key(a, b, "difference").keys() == {(1, 4), (4, 4)}
        assert merge_by_key(a, b, "intersection").keys() == {(2, 5)}
        assert merge_by_key(a, b, "union").keys() == {(1, 4), (2, 5), (4, 4), (6, 3)}
        marked = merge_by_key(a, b, "mark")
        assert [(r.beg, r.period) for r in marked.marked()] == [(2, 5)]

    @settings(max_examples=80, deadline=None)
    @given(st.sets(st.tuples(st.integers(1, 12), st.integers(1, 6)), max_size=20),
           st.sets(st.tuples(st.integers(1, 12), st.integers(1, 6)), max_size=20))
    def test_merge_matches_set_algebra(self, ka, kb):
        a = build_position_lists([MaxRepeat(b, p, 1) for b, p in ka], 12)
        b = build_position_lists([MaxRepeat(b, p, 1) for b, p in kb], 12)
        assert merge_by_key(a, b, "difference").keys() == ka - kb
        assert merge_by_key(a, b, "intersection").keys() == ka & kb
        assert merge_by_key(a, b, "union").keys() == ka | kb
        assert {r.repeat.key for r in merge_by_key(a, b, "mark").marked()} == ka & kb

    def test_rows_are_key_sorted(self):
        pl = build_position_lists([MaxRepeat(5, 2, 1), MaxRepeat(1, 9, 1), MaxRepeat(5, 1, 1)], 10)
        k = pl.rows[:, 0] * 11 + pl.rows[:, 1]
        assert np.all(np.diff(k) > 0)
