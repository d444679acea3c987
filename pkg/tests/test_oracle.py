import ast
import itertools
import pathlib
import random

import numpy as np
import pytest

from subrep import OracleSizeError, Word
from subrep import oracle
from subrep.oracle import (brute_max_repeats, brute_pair_repeats, brute_principal, brute_runs,
                           brute_subrepetitions, brute_subrepetitions_by_repeats,
                           maximal_factors, select_delta)

from .conftest import DELTAS, block_word


def triples(subs):
    return sorted((x.beg, x.end, x.period) for x in subs)


def naive_subrepetitions(seq, delta):
    """Straight from the definition: every factor, period by shift check."""
    from fractions import Fraction
    d = Fraction(delta)
    n = len(seq)
    s = [-1] + list(seq) + [-2]
    out = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = s[i : j + 1]
            p = next(q for q in range(1, len(v) + 1)
                     if all(v[k] == v[k + q] for k in range(len(v) - q)))
            e = Fraction(len(v), p)
            if not (1 + d <= e < 2):
                continue
            if s[i - 1] == s[i - 1 + p] or s[j + 1] == s[j + 1 - p]:
                continue
            out.append((i, j, p))
    return sorted(out)


def test_isolated_from_fast_path():
    tree = ast.parse(pathlib.Path(oracle.__file__).read_text())
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert imported.isdisjoint({"lce", "runs", "repeats", "pairs", "stages"})


def test_w1():
    w = Word.from_text("ababababcababababab")
    assert triples(brute_subrepetitions(w, "1/2")) == [
        (1, 17, 9), (1, 19, 11), (3, 15, 7), (5, 13, 5), (7, 11, 3)]


def test_abaab():
    assert triples(brute_subrepetitions(Word.from_text("abaab"), "1/2")) == [(1, 3, 2), (1, 5, 3)]


def test_definition_exhaustive_small():
    for n in range(9):
        for tup in itertools.product((0, 1, 2), repeat=n) if n <= 6 else itertools.product((0, 1), repeat=n):
            w = Word(tup)
            for d in DELTAS:
                assert triples(brute_subrepetitions(w, d)) == naive_subrepetitions(tup, d)


def test_compiled_and_python_scans_agree():
    rng = random.Random(1)
    for _ in range(300):
        w = Word(block_word(rng) if rng.random() < 0.5 else [rng.randrange(3) for _ in range(rng.randint(0, 80))])
        a = maximal_factors(w, compiled=True)
        b = maximal_factors(w, compiled=False)
        assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))


def test_two_oracles_agree():
    rng = random.Random(2)
    for _ in range(300):
        w = Word(block_word(rng))
        d = rng.choice(DELTAS)
        assert triples(brute_subrepetitions(w, d, compiled=True)) == triples(
            brute_subrepetitions_by_repeats(w, d))


def test_select_delta_is_monotone():
    rng = random.Random(3)
    for _ in range(50):
        f = maximal_factors(Word(block_word(rng)))
        sets = [select_delta(f, d) for d in ("1/10", "1/3", "1/2", "3/4")]
        assert all(a >= b for a, b in zip(sets, sets[1:]))
    assert select_delta(np.zeros((0, 3), np.int64), "1/2") == set()


def test_max_repeats_are_maximal():
    w = Word.from_text("ababaabaaababab")
    s = [-1] + w.symbols.tolist() + [-2]
    for r in brute_max_repeats(w):
        b, p, c = r
        assert s[b : b + c] == s[b + p : b + p + c]
        assert s[b - 1] != s[b - 1 + p] and s[b + c] != s[b + c + p]
    assert [tuple(r) for r in brute_max_repeats(w, 7)] == [(1, 7, 1), (3, 7, 3)]


def test_brute_runs():
    w = Word.from_text("ababaabaaababab")
    assert len(brute_runs(w)) == 6


def test_brute_principal():
    w = Word.from_text("aaaaaaaaabaaaaaaaaaaaa")
    assert brute_principal(w, (1, 10, 9))
    assert brute_principal(w, (11, 1, 11))
    assert not brute_principal(w, (1, 14, 8))


def test_brute_pair_repeats():
    w1 = Word.from_text("ababababcababababab")
    got = brute_pair_repeats(w1, (1, 8, 2), (10, 19, 2), "periodic")
    assert sorted(r.period for r in got) == [7, 9, 11, 13]
    w5 = Word.from_text("a" * 9 + "b" + "a" * 12)
    assert len(brute_pair_repeats(w5, (1, 9, 1), (11, 22, 1), "periodic")) == 16
    assert [tuple(r) for r in brute_pair_repeats(w5, (1, 9, 1), (11, 22, 1), "nondominating", "1/2")] == [(1, 14, 8)]
    with pytest.raises(ValueError):
        brute_pair_repeats(w5, (1, 9, 1), (11, 22, 1), "sideways")


def test_size_cap(monkeypatch):
    monkeypatch.setenv("SUBREP_ORACLE_CAP", "10")
    with pytest.raises(OracleSizeError):
        brute_subrepetitions(Word.from_text("a" * 11), "1/2")
    assert brute_subrepetitions(Word.from_text("a" * 10), "1/2") == []


def test_single_period_scan_and_nondominating_third():
    w1 = Word.from_text("ababababcababababab")
    assert [tuple(r) for r in brute_max_repeats(w1, 9)] == [(1, 9, 8)]
    assert [tuple(r) for r in brute_pair_repeats(w1, (1, 8, 2), (10, 19, 2), "nondominating")] == [(1, 13, 6)]
    assert brute_pair_repeats(w1, (1, 8, 2), (10, 19, 2), "nondominating", "1/2") == []
