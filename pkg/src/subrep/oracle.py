"""Brute-force reference implementations.

Nothing here touches the LCE index, the run finder or the repeat kernels;
only :class:`Word` and plain character comparisons are used, so agreement
with the fast path is meaningful.

Two independent scans back :func:`brute_subrepetitions`:

* ``factor scan``: for each start i a failure function over w[i..n] gives
  the minimal period of every factor w[i..j]; a factor is reported when its
  exponent lies in [1 + δ, 2) and neither neighbour extends the period.
* ``repeat scan``: every maximal gapped α-gapped repeat from the per-period
  match intervals, kept when the minimal period of its factor is its period.

The factor scan has a pure-Python version and a compiled twin used for large
corpora; the two are cross-checked in the test suite.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import OracleSizeError
from .word import RationalDelta, Word

DEFAULT_CAP = 2048


class _Repeat(NamedTuple):
    beg: int
    period: int
    copylen: int

    @property
    def end(self) -> int:
        return self.beg + self.period + self.copylen - 1


class _Factor(NamedTuple):
    beg: int
    end: int
    period: int


class _Sub(NamedTuple):
    beg: int
    end: int
    period: int

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.end - self.beg + 1, self.period)


def oracle_cap() -> int:
    return int(os.environ.get("SUBREP_ORACLE_CAP", DEFAULT_CAP))


def _check(w: Word) -> list[int]:
    if w.n > oracle_cap():
        raise OracleSizeError(f"word of length {w.n} exceeds oracle cap {oracle_cap()}")
    return w.symbols.tolist()


def _period(seq) -> int:
    """Minimal period by trying every candidate shift."""
    n = len(seq)
    for p in range(1, n + 1):
        if all(seq[k] == seq[k + p] for k in range(n - p)):
            return p
    return n


def _factor_scan_py(s: list[int]) -> list[tuple[int, int, int]]:
    """(beg, end, p) of every maximal factor with exponent in (1, 2), 1-based."""
    n = len(s)
    out = []
    for i in range(n):
        fail = [0] * (n - i)
        b = 0
        for k in range(1, n - i):
            while b and s[i + k] != s[i + b]:
                b = fail[b - 1]
            if s[i + k] == s[i + b]:
                b += 1
            fail[k] = b
            length = k + 1
            p = length - b
            if not (p < length < 2 * p):
                continue
            j = i + k
            if i > 0 and s[i - 1] == s[i - 1 + p]:
                continue
            if j + 1 < n and s[j + 1] == s[j + 1 - p]:
                continue
            out.append((i + 1, j + 1, p))
    return out


@njit(cache=True)
def _factor_scan_nb(s):
    n = s.size
    out = np.empty((max(16, n * 4), 3), np.int64)
    m = 0
    fail = np.zeros(n + 1, np.int64)
    for i in range(n):
        b = 0
        fail[0] = 0
        for k in range(1, n - i):
            while b > 0 and s[i + k] != s[i + b]:
                b = fail[b - 1]
            if s[i + k] == s[i + b]:
                b += 1
            fail[k] = b
            length = k + 1
            p = length - b
            if not (p < length and length < 2 * p):
                continue
            j = i + k
            if i > 0 and s[i - 1] == s[i - 1 + p]:
                continue
            if j + 1 < n and s[j + 1] == s[j + 1 - p]:
                continue
            if m == out.shape[0]:
                bigger = np.empty((2 * m, 3), np.int64)
                bigger[:m] = out
                out = bigger
            out[m, 0] = i + 1
            out[m, 1] = j + 1
            out[m, 2] = p
            m += 1
    return out[:m]


def maximal_factors(w: Word, compiled: bool = True) -> np.ndarray:
    """All maximal factors with exponent in (1, 2) as rows (beg, end, p); δ-free."""
    s = _check(w)
    if compiled:
        return _factor_scan_nb(np.asarray(w.symbols, np.int64))
    rows = _factor_scan_py(s)
    return np.array(rows, np.int64).reshape(-1, 3)


def select_delta(factors: np.ndarray, delta) -> set[tuple[int, int, int]]:
    """Triples from ``maximal_factors`` with exponent >= 1 + δ."""
    delta = RationalDelta.of(delta)
    if factors.size == 0:
        return set()
    length = factors[:, 1] - factors[:, 0] + 1
    ok = length * delta.den >= factors[:, 2] * (delta.den + delta.num)
    return {tuple(int(v) for v in r) for r in factors[ok]}


def brute_subrepetitions(w: Word, delta, compiled: bool = False) -> list[_Sub]:
    """Every maximal δ-subrepetition by a direct scan over all factors."""
    delta = RationalDelta.of(delta)
    triples = select_delta(maximal_factors(w, compiled), delta)
    return [_Sub(b, e, p) for b, e, p in sorted(triples, key=lambda t: (t[0], t[2]))]


def brute_subrepetitions_by_repeats(w: Word, delta) -> list[_Sub]:
    """Second oracle: principal maximal α-gapped repeats, converted to factors."""
    delta = RationalDelta.of(delta)
    s = _check(w)
    out = []
    for r in brute_max_repeats(w):
        if r.copylen >= r.period or r.period * delta.num > r.copylen * delta.den:
            continue
        if _period(s[r.beg - 1 : r.end]) == r.period:
            out.append(_Sub(r.beg, r.end, r.period))
    out.sort(key=lambda t: (t.beg, t.period))
    return out


def brute_max_repeats(w: Word, p_range=None) -> list[_Repeat]:
    """All maximal repeats: per period, each maximal run of matches w[x] = w[x+p]."""
    _check(w)
    s = np.asarray(w.symbols)
    n = w.n
    periods = range(1, n) if p_range is None else (
        [p_range] if isinstance(p_range, int) else p_range)
    out = []
    for p in periods:
        if p < 1 or p >= n:
            continue
        eq = np.concatenate(([False], s[:-p] == s[p:], [False])).astype(np.int8)
        d = np.diff(eq)
        starts = np.flatnonzero(d == 1)
        stops = np.flatnonzero(d == -1)
        out.extend(_Repeat(int(a) + 1, p, int(b - a)) for a, b in zip(starts, stops))
    out.sort(key=lambda r: (r.beg, r.period))
    return out


def brute_runs(w: Word) -> list[_Factor]:
    """Maximal repetitions: overlapped maximal repeats whose factor has period p."""
    s = _check(w)
    out = [
        _Factor(r.beg, r.end, r.period)
        for r in brute_max_repeats(w)
        if r.copylen >= r.period and _period(s[r.beg - 1 : r.end]) == r.period
    ]
    out.sort(key=lambda r: (r.beg, r.period))
    return out


def brute_principal(w: Word, sigma) -> bool:
    """True iff the factor of repeat ``sigma`` = (beg, p, c) has minimal period p."""
    s = w.symbols.tolist()
    beg, p, c = sigma[0], sigma[1], sigma[2]
    return _period(s[beg - 1 : beg + p + c - 1]) == p


def brute_pair_repeats(w: Word, r1, r2, mode: str = "periodic", delta=None) -> list[_Repeat]:
    """Maximal repeats represented by the runs r1, r2 of equal period p.

    A repeat is represented when its left copy lies in the earlier run, its
    right copy in the later one, and c >= 3p.  Modes:

    * ``periodic``: all of them;
    * ``overlapped``: those with c >= period;
    * ``gapped``: c < period, and period <= c/δ when ``delta`` is given;
    * ``nondominating``: gapped ones spanning from beg(r1) to end(r2) that
      are not the shortest-period such repeat.  For |r1| <= |r2| that means
      the left copy ends at least p before end(r1); otherwise the right copy
      starts at least p after beg(r2).
    """
    _check(w)
    if r1[0] > r2[0]:
        r1, r2 = r2, r1
    b1, e1, p = r1[0], r1[1], r1[2]
    b2, e2 = r2[0], r2[1]
    left = e1 - b1 <= e2 - b2
    out = []
    for r in brute_max_repeats(w):
        if r.copylen < 3 * p:
            continue
        if not (b1 <= r.beg and r.beg + r.copylen - 1 <= e1):
            continue
        if not (b2 <= r.beg + r.period and r.end <= e2):
            continue
        gapped = r.copylen < r.period
        if delta is not None:
            d = RationalDelta.of(delta)
            gapped = gapped and r.period * d.num <= r.copylen * d.den
        if mode == "periodic":
            keep = True
        elif mode == "overlapped":
            keep = not (r.copylen < r.period)
        elif mode == "gapped":
            keep = gapped
        elif mode == "nondominating":
            spans = r.beg == b1 and r.end == e2
            tail = (r.beg + r.copylen - 1 <= e1 - p) if left else (r.beg + r.period >= b2 + p)
            keep = gapped and spans and tail
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if keep:
            out.append(r)
    return out
