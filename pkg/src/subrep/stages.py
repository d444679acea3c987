"""Maximal δ-subrepetitions via principal α-gapped repeats (α = 1/δ).

A maximal δ-subrepetition is the factor of a maximal α-gapped repeat whose
factor has the repeat's period as minimal period (a principal repeat), and a
repeat is principal iff no other maximal repeat with a smaller period has a
factor containing its own.  Starting from GR, the set of all maximal
α-gapped repeats, three filters leave exactly the principal ones:

1. drop repeats generated by runs (their factor is the run, period p(r));
2. sweep the start positions left to right, keeping per class
   i = floor(log2 p) a staircase of live α-nonperiodic repeats, and drop every
   candidate covered by a staircase entry of its own class or by the running
   maximum ``lep[i]`` of ends inserted into the ⌈log2 α⌉ classes below;
3. drop the third-type nondominating pair-represented repeats (BANR), the
   only non-principal repeats left, whose coverers are all α-periodic.

The whole pipeline runs in one compiled call so that per-word overhead stays
small; :func:`find_subrepetitions` is the entry point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import numpy as np
from numba import njit

from . import lce as _lce
from .errors import DuplicateRepeatError, InternalInvariantError
from .pairs import (MODE_AGAP, MODE_NONDOM, MODE_OVER, alpha_periodic_rows,
                    both_orientations, periodic_rows)
from .repeats import (BEG, COP, OP_DIFFERENCE, OP_INTERSECTION, OP_MARK, OP_UNION,
                      PER, SRC, SRC_PRINCIPAL, PositionLists, annotated_from,
                      first_duplicate, gapped_repeats, generated_rows, merge_rows,
                      principal_rows, rows_from, sort_rows)
from .runs import Run, run_table
from .word import RationalDelta, Word

STAT_FIELDS = ("runs", "gr", "cr", "gr_prime", "agr", "apr", "npr",
               "gr_swept", "banr", "gr_star", "max_tree", "max_alpha_close")


class Subrepetition(NamedTuple):
    beg: int
    end: int
    period: int

    @property
    def length(self) -> int:
        return self.end - self.beg + 1

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.end - self.beg + 1, self.period)


class PipelineStats(NamedTuple):
    runs: int
    gr: int
    cr: int
    gr_prime: int
    agr: int
    apr: int
    npr: int
    gr_swept: int
    banr: int
    gr_star: int
    max_tree: int
    max_alpha_close: int


class SweepResult(NamedTuple):
    survivors: PositionLists
    max_tree: int


@njit(cache=True)
def _log2(p):
    i = 0
    while (p >> (i + 1)) > 0:
        i += 1
    return i


@njit(cache=True)
def sweep(rows, principal, aperiodic, n, K):
    """Stage 2 over key-sorted ``rows`` (gapped GR' members and NPR).

    ``principal[x]`` marks reprincipal rows, which are always inserted;
    ``aperiodic[x]`` marks α-periodic gapped rows, which are tested but never
    inserted.  Returns (keep mask for gapped rows, largest staircase size).
    """
    m = rows.shape[0]
    ncls = _log2(max(n, 1)) + 1
    lep = np.zeros(ncls + K + 1, np.int64)
    cap = 64
    tp = np.empty((ncls, cap), np.int64)
    te = np.empty((ncls, cap), np.int64)
    st = np.zeros(ncls, np.int64)
    sz = np.zeros(ncls, np.int64)
    keep = np.zeros(m, np.bool_)
    most = 0
    last = -1
    for x in range(m):
        t = rows[x, BEG]
        if t != last:
            # entries ending at or before t cannot cover anything from t on
            for i in range(ncls):
                while sz[i] > 0 and te[i, st[i]] <= t:
                    st[i] += 1
                    sz[i] -= 1
            last = t
        P = rows[x, PER]
        E = t + P + rows[x, COP] - 1
        i = _log2(P)
        lo = st[i]
        hi = st[i] + sz[i]
        while lo < hi:
            mid = (lo + hi) >> 1
            if tp[i, mid] < P:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        covered = pos > st[i] and te[i, pos - 1] >= E
        if principal[x]:
            if covered:
                raise InternalInvariantError("reprincipal repeat covered inside its class")
        else:
            if E <= lep[i] or covered:
                continue
            keep[x] = True
            if aperiodic[x]:
                continue
        # insert (P, E) at pos, dropping following entries with end <= E
        stop = st[i] + sz[i]
        j = pos
        while j < stop and te[i, j] <= E:
            j += 1
        dropped = j - pos
        if dropped == 0:
            if stop == tp.shape[1]:
                if st[i] > 0:
                    base = st[i]
                    for y in range(sz[i]):
                        tp[i, y] = tp[i, base + y]
                        te[i, y] = te[i, base + y]
                    st[i] = 0
                    pos -= base
                    stop -= base
                else:
                    cap = 2 * tp.shape[1]
                    ntp = np.empty((ncls, cap), np.int64)
                    nte = np.empty((ncls, cap), np.int64)
                    ntp[:, : tp.shape[1]] = tp
                    nte[:, : te.shape[1]] = te
                    tp = ntp
                    te = nte
            for y in range(stop, pos, -1):
                tp[i, y] = tp[i, y - 1]
                te[i, y] = te[i, y - 1]
            sz[i] += 1
        else:
            shift = dropped - 1
            if shift:
                for y in range(pos + 1, stop - shift):
                    tp[i, y] = tp[i, y + shift]
                    te[i, y] = te[i, y + shift]
                sz[i] -= shift
        tp[i, pos] = P
        te[i, pos] = E
        if sz[i] > most:
            most = sz[i]
        for k in range(i + 1, i + K + 1):
            if lep[k] < E:
                lep[k] = E
    return keep, most


@njit(cache=True)
def _no_duplicates(rows):
    x = first_duplicate(rows)
    if x >= 0:
        raise DuplicateRepeatError("duplicate repeat key in a repeat set")


@njit(cache=True)
def pipeline(s, sr, n, num, den, K):
    """Principal maximal α-gapped repeats of the padded word ``s`` (reverse ``sr``).

    Returns (GR* rows, stats) with stats ordered as ``STAT_FIELDS``.
    """
    fwd = _lce.build(s, n)
    bwd = _lce.build(sr, n)
    ft = run_table(s, n, fwd, bwd)
    rt = run_table(sr, n, bwd, fwd)
    rb, re, rp = ft[0], ft[1], ft[2]
    gr = gapped_repeats(s, n, fwd, bwd, num, den)
    cr = generated_rows(rb, re, rp, num, den, n)
    # stage 1
    grp, _ = merge_rows(gr, cr, OP_DIFFERENCE)
    pr = principal_rows(rb, re, rp, n)
    birep, close = both_orientations(s, sr, ft, rt, n, num, den, MODE_AGAP)
    _no_duplicates(birep)
    periodic, _ = merge_rows(birep, periodic_rows(cr), OP_UNION)
    agr = alpha_periodic_rows(periodic, num, den)
    over, _ = both_orientations(s, sr, ft, rt, n, num, den, MODE_OVER)
    _no_duplicates(over)
    apr, _ = merge_rows(pr, alpha_periodic_rows(over, num, den), OP_INTERSECTION)
    npr, _ = merge_rows(pr, apr, OP_DIFFERENCE)
    # stage 2
    items, _ = merge_rows(grp, npr, OP_UNION)
    _no_duplicates(items)
    _, aper = merge_rows(items, agr, OP_MARK)
    principal = items[:, SRC] == SRC_PRINCIPAL
    keep, most = sweep(items, principal, aper, n, K)
    swept = items[keep]
    # stage 3
    banr, _ = both_orientations(s, sr, ft, rt, n, num, den, MODE_NONDOM)
    star, _ = merge_rows(swept, banr, OP_DIFFERENCE)
    stats = np.array([rb.size, gr.shape[0], cr.shape[0], grp.shape[0], agr.shape[0],
                      apr.shape[0], npr.shape[0], swept.shape[0], banr.shape[0],
                      star.shape[0], most, close], np.int64)
    return star, stats


def _as_word(w) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.from_text(w)
    return Word(w)


def _empty_stats() -> PipelineStats:
    return PipelineStats(*([0] * len(STAT_FIELDS)))


def to_subrepetitions(rows, presorted: bool = False) -> list[Subrepetition]:
    """(beg, p, c) -> (beg, beg + p + c - 1, p), sorted by (beg, p); exponent is (p + c)/p."""
    if isinstance(rows, PositionLists):
        presorted = True
        rows = rows.rows
    elif not isinstance(rows, np.ndarray):
        rows = rows_from(rows)
    if rows.shape[0] == 0:
        return []
    if not presorted:
        rows = sort_rows(np.ascontiguousarray(rows, dtype=np.int64), int(rows[:, BEG].max()) + 1)
    table = np.stack([rows[:, BEG], rows[:, BEG] + rows[:, PER] + rows[:, COP] - 1,
                      rows[:, PER]], axis=1).tolist()
    return [Subrepetition(*t) for t in table]


def find_subrepetitions_with_stats(w, delta) -> tuple[list[Subrepetition], PipelineStats]:
    w = _as_word(w)
    delta = RationalDelta.of(delta)
    if w.n < 2:
        return [], _empty_stats()
    rows, stats = pipeline(w.padded, w.padded_reversed, w.n, delta.num, delta.den,
                           delta.log2_alpha_ceil)
    return to_subrepetitions(rows, presorted=True), PipelineStats(*stats.tolist())


def find_subrepetitions(w, delta) -> list[Subrepetition]:
    """All maximal δ-subrepetitions of ``w`` (1 + δ <= exponent < 2), by (beg, period).

    ``delta`` may be a RationalDelta, Fraction, "num/den" or decimal string;
    values outside (0, 1) raise DeltaRangeError.
    """
    return find_subrepetitions_with_stats(w, delta)[0]


# ---------------------------------------------------------------------------
# stage-level interface, used by tests and for inspection


def stage1_remove_generated(gr: PositionLists, runs: list[Run], delta) -> PositionLists:
    """GR' = GR minus the repeats generated by runs."""
    delta = RationalDelta.of(delta)
    rb = np.array([r.beg for r in runs], np.int64)
    re = np.array([r.end for r in runs], np.int64)
    rp = np.array([r.period for r in runs], np.int64)
    cr = generated_rows(rb, re, rp, delta.num, delta.den, gr.n)
    rows, _ = merge_rows(gr.rows, cr, OP_DIFFERENCE)
    return PositionLists(rows, gr.n)


def stage2_sweep(gr_prime: PositionLists, npr: PositionLists, agr: PositionLists,
                 delta) -> SweepResult:
    """Remove gapped repeats covered by α-nonperiodic gapped or reprincipal repeats."""
    delta = RationalDelta.of(delta)
    n = max(gr_prime.n, npr.n)
    items, _ = merge_rows(gr_prime.rows, npr.rows, OP_UNION)
    _no_duplicates(items)
    _, principal = merge_rows(items, npr.rows, OP_MARK)
    _, aper = merge_rows(items, agr.rows, OP_MARK)
    keep, most = sweep(items, principal, aper, n, delta.log2_alpha_ceil)
    return SweepResult(PositionLists(items[keep], n), int(most))


def stage3_remove_banr(swept: PositionLists, banr) -> PositionLists:
    """GR* = GR'' minus BANR."""
    b = banr.rows if isinstance(banr, PositionLists) else sort_rows(rows_from(banr), swept.n)
    rows, _ = merge_rows(swept.rows, b, OP_DIFFERENCE)
    return PositionLists(rows, swept.n)


def principal_repeats(w, delta):
    """GR* as annotated repeats (the principal maximal α-gapped repeats)."""
    w = _as_word(w)
    delta = RationalDelta.of(delta)
    if w.n < 2:
        return []
    rows, _ = pipeline(w.padded, w.padded_reversed, w.n, delta.num, delta.den,
                       delta.log2_alpha_ceil)
    return annotated_from(rows)


def timed_stages(w, delta) -> tuple[list[Subrepetition], PipelineStats, dict[str, float]]:
    """The pipeline split into separately timed compiled steps (for benchmarking).

    Produces the same result as :func:`find_subrepetitions`; times are seconds.
    """
    import time

    w = _as_word(w)
    delta = RationalDelta.of(delta)
    times: dict[str, float] = {}
    if w.n < 2:
        return [], _empty_stats(), times
    n, num, den = w.n, delta.num, delta.den
    s, sr = w.padded, w.padded_reversed
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        times[name] = now - clock
        clock = now

    fwd = _lce.build(s, n)
    bwd = _lce.build(sr, n)
    lap("index")
    ft = run_table(s, n, fwd, bwd)
    rt = run_table(sr, n, bwd, fwd)
    lap("runs")
    gr = gapped_repeats(s, n, fwd, bwd, num, den)
    cr = generated_rows(ft[0], ft[1], ft[2], num, den, n)
    grp, _ = merge_rows(gr, cr, OP_DIFFERENCE)
    pr = principal_rows(ft[0], ft[1], ft[2], n)
    lap("repeats")
    birep, close = both_orientations(s, sr, ft, rt, n, num, den, MODE_AGAP)
    periodic, _ = merge_rows(birep, periodic_rows(cr), OP_UNION)
    agr = alpha_periodic_rows(periodic, num, den)
    over, _ = both_orientations(s, sr, ft, rt, n, num, den, MODE_OVER)
    apr, _ = merge_rows(pr, alpha_periodic_rows(over, num, den), OP_INTERSECTION)
    npr, _ = merge_rows(pr, apr, OP_DIFFERENCE)
    banr, _ = both_orientations(s, sr, ft, rt, n, num, den, MODE_NONDOM)
    lap("pairs")
    items, _ = merge_rows(grp, npr, OP_UNION)
    _, aper = merge_rows(items, agr, OP_MARK)
    keep, most = sweep(items, items[:, SRC] == SRC_PRINCIPAL, aper, n,
                       delta.log2_alpha_ceil)
    swept = items[keep]
    star, _ = merge_rows(swept, banr, OP_DIFFERENCE)
    lap("sweep")
    out = to_subrepetitions(star, presorted=True)
    lap("output")
    stats = PipelineStats(int(ft[0].size), gr.shape[0], cr.shape[0], grp.shape[0],
                          agr.shape[0], apr.shape[0], npr.shape[0], swept.shape[0],
                          banr.shape[0], star.shape[0], int(most), int(close))
    return out, stats, times
