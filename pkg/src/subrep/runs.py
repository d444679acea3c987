"""Maximal repetitions (runs), Lyndon offsets and same-root groups.

Runs are found through Lyndon roots: for both the natural and the inverted
alphabet order every run has a Lyndon root that is the longest Lyndon word
starting at its position.  Each such candidate root is extended with two LCE
queries; candidates whose extension reaches twice the root length are runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import numpy as np
from numba import njit

from . import lce as _lce
from .lce import LceIndex
from .word import Word


class Run(NamedTuple):
    beg: int
    end: int
    period: int
    offset: int | None = None
    group: int | None = None

    @property
    def length(self) -> int:
        return self.end - self.beg + 1

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)


class RunGroups(NamedTuple):
    """Per-group run lists: PRSR by start, LRSR by (length, start)."""

    prsr: list[list[Run]]
    lrsr: list[list[Run]]


@njit(cache=True)
def lyndon_ends(s, n, fwd, inverted):
    """ends[i] = last position of the longest Lyndon word starting at i."""
    ends = np.zeros(n + 2, np.int64)
    for i in range(n, 0, -1):
        j = i + 1
        while j <= n:
            h = _lce.lce(fwd, n, i, j)
            if j + h > n:
                # suffix j is a prefix of suffix i, hence smaller
                break
            a = s[i + h]
            b = s[j + h]
            if (a > b) if inverted else (a < b):
                j = ends[j] + 1
            else:
                break
        ends[i] = j - 1
    return ends


@njit(cache=True)
def find_runs(s, n, fwd, bwd):
    """Runs sorted by (beg, period) as arrays (beg, end, period)."""
    cand = np.empty(2 * n + 1, np.int64)
    spans = np.empty(2 * n + 1, np.int64)
    m = 0
    for inverted in (False, True):
        ends = lyndon_ends(s, n, fwd, inverted)
        for i in range(1, n + 1):
            p = ends[i] - i + 1
            if i + p > n:
                continue
            f = _lce.extend_right(s, fwd, n, i, i + p)
            b = _lce.extend_left(s, bwd, n, i - 1, i + p - 1)
            if f + b >= p:
                beg = i - b
                cand[m] = beg * (n + 1) + p
                spans[m] = p + f + b
                m += 1
    order = np.argsort(cand[:m])
    rb = np.empty(m, np.int64)
    re = np.empty(m, np.int64)
    rp = np.empty(m, np.int64)
    k = 0
    last = -1
    for x in range(m):
        key = cand[order[x]]
        if key == last:
            continue
        last = key
        beg = key // (n + 1)
        rb[k] = beg
        rp[k] = key % (n + 1)
        re[k] = beg + spans[order[x]] - 1
        k += 1
    return rb[:k], re[:k], rp[:k]


@njit(cache=True)
def least_rotation(s, start, p, f):
    """Booth's algorithm on the cyclic string s[start..start+p-1].

    ``f`` is scratch space of length >= 2p.  Returns the least index of the
    lexicographically smallest rotation.
    """
    for x in range(2 * p):
        f[x] = -1
    k = 0
    for j in range(1, 2 * p):
        sj = s[start + j % p]
        i = f[j - k - 1]
        while i != -1 and sj != s[start + (k + i + 1) % p]:
            if sj < s[start + (k + i + 1) % p]:
                k = j - i - 1
            i = f[i]
        if i == -1 and sj != s[start + k % p]:
            if sj < s[start + k % p]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % p


@njit(cache=True)
def lyndon_offsets(s, beg, per):
    m = beg.size
    out = np.zeros(m, np.int64)
    if m == 0:
        return out
    f = np.empty(2 * per.max(), np.int64)
    for x in range(m):
        if per[x] > 1:
            out[x] = least_rotation(s, beg[x], per[x], f)
    return out


@njit(cache=True)
def group_ids(beg, per, off, fwd, n):
    """Group id per run; runs share a group iff equal period and equal Lyndon root.

    Ids are assigned in (period, suffix rank of the root) order.
    """
    m = beg.size
    rank = fwd[0]
    keys = np.empty(m, np.int64)
    for x in range(m):
        keys[x] = per[x] * (n + 1) + rank[beg[x] + off[x]]
    order = np.argsort(keys)
    grp = np.empty(m, np.int64)
    g = -1
    for y in range(m):
        x = order[y]
        if y == 0:
            g = 0
        else:
            z = order[y - 1]
            same = per[z] == per[x] and _lce.lce(fwd, n, beg[z] + off[z], beg[x] + off[x]) >= per[x]
            if not same:
                g += 1
        grp[x] = g
    return grp


@njit(cache=True)
def prsr_order(beg, grp, n):
    keys = np.empty(beg.size, np.int64)
    for x in range(beg.size):
        keys[x] = grp[x] * (n + 1) + beg[x]
    return np.argsort(keys)


@njit(cache=True)
def lrsr_order(beg, end, grp, n):
    """Indices sorted by (group, length, beg)."""
    keys = np.empty(beg.size, np.int64)
    span = (n + 1) * (n + 1)
    for x in range(beg.size):
        keys[x] = grp[x] * span + (end[x] - beg[x] + 1) * (n + 1) + beg[x]
    return np.argsort(keys)


@njit(cache=True)
def run_table(s, n, fwd, bwd):
    """All runs with offsets and groups, in PRSR order (group, then beg)."""
    rb, re, rp = find_runs(s, n, fwd, bwd)
    ra = lyndon_offsets(s, rb, rp)
    rg = group_ids(rb, rp, ra, fwd, n)
    order = prsr_order(rb, rg, n)
    return rb[order], re[order], rp[order], ra[order], rg[order]


def compute_runs(w: Word, idx: LceIndex | None = None) -> list[Run]:
    """All maximal repetitions of ``w`` with minimal periods, sorted by (beg, period)."""
    idx = idx or LceIndex(w)
    if w.n < 2:
        return []
    rb, re, rp = find_runs(idx.padded, w.n, idx.forward, idx.backward)
    return [Run(int(b), int(e), int(p)) for b, e, p in zip(rb, re, rp)]


def lyndon_offset(r: Run, w: Word) -> int:
    if r.period == 1:
        return 0
    scratch = np.empty(2 * r.period, np.int64)
    return int(least_rotation(w.padded, r.beg, r.period, scratch))


def group_runs(runs: list[Run], idx: LceIndex) -> RunGroups:
    """Group runs by (period, Lyndon root); offsets are computed when missing."""
    if not runs:
        return RunGroups([], [])
    w = idx.word
    beg = np.array([r.beg for r in runs], np.int64)
    per = np.array([r.period for r in runs], np.int64)
    off = np.array([r.offset if r.offset is not None else lyndon_offset(r, w) for r in runs], np.int64)
    grp = group_ids(beg, per, off, idx.forward, idx.n)
    tagged = [r._replace(offset=int(a), group=int(g)) for r, a, g in zip(runs, off, grp)]
    ngroups = int(grp.max()) + 1
    prsr: list[list[Run]] = [[] for _ in range(ngroups)]
    for r in sorted(tagged, key=lambda r: r.beg):
        prsr[r.group].append(r)
    # bucket sort on length, stable within equal lengths
    buckets: list[list[Run]] = [[] for _ in range(idx.n + 1)]
    for r in sorted(tagged, key=lambda r: r.beg):
        buckets[r.length].append(r)
    lrsr: list[list[Run]] = [[] for _ in range(ngroups)]
    for bucket in buckets:
        for r in bucket:
            lrsr[r.group].append(r)
    return RunGroups(prsr, lrsr)


def annotated_runs(w: Word, idx: LceIndex | None = None) -> list[Run]:
    """Runs with offsets and group ids, sorted by (beg, period)."""
    idx = idx or LceIndex(w)
    runs = compute_runs(w, idx)
    if not runs:
        return []
    groups = group_runs(runs, idx)
    return sorted((r for g in groups.prsr for r in g), key=lambda r: (r.beg, r.period))
