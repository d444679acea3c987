"""Maximal repeats: the α-gapped set GR, run-generated repeats, reprincipal repeats.

Repeat sets travel between compiled kernels as int64 arrays with one row per
repeat and the columns below, sorted by the identity key ``beg * (n + 1) + p``.
Sorting by that key is the same as bucketing by start position and ordering
each bucket by period, which is what :class:`PositionLists` exposes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

import numpy as np
from numba import njit

from . import lce as _lce
from .errors import DuplicateRepeatError
from .lce import LceIndex
from .runs import Run
from .word import RationalDelta, Word

# row layout
BEG, PER, COP, Q, SRC, KIND = range(6)
NCOL = 6

# provenance codes
SRC_SCAN, SRC_GENERATED, SRC_LEFT, SRC_RIGHT, SRC_PRINCIPAL = range(5)
SOURCE_NAMES = {
    SRC_SCAN: "scan",
    SRC_GENERATED: "generated",
    SRC_LEFT: "left-pair",
    SRC_RIGHT: "right-pair",
    SRC_PRINCIPAL: "reprincipal",
}

# Ψ member types
KIND_NONE, KIND_FIRST, KIND_SECOND, KIND_THIRD_DOM, KIND_THIRD_NONDOM = -1, 0, 1, 2, 3
KIND_NAMES = {
    KIND_NONE: None,
    KIND_FIRST: "first",
    KIND_SECOND: "second",
    KIND_THIRD_DOM: "third-dominating",
    KIND_THIRD_NONDOM: "third-nondominating",
}

# merge operations
OP_DIFFERENCE, OP_INTERSECTION, OP_UNION, OP_MARK = range(4)
_OPS = {"difference": OP_DIFFERENCE, "intersection": OP_INTERSECTION,
        "union": OP_UNION, "mark": OP_MARK}


class MaxRepeat(NamedTuple):
    """Maximal repeat: copies ``w[beg..beg+c-1]`` and ``w[beg+p..beg+p+c-1]``."""

    beg: int
    period: int
    copylen: int

    @property
    def end(self) -> int:
        return self.beg + self.period + self.copylen - 1

    @property
    def gapped(self) -> bool:
        return self.copylen < self.period

    @property
    def key(self) -> tuple[int, int]:
        return (self.beg, self.period)

    def alpha_gapped(self, delta: RationalDelta) -> bool:
        return self.period * delta.num <= self.copylen * delta.den


class AnnotatedRepeat(NamedTuple):
    beg: int
    period: int
    copylen: int
    q: int | None = None
    source: str | None = None
    kind: str | None = None

    @property
    def end(self) -> int:
        return self.beg + self.period + self.copylen - 1

    @property
    def gapped(self) -> bool:
        return self.copylen < self.period

    @property
    def periodic(self) -> bool:
        return self.q is not None and 3 * self.q <= self.copylen

    def alpha_periodic(self, delta: RationalDelta) -> bool:
        return self.q is not None and 3 * self.q * delta.den <= self.period * delta.num

    @property
    def repeat(self) -> MaxRepeat:
        return MaxRepeat(self.beg, self.period, self.copylen)


_SRC_CODES = {v: k for k, v in SOURCE_NAMES.items()}
_KIND_CODES = {v: k for k, v in KIND_NAMES.items()}


def rows_from(repeats: Iterable) -> np.ndarray:
    """Pack MaxRepeat/AnnotatedRepeat/tuples into the row layout (unsorted)."""
    out = []
    for r in repeats:
        q = getattr(r, "q", None)
        src = getattr(r, "source", None)
        kind = getattr(r, "kind", None)
        out.append((r[0], r[1], r[2], -1 if q is None else q,
                    _SRC_CODES.get(src, -1), _KIND_CODES.get(kind, KIND_NONE)))
    if not out:
        return np.zeros((0, NCOL), np.int64)
    return np.array(out, np.int64)


def annotated_from(rows: np.ndarray) -> list[AnnotatedRepeat]:
    return [
        AnnotatedRepeat(int(r[BEG]), int(r[PER]), int(r[COP]),
                        None if r[Q] < 0 else int(r[Q]),
                        SOURCE_NAMES.get(int(r[SRC])), KIND_NAMES.get(int(r[KIND])))
        for r in rows
    ]


@njit(cache=True)
def grow(buf, m):
    """Return ``buf`` or a copy with doubled capacity when row ``m`` does not fit."""
    if m < buf.shape[0]:
        return buf
    out = np.empty((2 * buf.shape[0] + 16, buf.shape[1]), np.int64)
    out[: buf.shape[0]] = buf
    return out


@njit(cache=True)
def sort_rows(rows, n):
    keys = np.empty(rows.shape[0], np.int64)
    for x in range(rows.shape[0]):
        keys[x] = rows[x, BEG] * (n + 1) + rows[x, PER]
    return rows[np.argsort(keys, kind="mergesort")]


@njit(cache=True)
def first_duplicate(rows):
    """Index of the first row whose key equals its predecessor's, or -1."""
    for x in range(1, rows.shape[0]):
        if rows[x, BEG] == rows[x - 1, BEG] and rows[x, PER] == rows[x - 1, PER]:
            return x
    return -1


@njit(cache=True)
def merge_rows(a, b, op):
    """Linear two-pointer merge of key-sorted row sets.

    Returns (rows, mask): for OP_MARK the rows are ``a`` and ``mask[x]`` says
    whether ``a[x]`` has a key in ``b``; for the other ops mask is unused.
    Union keeps the row from ``a`` when both sides hold a key.
    """
    na = a.shape[0]
    nb = b.shape[0]
    mask = np.zeros(na, np.bool_)
    out = np.empty((na + nb if op == OP_UNION else na, NCOL), np.int64)
    x = 0
    y = 0
    m = 0
    while x < na or y < nb:
        if x < na and y < nb:
            if a[x, BEG] != b[y, BEG]:
                c = -1 if a[x, BEG] < b[y, BEG] else 1
            elif a[x, PER] != b[y, PER]:
                c = -1 if a[x, PER] < b[y, PER] else 1
            else:
                c = 0
        elif x < na:
            c = -1
        else:
            c = 1
        if c < 0:
            if op == OP_DIFFERENCE or op == OP_UNION:
                out[m] = a[x]
                m += 1
            x += 1
        elif c > 0:
            if op == OP_UNION:
                out[m] = b[y]
                m += 1
            y += 1
        else:
            mask[x] = True
            if op == OP_INTERSECTION or op == OP_UNION:
                out[m] = a[x]
                m += 1
            x += 1
            y += 1
    if op == OP_MARK:
        return a, mask
    return out[:m], mask


@njit(cache=True)
def gapped_repeats(s, n, fwd, bwd, num, den):
    """All maximal α-gapped repeats (c < p, p·num <= c·den) by anchor sampling.

    For period p every qualifying repeat has c >= L = ceil(p·num/den), so its
    left copy contains a multiple of L.  After a hit the scan resumes at the
    first multiple of L past the left copy, so each repeat is found once.
    """
    out = np.empty((max(16, n), NCOL), np.int64)
    m = 0
    for p in range(1, n):
        L = (p * num + den - 1) // den
        if L < 1:
            L = 1
        if L >= p or p + L > n:
            continue
        q = L
        lim = n - p
        while q <= lim:
            if s[q] != s[q + p]:
                q += L
                continue
            f = _lce.extend_right(s, fwd, n, q, q + p)
            b = _lce.extend_left(s, bwd, n, q - 1, q + p - 1)
            beg = q - b
            c = b + f
            if L <= c < p:
                out = grow(out, m)
                out[m, BEG] = beg
                out[m, PER] = p
                out[m, COP] = c
                out[m, Q] = -1
                out[m, SRC] = SRC_SCAN
                out[m, KIND] = KIND_NONE
                m += 1
            last = beg + c - 1
            q = (last // L + 1) * L
    return sort_rows(out[:m], n)


@njit(cache=True)
def generated_rows(rb, re, rp, num, den, n):
    """Gapped α-gapped repeats generated by runs: p = j·p(r), c = |r| - j·p(r)."""
    out = np.empty((16, NCOL), np.int64)
    m = 0
    for x in range(rb.size):
        length = re[x] - rb[x] + 1
        p = rp[x]
        jlo = length // (2 * p) + 1  # gapped: 2jp > |r|
        jhi = (length * den) // ((num + den) * p)  # jp(num + den) <= |r|·den
        for j in range(jlo, jhi + 1):
            out = grow(out, m)
            out[m, BEG] = rb[x]
            out[m, PER] = j * p
            out[m, COP] = length - j * p
            out[m, Q] = p
            out[m, SRC] = SRC_GENERATED
            out[m, KIND] = KIND_NONE
            m += 1
    return sort_rows(out[:m], n)


@njit(cache=True)
def principal_rows(rb, re, rp, n):
    out = np.empty((rb.size, NCOL), np.int64)
    for x in range(rb.size):
        out[x, BEG] = rb[x]
        out[x, PER] = rp[x]
        out[x, COP] = re[x] - rb[x] + 1 - rp[x]
        out[x, Q] = rp[x]
        out[x, SRC] = SRC_PRINCIPAL
        out[x, KIND] = KIND_NONE
    return sort_rows(out, n)


class PositionLists:
    """Repeats bucketed by start position, periods increasing within a bucket.

    ``rows`` is the packed, key-sorted array; ``offsets[t]..offsets[t+1]``
    delimits bucket t.  ``flags`` is an optional per-row boolean mark.
    """

    def __init__(self, rows: np.ndarray, n: int, flags: np.ndarray | None = None):
        self.rows = rows
        self.n = n
        self.flags = flags
        starts = rows[:, BEG] if rows.size else np.zeros(0, np.int64)
        self.offsets = np.searchsorted(starts, np.arange(n + 2), side="left")

    def bucket(self, t: int) -> list[AnnotatedRepeat]:
        if not 1 <= t <= self.n:
            return []
        return annotated_from(self.rows[self.offsets[t] : self.offsets[t + 1]])

    def __len__(self) -> int:
        return int(self.rows.shape[0])

    def __iter__(self) -> Iterator[AnnotatedRepeat]:
        return iter(annotated_from(self.rows))

    def repeats(self) -> list[MaxRepeat]:
        return [MaxRepeat(int(r[BEG]), int(r[PER]), int(r[COP])) for r in self.rows]

    def keys(self) -> set[tuple[int, int]]:
        return {(int(r[BEG]), int(r[PER])) for r in self.rows}

    def marked(self) -> list[AnnotatedRepeat]:
        if self.flags is None:
            return []
        return annotated_from(self.rows[self.flags])


def _checked(rows: np.ndarray, n: int) -> np.ndarray:
    rows = sort_rows(rows, n) if rows.shape[0] else rows
    x = first_duplicate(rows)
    if x >= 0:
        raise DuplicateRepeatError(
            f"duplicate repeat key (beg={rows[x, BEG]}, p={rows[x, PER]})")
    return rows


def build_position_lists(repeats: Iterable, n: int | None = None) -> PositionLists:
    """Bucket repeats by start and period; duplicate (beg, p) keys are an error."""
    rows = repeats if isinstance(repeats, np.ndarray) else rows_from(repeats)
    if n is None:
        n = int((rows[:, BEG] + rows[:, PER] + rows[:, COP] - 1).max()) if rows.size else 0
    return PositionLists(_checked(rows, n), n)


def merge_by_key(a: PositionLists, b: PositionLists, op: str) -> PositionLists:
    """Difference, intersection, union or mark of two position lists, keyed by (beg, p)."""
    code = _OPS[op]
    rows, mask = merge_rows(a.rows, b.rows, code)
    n = max(a.n, b.n)
    if code == OP_MARK:
        return PositionLists(a.rows, n, mask)
    return PositionLists(rows, n)


def compute_gapped_repeats(w: Word, idx: LceIndex | None, delta) -> list[MaxRepeat]:
    """The set GR: every maximal α-gapped repeat of ``w``, sorted by (beg, p)."""
    delta = RationalDelta.of(delta)
    if w.n < 2:
        return []
    idx = idx or LceIndex(w)
    rows = gapped_repeats(idx.padded, w.n, idx.forward, idx.backward, delta.num, delta.den)
    return [MaxRepeat(int(r[BEG]), int(r[PER]), int(r[COP])) for r in rows]


def _run_arrays(runs: list[Run]):
    return (np.array([r.beg for r in runs], np.int64),
            np.array([r.end for r in runs], np.int64),
            np.array([r.period for r in runs], np.int64))


def generated_repeats(r: Run, delta) -> list[AnnotatedRepeat]:
    """Gapped α-gapped repeats spanning run ``r`` with period a multiple of p(r)."""
    delta = RationalDelta.of(delta)
    rows = generated_rows(*_run_arrays([r]), delta.num, delta.den, r.end)
    return annotated_from(rows)


def reprincipal_repeats(runs: list[Run]) -> list[AnnotatedRepeat]:
    """One overlapped repeat (beg(r), p(r), |r| - p(r)) per run."""
    if not runs:
        return []
    n = max(r.end for r in runs)
    return annotated_from(principal_rows(*_run_arrays(runs), n))


def repeat_exponent(r: MaxRepeat) -> Fraction:
    return Fraction(r.period + r.copylen, r.period)
