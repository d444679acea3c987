"""Periodic repeats represented by pairs of same-root runs.

Take runs r' = [b1, e1] and r'' = [b2, e2] of one group (period p, Lyndon
offsets a1, a2) with b1 < b2 and |r'| <= |r''|.  Every maximal repeat whose
copies extend to r' and r'' with period p has a period P congruent to
P0 = b2 - f' modulo p, where f' is the leftmost position after b1 at which
r' carries the prefix root of r''.  Ordered by period these repeats form the
sequence Ψ, which splits into three arithmetic segments:

* first type:  left copy ends at e1, right copy starts at b2, beg > b1
* second type: left copy is all of r', right copy ends before e2
* third type:  beg = b1 and end = e2; its first member dominates the rest

Only members whose copies have length >= 3p belong to Ψ.  A member whose
copies start at b1 and b2 (or end at e1 and e2) at once is only maximal
when the letters just outside the two runs differ; otherwise it extends to
a repeat whose copies are not p-periodic, and it is dropped from Ψ.  Along each
segment the conditions "gapped", "α-gapped" and "overlapped" are linear in
the member index, so the qualifying index range is found in O(1).

Right pairs (|r'| > |r''|) are handled by running the same code on the
reversed word and mapping the results back.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import PairMismatchError
from .lce import LceIndex
from .repeats import (BEG, COP, KIND, KIND_FIRST, KIND_SECOND, KIND_THIRD_DOM,
                      KIND_THIRD_NONDOM, NCOL, PER, Q, SRC, SRC_LEFT, SRC_RIGHT,
                      AnnotatedRepeat, MaxRepeat, annotated_from, grow, sort_rows)
from .runs import Run, least_rotation, run_table
from .word import RationalDelta, Word

MODE_AGAP, MODE_NONDOM, MODE_OVER, MODE_ALL = range(4)


@njit(cache=True)
def psi_params(b1, e1, a1, b2, e2, a2, p):
    """Closed form of Ψ for a left pair.

    Returns (f1, k1, P1, C1, k2, P2, k3, P3, C3): the first segment has
    members (f1 - jp, P1 + jp, C1 + jp), the second (b1, P2 + jp, |r'|) and
    the third (b1, P3 + jp, C3 - jp), with k1, k2, k3 members respectively.
    """
    if a1 > a2:
        fp = b1 + a1 - a2
    else:
        fp = b1 + a1 - a2 + p
    p0 = b2 - fp
    len1 = e1 - b1 + 1
    f1 = fp
    k1 = 0
    if e1 - fp + 1 >= 3 * p:
        f1 = fp + ((e1 - 3 * p + 1 - fp) // p) * p
        k1 = (f1 - fp) // p + 1
    P1 = b2 - f1
    C1 = e1 - f1 + 1
    k2raw = (e2 - e1 - p0 - 1) // p
    if k2raw < 0:
        k2raw = 0
    k2 = k2raw if len1 >= 3 * p else 0
    P2 = p0 + p
    P3 = p0 + (k2raw + 1) * p
    C3 = e2 - b1 + 1 - P3
    k3 = C3 // p - 2 if C3 >= 3 * p else 0
    return f1, k1, P1, C1, k2, P2, k3, P3, C3


@njit(cache=True)
def _lin(A, B, lo, hi):
    """Narrow the index range [lo, hi] to the j satisfying A + B·j <= 0."""
    if B == 0:
        if A > 0:
            return 1, 0
        return lo, hi
    if B > 0:
        # j <= floor(-A / B)
        top = (-A) // B
        return lo, min(hi, top)
    # j >= ceil(A / -B)
    bot = -((-A) // (-B))
    return max(lo, bot), hi


@njit(cache=True)
def segment_range(P, C, sc, p, k, num, den, mode):
    """Index range [lo, hi] of a segment with period P + jp and copy C + sc·jp."""
    lo = 0
    hi = k - 1
    if mode == MODE_AGAP or mode == MODE_NONDOM:
        lo, hi = _lin(C - P + 1, (sc - 1) * p, lo, hi)
        lo, hi = _lin(P * num - C * den, p * (num - sc * den), lo, hi)
    elif mode == MODE_OVER:
        lo, hi = _lin(P - C, (1 - sc) * p, lo, hi)
    return lo, hi


@njit(cache=True)
def _maximal(s, n, b1, e1, b2, e2, beg, per, c):
    if beg == b1 and beg + per == b2 and b1 > 1 and s[b1 - 1] == s[b2 - 1]:
        return False
    if beg + c - 1 == e1 and beg + per + c - 1 == e2 and e2 < n and s[e1 + 1] == s[e2 + 1]:
        return False
    return True


@njit(cache=True)
def _put(buf, m, beg, per, c, q, src, kind):
    buf = grow(buf, m)
    buf[m, BEG] = beg
    buf[m, PER] = per
    buf[m, COP] = c
    buf[m, Q] = q
    buf[m, SRC] = src
    buf[m, KIND] = kind
    return buf, m + 1


@njit(cache=True)
def emit_pair(buf, m, s, n, b1, e1, a1, b2, e2, a2, p, num, den, mode, src):
    """Append the members of Ψ(r', r'') selected by ``mode`` to ``buf``."""
    f1, k1, P1, C1, k2, P2, k3, P3, C3 = psi_params(b1, e1, a1, b2, e2, a2, p)
    len1 = e1 - b1 + 1
    if mode != MODE_NONDOM:
        lo, hi = segment_range(P1, C1, 1, p, k1, num, den, mode)
        for j in range(lo, hi + 1):
            buf, m = _put(buf, m, f1 - j * p, P1 + j * p, C1 + j * p, p, src, KIND_FIRST)
        # first-type members never touch both run starts or both run ends
        lo, hi = segment_range(P2, len1, 0, p, k2, num, den, mode)
        for j in range(lo, hi + 1):
            if _maximal(s, n, b1, e1, b2, e2, b1, P2 + j * p, len1):
                buf, m = _put(buf, m, b1, P2 + j * p, len1, p, src, KIND_SECOND)
    lo, hi = segment_range(P3, C3, -1, p, k3, num, den, mode)
    if mode == MODE_NONDOM and lo < 1:
        lo = 1
    for j in range(lo, hi + 1):
        if not _maximal(s, n, b1, e1, b2, e2, b1, P3 + j * p, C3 - j * p):
            continue
        kind = KIND_THIRD_DOM if j == 0 else KIND_THIRD_NONDOM
        buf, m = _put(buf, m, b1, P3 + j * p, C3 - j * p, p, src, kind)
    return buf, m


@njit(cache=True)
def pair_scan(s, n, num, den, rb, re, rp, ra, rg, mode, strict, src):
    """Ψ members of all relevant left pairs of a run table in PRSR order.

    For the α-gapped modes the pairs are the α-close ones: runs are taken
    by increasing length, each r' is paired with the live runs of its group
    that start after it within α|r'|, then removed from the live list.  For
    MODE_OVER only adjacent runs of a group can overlap, so only those are
    paired.  ``strict`` drops pairs of equal length (used on the reversed
    word, where those pairs were already seen as left pairs).

    Returns (rows, most α-close successors seen for one run).
    """
    m_runs = rb.size
    buf = np.empty((16, NCOL), np.int64)
    m = 0
    most = 0
    if mode == MODE_OVER:
        for x in range(m_runs - 1):
            y = x + 1
            if rg[x] != rg[y] or rb[y] > re[x] + 1:
                continue
            l1 = re[x] - rb[x] + 1
            l2 = re[y] - rb[y] + 1
            if l1 > l2 or (strict and l1 == l2):
                continue
            buf, m = emit_pair(buf, m, s, n, rb[x], re[x], ra[x], rb[y], re[y], ra[y],
                               rp[x], num, den, mode, src)
        return buf[:m], most
    nxt = np.empty(m_runs, np.int64)
    prv = np.empty(m_runs, np.int64)
    for x in range(m_runs):
        nxt[x] = x + 1 if x + 1 < m_runs and rg[x + 1] == rg[x] else -1
        prv[x] = x - 1 if x > 0 and rg[x - 1] == rg[x] else -1
    keys = np.empty(m_runs, np.int64)
    span = (n + 1) * (n + 1)
    for x in range(m_runs):
        keys[x] = rg[x] * span + (re[x] - rb[x] + 1) * (n + 1) + rb[x]
    order = np.argsort(keys)
    for z in range(m_runs):
        x = order[z]
        l1 = re[x] - rb[x] + 1
        y = nxt[x]
        count = 0
        while y != -1 and (rb[y] - rb[x]) * num <= l1 * den:
            count += 1
            l2 = re[y] - rb[y] + 1
            if not (strict and l1 == l2):
                buf, m = emit_pair(buf, m, s, n, rb[x], re[x], ra[x], rb[y], re[y], ra[y],
                                   rp[x], num, den, mode, src)
            y = nxt[y]
        if count > most:
            most = count
        if prv[x] != -1:
            nxt[prv[x]] = nxt[x]
        if nxt[x] != -1:
            prv[nxt[x]] = prv[x]
    return buf[:m], most


@njit(cache=True)
def reverse_rows(rows, n):
    """Map repeats of the reversed word back: beg = n - end* + 1."""
    out = rows.copy()
    for x in range(rows.shape[0]):
        out[x, BEG] = n - (rows[x, BEG] + rows[x, PER] + rows[x, COP] - 1) + 1
        out[x, SRC] = SRC_RIGHT
    return out


@njit(cache=True)
def both_orientations(s, sr, fwd_table, rev_table, n, num, den, mode):
    """Left pairs on the word plus right pairs via the reversed word, key-sorted."""
    rb, re, rp, ra, rg = fwd_table
    left, most_l = pair_scan(s, n, num, den, rb, re, rp, ra, rg, mode, False, SRC_LEFT)
    rb, re, rp, ra, rg = rev_table
    right, most_r = pair_scan(sr, n, num, den, rb, re, rp, ra, rg, mode, True, SRC_LEFT)
    right = reverse_rows(right, n)
    out = np.empty((left.shape[0] + right.shape[0], NCOL), np.int64)
    out[: left.shape[0]] = left
    out[left.shape[0] :] = right
    return sort_rows(out, n), max(most_l, most_r)


@njit(cache=True)
def alpha_periodic_rows(rows, num, den):
    keep = np.zeros(rows.shape[0], np.bool_)
    for x in range(rows.shape[0]):
        keep[x] = 3 * rows[x, Q] * den <= rows[x, PER] * num
    return rows[keep]


@njit(cache=True)
def periodic_rows(rows):
    keep = np.zeros(rows.shape[0], np.bool_)
    for x in range(rows.shape[0]):
        keep[x] = 3 * rows[x, Q] <= rows[x, COP]
    return rows[keep]


# ---------------------------------------------------------------------------
# Python interface


class PairContext(NamedTuple):
    """Two runs of one group, r1 starting first, on word ``word``."""

    word: Word
    r1: Run
    r2: Run

    @property
    def period(self) -> int:
        return self.r1.period

    @property
    def orientation(self) -> str:
        return "left" if self.r1.length <= self.r2.length else "right"

    @property
    def f_prime(self) -> int:
        """Leftmost start after beg(r') of an r'-root equal to the prefix root of r''."""
        a1, a2 = self.r1.offset, self.r2.offset
        base = self.r1.beg + a1 - a2
        return base if a1 > a2 else base + self.period


def _offset(w: Word, beg: int, p: int) -> int:
    if p == 1:
        return 0
    return int(least_rotation(w.padded, beg, p, np.empty(2 * p, np.int64)))


def pair_context(w: Word, r1: Run, r2: Run) -> PairContext:
    """Validate that r1, r2 are distinct runs with the same root; fill in offsets."""
    if r1.beg > r2.beg:
        r1, r2 = r2, r1
    if r1.period != r2.period or r1.beg == r2.beg:
        raise PairMismatchError("runs must be distinct and share their period")
    p = r1.period
    r1 = r1._replace(offset=_offset(w, r1.beg, p) if r1.offset is None else r1.offset)
    r2 = r2._replace(offset=_offset(w, r2.beg, p) if r2.offset is None else r2.offset)
    root1 = w.factor(r1.beg + r1.offset, r1.beg + r1.offset + p - 1)
    root2 = w.factor(r2.beg + r2.offset, r2.beg + r2.offset + p - 1)
    if root1 != root2:
        raise PairMismatchError("runs do not share a Lyndon root")
    return PairContext(w, r1, r2)


class PsiSegment(NamedTuple):
    """Ψ for one pair: member counts per type, first member, α-gapped index range.

    ``l`` and ``m`` are 1-based indices into Ψ of the first and last gapped
    α-gapped member (0, 0 when there is none).
    """

    k1: int
    k2: int
    k3: int
    anchor: MaxRepeat | None
    l: int
    m: int
    members: tuple[AnnotatedRepeat, ...]

    def member(self, j: int) -> AnnotatedRepeat:
        """The j-th member of Ψ, 1-based."""
        return self.members[j - 1]


def _ctx_rows(ctx: PairContext, delta: RationalDelta, mode: int) -> np.ndarray:
    """Rows of the selected Ψ members in the coordinates of ``ctx.word``."""
    w, r1, r2 = ctx
    n = w.n
    if ctx.orientation == "left":
        buf, m = emit_pair(np.empty((16, NCOL), np.int64), 0, w.padded, n, r1.beg, r1.end, r1.offset,
                           r2.beg, r2.end, r2.offset, r1.period, delta.num, delta.den,
                           mode, SRC_LEFT)
        return buf[:m]
    wr = w.reversed()
    p = r1.period
    b1, e1 = n - r2.end + 1, n - r2.beg + 1
    b2, e2 = n - r1.end + 1, n - r1.beg + 1
    buf, m = emit_pair(np.empty((16, NCOL), np.int64), 0, wr.padded, n, b1, e1, _offset(wr, b1, p),
                       b2, e2, _offset(wr, b2, p), p, delta.num, delta.den, mode, SRC_LEFT)
    return reverse_rows(buf[:m], n)


def psi_segment(ctx: PairContext, delta) -> PsiSegment:
    delta = RationalDelta.of(delta)
    everything = annotated_from(_ctx_rows(ctx, delta, MODE_ALL))
    if ctx.orientation == "right":
        everything.sort(key=lambda r: r.period)
    counts = [sum(1 for r in everything if r.kind == k)
              for k in ("first", "second")]
    k3 = len(everything) - sum(counts)
    good = [j + 1 for j, r in enumerate(everything)
            if r.gapped and r.period * delta.num <= r.copylen * delta.den]
    return PsiSegment(counts[0], counts[1], k3,
                      everything[0].repeat if everything else None,
                      good[0] if good else 0, good[-1] if good else 0, tuple(everything))


def _sorted(rows: np.ndarray, n: int) -> list[AnnotatedRepeat]:
    return annotated_from(sort_rows(rows, n))


def psi_enumerate(ctx: PairContext, delta) -> list[AnnotatedRepeat]:
    """Maximal α-gapped periodic repeats represented by the pair, by (beg, p)."""
    return _sorted(_ctx_rows(ctx, RationalDelta.of(delta), MODE_AGAP), ctx.word.n)


def psi_nondominating(ctx: PairContext, delta) -> list[AnnotatedRepeat]:
    """The third-type, nondominating members of the α-gapped part of Ψ."""
    return _sorted(_ctx_rows(ctx, RationalDelta.of(delta), MODE_NONDOM), ctx.word.n)


def psi_overlapped(ctx: PairContext) -> list[AnnotatedRepeat]:
    """Members of Ψ with c >= p(σ)."""
    return _sorted(_ctx_rows(ctx, RationalDelta(1, 2), MODE_OVER), ctx.word.n)


def reverse_map(sigma: MaxRepeat, n: int) -> MaxRepeat:
    """Coordinates of σ in the reversed word; an involution."""
    beg, p, c = sigma[0], sigma[1], sigma[2]
    return MaxRepeat(n - (beg + p + c - 1) + 1, p, c)


class PairTables(NamedTuple):
    """Run tables (PRSR order) of the word and of its reversal."""

    forward: tuple
    reverse: tuple
    n: int
    padded: np.ndarray
    padded_rev: np.ndarray


def pair_tables(w: Word, idx: LceIndex | None = None) -> PairTables:
    idx = idx or LceIndex(w)
    n = w.n
    fwd = run_table(idx.padded, n, idx.forward, idx.backward)
    rev = run_table(idx.padded_rev, n, idx.backward, idx.forward)
    return PairTables(fwd, rev, n, idx.padded, idx.padded_rev)


def _scan(tables: PairTables, delta: RationalDelta, mode: int, orientation: str | None):
    n = tables.n
    if orientation == "left":
        rows, _ = pair_scan(tables.padded, n, delta.num, delta.den, *tables.forward, mode, False, SRC_LEFT)
        return sort_rows(rows, n)
    if orientation == "right":
        rows, _ = pair_scan(tables.padded_rev, n, delta.num, delta.den, *tables.reverse, mode, True, SRC_LEFT)
        return sort_rows(reverse_rows(rows, n), n)
    rows, _ = both_orientations(tables.padded, tables.padded_rev, tables.forward, tables.reverse, n, delta.num, delta.den, mode)
    return rows


def alpha_close_max(w: Word, delta, idx: LceIndex | None = None) -> int:
    """Largest number of α-close same-group successors met by any run in the scans."""
    delta = RationalDelta.of(delta)
    if w.n < 2:
        return 0
    t = pair_tables(w, idx)
    return int(both_orientations(t.padded, t.padded_rev, t.forward, t.reverse, t.n, delta.num, delta.den, MODE_AGAP)[1])


def birepresented_periodic(w: Word, delta, orientation: str = "left",
                           idx: LceIndex | None = None) -> list[AnnotatedRepeat]:
    """Maximal α-gapped periodic repeats represented by left (or right) pairs."""
    if orientation not in ("left", "right"):
        raise ValueError(f"unknown orientation {orientation!r}")
    if w.n < 2:
        return []
    return annotated_from(_scan(pair_tables(w, idx), RationalDelta.of(delta), MODE_AGAP, orientation))


def all_periodic_gapped(w: Word, delta, idx: LceIndex | None = None) -> list[AnnotatedRepeat]:
    """Every maximal α-gapped periodic repeat, with q, sorted by (beg, p)."""
    from .repeats import generated_rows, merge_rows, OP_UNION

    delta = RationalDelta.of(delta)
    if w.n < 2:
        return []
    t = pair_tables(w, idx)
    birep = _scan(t, delta, MODE_AGAP, None)
    rb, re, rp = t.forward[:3]
    gen = periodic_rows(generated_rows(rb, re, rp, delta.num, delta.den, w.n))
    rows, _ = merge_rows(birep, sort_rows(gen, w.n), OP_UNION)
    return annotated_from(rows)


def alpha_periodic_filter(repeats: list[AnnotatedRepeat], delta) -> list[AnnotatedRepeat]:
    """The α-periodic members (3q <= p/α) of a repeat list."""
    delta = RationalDelta.of(delta)
    return [r for r in repeats if r.alpha_periodic(delta)]


def overlapped_birepresented(w: Word, idx: LceIndex | None = None) -> list[AnnotatedRepeat]:
    """Overlapped periodic repeats represented by adjacent same-root runs."""
    if w.n < 2:
        return []
    return annotated_from(_scan(pair_tables(w, idx), RationalDelta(1, 2), MODE_OVER, None))


def alpha_periodic_reprincipal(pr: list, overlapped: list, delta):
    """Split reprincipal repeats into (APR, NPR) by α-periodic pair representation."""
    delta = RationalDelta.of(delta)
    ap = {(r[0], r[1]) for r in overlapped if r.alpha_periodic(delta)}
    apr = [r for r in pr if (r[0], r[1]) in ap]
    npr = [r for r in pr if (r[0], r[1]) not in ap]
    return apr, npr


def compute_banr(w: Word, delta, idx: LceIndex | None = None) -> list[AnnotatedRepeat]:
    """Third-type nondominating α-gapped members of Ψ over all α-close pairs."""
    if w.n < 2:
        return []
    return annotated_from(_scan(pair_tables(w, idx), RationalDelta.of(delta), MODE_NONDOM, None))
