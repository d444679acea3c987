"""Longest-common-extension index over a word and its reversal.

Suffix array by prefix doubling with counting sorts, LCP by Kasai's scan, and a sparse table of
range minima give worst-case O(1) queries after O(n log n) construction.
The compiled helpers take the index as a ``(rank, table, logs)`` tuple so
that other kernels can query it without leaving nopython mode.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import PositionError
from .word import Word


@njit(cache=True)
def suffix_array(s, n):
    """Return (sa, rank) for the padded word ``s``; positions are 1-based.

    ``sa[x]`` is the position of the x-th smallest suffix; ``rank`` has
    length n + 2 and ``rank[sa[x]] == x``.
    """
    sa = np.empty(n, np.int64)
    rank = np.zeros(n + 2, np.int64)
    if n == 0:
        return sa, rank
    order = np.argsort(s[1 : n + 1], kind="mergesort")
    r = 0
    rank[order[0] + 1] = 0
    for x in range(1, n):
        if s[order[x] + 1] != s[order[x - 1] + 1]:
            r += 1
        rank[order[x] + 1] = r
    cnt = np.zeros(n + 2, np.int64)
    tmp = np.empty(n, np.int64)
    new = np.empty(n + 2, np.int64)
    k = 1
    while r < n - 1:
        # order by second key rank[i + k] (missing sorts first), then a stable counting sort
        m = 0
        for i in range(n - k + 1, n + 1):
            tmp[m] = i
            m += 1
        for x in range(n):
            i = order[x] + 1
            if i > k:
                tmp[m] = i - k
                m += 1
        cnt[: r + 2] = 0
        for i in range(1, n + 1):
            cnt[rank[i] + 1] += 1
        for v in range(1, r + 2):
            cnt[v] += cnt[v - 1]
        for x in range(n):
            i = tmp[x]
            order[cnt[rank[i]]] = i - 1
            cnt[rank[i]] += 1
        r = 0
        new[order[0] + 1] = 0
        for x in range(1, n):
            a = order[x] + 1
            b = order[x - 1] + 1
            ka = rank[a + k] if a + k <= n else -1
            kb = rank[b + k] if b + k <= n else -1
            if rank[a] != rank[b] or ka != kb:
                r += 1
            new[a] = r
        for i in range(1, n + 1):
            rank[i] = new[i]
        k *= 2
    for x in range(n):
        sa[x] = order[x] + 1
    return sa, rank


@njit(cache=True)
def lcp_array(s, n, sa, rank):
    """lcp[x] = LCP of suffixes sa[x-1] and sa[x]; lcp[0] = 0 (Kasai)."""
    lcp = np.zeros(n, np.int32)
    h = 0
    for i in range(1, n + 1):
        x = rank[i]
        if x > 0:
            j = sa[x - 1]
            # the distinct end sentinel stops the scan
            while s[i + h] == s[j + h]:
                h += 1
            lcp[x] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


@njit(cache=True)
def sparse_table(lcp):
    n = lcp.size
    levels = 1
    while (1 << levels) <= n:
        levels += 1
    table = np.zeros((levels, max(n, 1)), np.int32)
    if n == 0:
        return table
    table[0, :] = lcp
    for k in range(1, levels):
        half = 1 << (k - 1)
        for x in range(n - (1 << k) + 1):
            a = table[k - 1, x]
            b = table[k - 1, x + half]
            table[k, x] = a if a < b else b
    return table


@njit(cache=True)
def log_table(n):
    logs = np.zeros(n + 2, np.int64)
    for i in range(2, n + 2):
        logs[i] = logs[i >> 1] + 1
    return logs


@njit(cache=True)
def build(s, n):
    sa, rank = suffix_array(s, n)
    table = sparse_table(lcp_array(s, n, sa, rank))
    return rank, table, log_table(n)


@njit(cache=True)
def lce(index, n, i, j):
    """Length of the longest common prefix of the suffixes at i and j."""
    if i == j:
        return n - i + 1
    rank, table, logs = index
    a = rank[i]
    b = rank[j]
    if a > b:
        a, b = b, a
    a += 1
    k = logs[b - a + 1]
    x = table[k, a]
    y = table[k, b - (1 << k) + 1]
    return np.int64(x if x < y else y)


@njit(cache=True)
def extend_right(s, fwd, n, i, j):
    """lce(i, j) with a short direct scan first; random words rarely need the table."""
    for h in range(8):
        if s[i + h] != s[j + h]:
            return h
    return lce(fwd, n, i, j)


@njit(cache=True)
def extend_left(s, bwd, n, i, j):
    """Largest k with w[i-k+1..i] == w[j-k+1..j]; 0 when i or j is 0."""
    for h in range(8):
        if s[i - h] != s[j - h]:
            return h
    return lce(bwd, n, n + 1 - i, n + 1 - j)


class LceIndex:
    """Forward and backward LCE queries in O(1) after construction."""

    def __init__(self, word: Word):
        self.word = word
        self.n = n = word.n
        s = word.padded
        self.padded = s
        self.padded_rev = word.padded_reversed
        self.forward = build(s, n)
        self.backward = build(self.padded_rev, n)

    @classmethod
    def build(cls, word: Word) -> "LceIndex":
        return cls(word)

    def _check(self, *positions: int) -> None:
        for p in positions:
            if not 1 <= p <= self.n:
                raise PositionError(f"position {p} outside 1..{self.n}")

    def lce_forward(self, i: int, j: int) -> int:
        self._check(i, j)
        return int(lce(self.forward, self.n, i, j))

    def lce_backward(self, i: int, j: int) -> int:
        self._check(i, j)
        return int(lce(self.backward, self.n, self.n + 1 - i, self.n + 1 - j))

    def suffix_rank(self, i: int) -> int:
        self._check(i)
        return int(self.forward[0][i])


def build_index(word: Word) -> LceIndex:
    return LceIndex(word)
