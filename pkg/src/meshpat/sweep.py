"""
Vectorised occurrence counting over all of S_n.

For every permutation (rows, lexicographic order) and every k-subset of
positions (columns) we precompute

* ``codes``: the relative order of the selected values, one bit per pair
  (x < y) telling whether value x is below value y, and
* ``occupied``: the set of boxes of the (k+1)x(k+1) grid that contain at
  least one non-selected element, as a bitmask with the same layout as
  :attr:`MeshPattern.mask`.

A subset is then an occurrence of (tau, R) iff its code equals tau's code and
``occupied & R == 0``.  One table serves every pattern of length k, so the
cost of a whole catalog sweep is dominated by a few array comparisons.
"""
from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from .mesh import MeshPattern
from .perm import check_limit, DEFAULT_LIMIT

# (n!, n) uint8 for n = 10 is 36 MB; the full tables are cached only up to here
CACHE_MAX_N = 9


@functools.lru_cache(maxsize=None)
def perm_array(n: int) -> np.ndarray:
    """
    All n-permutations as rows of a read-only uint8 array, lexicographic order.

    >>> perm_array(3).tolist()
    [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]
    """
    check_limit(n, 11)
    if n == 0:
        out = np.zeros((1, 0), dtype=np.uint8)
    else:
        prev = perm_array(n - 1)
        blocks = []
        for v in range(1, n + 1):
            tail = prev + (prev >= v)
            head = np.full((tail.shape[0], 1), v, dtype=np.uint8)
            blocks.append(np.hstack([head, tail.astype(np.uint8)]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def _mask_dtype(k: int):
    bits = (k + 1) ** 2
    if bits <= 16:
        return np.uint16
    if bits <= 32:
        return np.uint32
    if bits <= 64:
        return np.uint64
    raise ValueError(f"pattern length {k} too large for the sweep engine")


def tau_code(tau) -> int:
    vals = tuple(tau)
    code = 0
    for bit, (x, y) in enumerate(itertools.combinations(range(len(vals)), 2)):
        if vals[x] < vals[y]:
            code |= 1 << bit
    return code


class SweepTable:
    """Occurrence data for permutations of length n, rows [lo, hi) in lex order."""

    def __init__(self, n: int, k: int, lo: int = 0, hi: int | None = None):
        rows = perm_array(n)[lo:hi]
        self.n, self.k = n, k
        self.lo = lo
        self.rows = rows
        self.subsets = list(itertools.combinations(range(n), k))
        N, T = rows.shape[0], len(self.subsets)
        mdt = _mask_dtype(k)
        npairs = k * (k - 1) // 2
        self.codes = np.zeros((N, T), dtype=np.uint8 if npairs <= 8 else np.uint16)
        self.occupied = np.zeros((N, T), dtype=mdt)
        data = rows.astype(np.int16)
        pairs = list(itertools.combinations(range(k), 2))
        one = mdt(1)
        for t, subset in enumerate(self.subsets):
            sel = data[:, subset]
            code = np.zeros(N, dtype=self.codes.dtype)
            for bit, (x, y) in enumerate(pairs):
                code |= (sel[:, x] < sel[:, y]).astype(self.codes.dtype) << bit
            self.codes[:, t] = code
            occ = np.zeros(N, dtype=mdt)
            chosen = set(subset)
            a = 0
            for j in range(n):
                if j in chosen:
                    a += 1
                    continue
                b = (sel < data[:, j:j + 1]).sum(axis=1)
                occ |= one << (a * (k + 1) + b).astype(mdt)
            self.occupied[:, t] = occ

    def __len__(self) -> int:
        return self.rows.shape[0]

    def hits(self, q: MeshPattern) -> np.ndarray:
        """Boolean (rows, subsets) array of occurrences of q."""
        if q.k != self.k:
            raise ValueError(f"table is for length {self.k}, pattern has length {q.k}")
        match = self.codes == tau_code(q.tau.values)
        if q.mask:
            match &= (self.occupied & self.occupied.dtype.type(q.mask)) == 0
        return match

    def counts(self, q: MeshPattern) -> np.ndarray:
        if len(self.subsets) == 0:
            return np.zeros(len(self), dtype=np.int64)
        return self.hits(q).sum(axis=1, dtype=np.int64)


@functools.lru_cache(maxsize=16)
def _cached_table(n: int, k: int) -> SweepTable:
    return SweepTable(n, k)


def table_chunks(n: int, k: int, limit: int = DEFAULT_LIMIT):
    """
    Yield SweepTables covering S_n.  Small n gives one cached table; larger n
    is split by first element to bound memory.
    """
    check_limit(n, limit)
    if n <= CACHE_MAX_N:
        yield _cached_table(n, k)
        return
    block = math.factorial(n - 1)
    for v in range(n):
        yield SweepTable(n, k, v * block, (v + 1) * block)


def count_vector(q: MeshPattern, n: int, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """Occurrence counts of q for every n-permutation, in lex order."""
    return np.concatenate([t.counts(q) for t in table_chunks(n, q.k, limit)])


def joint_histogram(q1: MeshPattern, q2: MeshPattern, n: int, limit: int = DEFAULT_LIMIT) -> dict[tuple[int, int], int]:
    """Map (k, l) -> number of n-permutations with k occurrences of q1 and l of q2."""
    hist: dict[tuple[int, int], int] = {}
    for c1, c2 in _joint_chunks(q1, q2, n, limit):
        width = int(c2.max()) + 1 if c2.size else 1
        flat = np.bincount(c1 * width + c2)
        for idx in np.nonzero(flat)[0]:
            key = (int(idx) // width, int(idx) % width)
            hist[key] = hist.get(key, 0) + int(flat[idx])
    return hist


def _joint_chunks(q1, q2, n, limit):
    if q1.k == q2.k:
        for t in table_chunks(n, q1.k, limit):
            yield t.counts(q1), t.counts(q2)
    else:
        yield count_vector(q1, n, limit), count_vector(q2, n, limit)
