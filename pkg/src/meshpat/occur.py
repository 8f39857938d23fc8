"""
Scalar occurrence semantics for mesh patterns.

This is the reference implementation: direct, readable, and used as the
oracle for the vectorised engine in :mod:`meshpat.sweep`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .mesh import MeshPattern
from .perm import Permutation


@dataclass(frozen=True, slots=True)
class Occurrence:
    indices: tuple[int, ...]

    def values(self, pi: Permutation) -> tuple[int, ...]:
        return tuple(pi[i] for i in self.indices)


def _check_indices(pi: Permutation, indices: Sequence[int], k: int) -> None:
    if len(indices) != k:
        raise ValueError(f"expected {k} indices, got {len(indices)}")
    prev = 0
    for i in indices:
        if not isinstance(i, int) or i <= prev or i > pi.n:
            raise ValueError(f"indices {tuple(indices)} are not strictly increasing within 1..{pi.n}")
        prev = i


def _passes(vals: tuple[int, ...], idx0: Sequence[int], q: MeshPattern) -> bool:
    """idx0 are 0-based positions of the selected elements, sorted."""
    k = q.k
    sel = [vals[i] for i in idx0]
    # order-isomorphism first: cheap and usually decisive
    tau = q.tau.values
    for x in range(k):
        for y in range(x + 1, k):
            if (sel[x] < sel[y]) != (tau[x] < tau[y]):
                return False
    if not q.mask:
        return True
    sorted_sel = sorted(sel)
    chosen = set(idx0)
    a = 0
    for j, v in enumerate(vals):
        if j in chosen:
            a += 1
            continue
        b = 0
        while b < k and sorted_sel[b] < v:
            b += 1
        if q.shaded(a, b):
            return False
    return True


def is_occurrence(pi: Permutation, indices: Sequence[int], q: MeshPattern) -> bool:
    """
    Whether the 1-indexed positions ``indices`` witness an occurrence of q.

    >>> from meshpat.mesh import parse_pattern
    >>> from meshpat.perm import parse_permutation
    >>> q = parse_pattern("132:(0,0)(1,1)(1,2)(3,1)")
    >>> is_occurrence(parse_permutation("24513"), (1, 2, 5), q)
    True
    >>> is_occurrence(parse_permutation("24513"), (1, 2, 4), q)
    False
    """
    _check_indices(pi, indices, q.k)
    return _passes(pi.values, [i - 1 for i in indices], q)


def occurrences(pi: Permutation, q: MeshPattern) -> list[Occurrence]:
    vals = pi.values
    return [Occurrence(tuple(i + 1 for i in c))
            for c in itertools.combinations(range(len(vals)), q.k)
            if _passes(vals, c, q)]


def count_occurrences(pi: Permutation, q: MeshPattern) -> int:
    vals = pi.values
    return sum(1 for c in itertools.combinations(range(len(vals)), q.k) if _passes(vals, c, q))


def joint_counts(pi: Permutation, q1: MeshPattern, q2: MeshPattern) -> tuple[int, int]:
    return count_occurrences(pi, q1), count_occurrences(pi, q2)
