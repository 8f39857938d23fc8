"""
Stirling numbers of the first kind, closed forms for the joint distributions,
and the recurrences that generate them.  Everything is exact integer
arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .dist import JointDistribution

N_MAX = 32


@dataclass(frozen=True)
class StirlingTable:
    """Unsigned Stirling numbers of the first kind c(n, k) for 0 <= k <= n <= n_max."""

    n_max: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n_max: int = N_MAX) -> "StirlingTable":
        rows = [(1,)]
        for n in range(1, n_max + 1):
            prev = rows[-1]
            row = []
            for k in range(n + 1):
                a = prev[k] if k < len(prev) else 0
                b = prev[k - 1] if k >= 1 else 0
                row.append((n - 1) * a + b)
            rows.append(tuple(row))
        return cls(n_max, tuple(rows))

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        if n > self.n_max:
            raise ValueError(f"c({n},{k}) beyond the table bound {self.n_max}")
        return self.rows[n][k]


STIRLING = StirlingTable.build()


def stirling(n: int, k: int) -> int:
    """
    >>> stirling(4, 2)
    11
    """
    return STIRLING(n, k)


def h_closed(n: int, k: int, l: int) -> int:
    """
    Number of n-permutations with k and l occurrences in the length-2 case.

    >>> h_closed(4, 1, 1)
    6
    """
    if k < 0 or l < 0:
        return 0
    return math.comb(k + l, k) * stirling(n - 1, k + l)


def t_closed(n: int, k: int, l: int) -> int:
    """
    Cellwise closed form for the length-3 pairs reducing to the length-2 case.

    The factor (n-1)!/i! is an integer product, so no rationals are involved.

    >>> [t_closed(5, 0, 0), t_closed(3, 1, 0)]
    [48, 1]
    """
    if n < 2:
        raise ValueError("t_closed needs n >= 2")
    if k < 0 or l < 0:
        return 0
    if k == 0 and l == 0:
        return 2 * math.factorial(n - 1)
    s = 0
    for i in range(2, n):
        s += math.prod(range(i + 1, n)) * stirling(i - 1, k + l)
    return math.comb(k + l, k) * s


def h_closed_distribution(n: int) -> JointDistribution:
    return JointDistribution(n, {(k, s - k): h_closed(n, k, s - k)
                                 for s in range(n) for k in range(s + 1)})


def t_closed_distribution(n: int) -> JointDistribution:
    return JointDistribution(n, {(k, s - k): t_closed(n, k, s - k)
                                 for s in range(n) for k in range(s + 1)})


def _times_linear(prev: JointDistribution, n: int) -> dict[tuple[int, int], int]:
    """Multiply the generating polynomial by (n - 2) + x + y."""
    out: dict[tuple[int, int], int] = {}
    for (k, l), c in prev.counts.items():
        for cell, w in (((k, l), n - 2), ((k + 1, l), 1), ((k, l + 1), 1)):
            out[cell] = out.get(cell, 0) + w * c
    return out


def h_recurrence_step(prev: JointDistribution) -> JointDistribution:
    """
    One step of H_n = (n - 2 + x + y) H_{n-1}.

    >>> h_recurrence_step(JointDistribution(2, {(1, 0): 1, (0, 1): 1})).counts
    {(0, 1): 1, (0, 2): 1, (1, 0): 1, (1, 1): 2, (2, 0): 1}
    """
    n = prev.n + 1
    return JointDistribution(n, _times_linear(prev, n))


def t_recurrence_x4_step(prev: JointDistribution, n: int) -> JointDistribution:
    """
    One step of T_n = (n - 2 + x + y) T_{n-1} + (2 - x - y)(n - 2)!.

    >>> t_recurrence_x4_step(JointDistribution(2, {(0, 0): 2}), 3).counts
    {(0, 0): 4, (0, 1): 1, (1, 0): 1}
    """
    if n < 3 or prev.n != n - 1:
        raise ValueError(f"need n >= 3 and prev at n-1, got n={n}, prev.n={prev.n}")
    out = _times_linear(prev, n)
    f = math.factorial(n - 2)
    for cell, delta in (((0, 0), 2 * f), ((1, 0), -f), ((0, 1), -f)):
        out[cell] = out.get(cell, 0) + delta
    for cell, c in out.items():
        if c < 0:
            raise ValueError(f"negative cell {cell}={c}: prev is not a valid T_{n - 1}")
    return JointDistribution(n, out)


def chu_vandermonde_check(n: int, k: int, l: int) -> bool:
    """
    >>> chu_vandermonde_check(4, 1, 1)
    True
    """
    lhs = sum(math.comb(n - 1, i) * stirling(i, l) * stirling(n - 1 - i, k) for i in range(n))
    return lhs == math.comb(k + l, k) * stirling(n - 1, k + l)
