"""
Joint occurrence distributions over S_n and the equivalence tests built on them.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import sweep
from .mesh import MeshPattern
from .perm import DEFAULT_LIMIT, check_limit, sn_ranges

Cell = tuple[int, int]


@dataclass(frozen=True)
class JointDistribution:
    """Sparse map (k, l) -> number of n-permutations with k occurrences of q1 and l of q2."""

    n: int
    counts: dict[Cell, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(key): int(v) for key, v in self.counts.items() if v}
        object.__setattr__(self, "counts", dict(sorted(clean.items())))

    def __getitem__(self, cell: Cell) -> int:
        return self.counts.get(tuple(cell), 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def transpose(self) -> "JointDistribution":
        return JointDistribution(self.n, {(l, k): c for (k, l), c in self.counts.items()})

    def is_symmetric(self) -> bool:
        return all(self[(l, k)] == c for (k, l), c in self.counts.items())

    def asymmetric_cells(self) -> list[Cell]:
        return sorted(cell for cell, c in self.counts.items() if self[(cell[1], cell[0])] != c)

    def marginal(self, axis: int) -> Counter:
        out: Counter = Counter()
        for cell, c in self.counts.items():
            out[cell[axis]] += c
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "counts": [[k, l, c] for (k, l), c in self.counts.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> "JointDistribution":
        return cls(int(obj["n"]), {(k, l): c for k, l, c in obj["counts"]})

    def csv_rows(self) -> list[list[int]]:
        return [[self.n, k, l, c] for (k, l), c in self.counts.items()]


CSV_HEADER = ["n", "k", "l", "count"]


def to_csv(dists: list[JointDistribution]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for d in dists:
        w.writerows(d.csv_rows())
    return buf.getvalue()


def _chunk_histogram(args) -> dict[Cell, int]:
    q1, q2, n, lo, hi = args
    t = sweep.SweepTable(n, q1.k, lo, hi)
    c1, c2 = t.counts(q1), t.counts(q2)
    return dict(Counter(zip(c1.tolist(), c2.tolist())))


def joint_distribution(q1: MeshPattern, q2: MeshPattern, n: int, *, jobs: int = 1,
                       limit: int = DEFAULT_LIMIT) -> JointDistribution:
    """
    Exact joint distribution of (q1, q2) over S_n.

    >>> from meshpat.mesh import parse_pattern
    >>> joint_distribution(parse_pattern("12:"), parse_pattern("21:"), 3).counts
    {(0, 3): 1, (1, 2): 2, (2, 1): 2, (3, 0): 1}
    """
    if q1.k != q2.k:
        raise ValueError(f"patterns have different lengths {q1.k} and {q2.k}")
    check_limit(n, limit)
    if jobs <= 1 or n < 7:
        return JointDistribution(n, sweep.joint_histogram(q1, q2, n, limit))
    tasks = [(q1, q2, n, lo, hi) for lo, hi in sn_ranges(n, jobs * 2)]
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_chunk_histogram, tasks):
            total.update(part)
    return JointDistribution(n, dict(total))


@dataclass(frozen=True)
class EquivalenceReport:
    """
    Outcome of a finite check up to ``n_max``.

    ``witness`` is None on success; otherwise a tuple whose first entry is
    the smallest failing n (the rest depends on the test).
    """

    test: str
    n_max: int
    verdict: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.verdict


def is_jointly_equidistributed(q1: MeshPattern, q2: MeshPattern, n_max: int, *, n_min: int = 1,
                               jobs: int = 1, limit: int = DEFAULT_LIMIT) -> EquivalenceReport:
    """Check counts(k,l) = counts(l,k) for every n in [n_min, n_max]; the witness is (n, k, l)."""
    check_limit(n_max, limit)
    for n in range(n_min, n_max + 1):
        d = joint_distribution(q1, q2, n, jobs=jobs, limit=limit)
        bad = d.asymmetric_cells()
        if bad:
            return EquivalenceReport("joint", n_max, False, (n, *bad[0]))
    return EquivalenceReport("joint", n_max, True)


def is_equidistributed(q1: MeshPattern, q2: MeshPattern, n_max: int, *,
                       limit: int = DEFAULT_LIMIT) -> EquivalenceReport:
    """Compare the single-pattern distributions; the witness is (n, m, #q1 with m, #q2 with m)."""
    check_limit(n_max, limit)
    for n in range(1, n_max + 1):
        a = Counter(sweep.count_vector(q1, n, limit).tolist())
        b = Counter(sweep.count_vector(q2, n, limit).tolist())
        if a != b:
            m = min(x for x in set(a) | set(b) if a[x] != b[x])
            return EquivalenceReport("equidistribution", n_max, False, (n, m, a[m], b[m]))
    return EquivalenceReport("equidistribution", n_max, True)


def avoiders(q: MeshPattern, n: int, limit: int = DEFAULT_LIMIT) -> int:
    """|S_n(q)|, the number of n-permutations with no occurrence of q."""
    return int((sweep.count_vector(q, n, limit) == 0).sum())


def is_wilf_equivalent(q1: MeshPattern, q2: MeshPattern, n_max: int, *,
                       limit: int = DEFAULT_LIMIT) -> EquivalenceReport:
    """Compare avoidance counts; the witness is (n, |S_n(q1)|, |S_n(q2)|)."""
    check_limit(n_max, limit)
    for n in range(1, n_max + 1):
        a, b = avoiders(q1, n, limit), avoiders(q2, n, limit)
        if a != b:
            return EquivalenceReport("wilf", n_max, False, (n, a, b))
    return EquivalenceReport("wilf", n_max, True)


def compare_distributions(d1: JointDistribution, d2: JointDistribution) -> bool:
    if d1.n != d2.n:
        raise ValueError(f"distributions are for different n ({d1.n} and {d2.n})")
    return d1.counts == d2.counts


def check_total(d: JointDistribution) -> bool:
    return d.total() == math.factorial(d.n)
