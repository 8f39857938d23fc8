"""
Permutations in one-line notation.

Positions and values are 1-indexed throughout: ``Permutation((2, 4, 5, 1, 3))``
is the permutation 24513 with ``pi[1] == 2``.  The empty permutation is legal.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_LIMIT = 10


class PermutationError(ValueError):
    pass


class DuplicateValue(PermutationError):
    pass


class OutOfRange(PermutationError):
    pass


class LimitExceeded(PermutationError):
    pass


@dataclass(frozen=True, slots=True)
class Permutation:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        seen = set()
        for v in vals:
            if not isinstance(v, int) or isinstance(v, bool):
                raise PermutationError(f"non-integer entry {v!r}")
            if v in seen:
                raise DuplicateValue(f"value {v} appears twice")
            if not 1 <= v <= n:
                raise OutOfRange(f"value {v} outside 1..{n}")
            seen.add(v)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i: int) -> int:
        """1-indexed access: ``pi[1]`` is the first entry."""
        if not 1 <= i <= len(self.values):
            raise IndexError(i)
        return self.values[i - 1]

    def __str__(self) -> str:
        return format_one_line(self.values)

    def __repr__(self) -> str:
        return f"Permutation({self})" if self.values else "Permutation(empty)"

    def position_of(self, value: int) -> int:
        return self.values.index(value) + 1


def from_one_line(seq: Iterable[int]) -> Permutation:
    """
    Validate a sequence as a bijection of 1..n.

    >>> from_one_line([2, 4, 5, 1, 3])
    Permutation(24513)
    """
    return Permutation(tuple(seq))


def format_one_line(values: Sequence[int]) -> str:
    if len(values) <= 9:
        return "".join(str(v) for v in values)
    return ",".join(str(v) for v in values)


def parse_permutation(text: str) -> Permutation:
    """
    Parse the text form: digits for n <= 9 ("24513"), comma-separated otherwise.

    An empty string is the empty permutation.
    """
    text = text.strip()
    if not text:
        return Permutation(())
    try:
        if "," in text:
            vals = [int(tok) for tok in text.split(",")]
        else:
            vals = [int(ch) for ch in text]
    except ValueError:
        raise PermutationError(f"cannot parse permutation {text!r}") from None
    return Permutation(tuple(vals))


def reverse(pi: Permutation) -> Permutation:
    return Permutation(pi.values[::-1])


def complement(pi: Permutation) -> Permutation:
    n = pi.n
    return Permutation(tuple(n + 1 - v for v in pi.values))


def inverse(pi: Permutation) -> Permutation:
    inv = [0] * pi.n
    for pos, v in enumerate(pi.values, start=1):
        inv[v - 1] = pos
    return Permutation(tuple(inv))


def standardize(values: Sequence[int]) -> Permutation:
    """
    The permutation order-isomorphic to ``values``.

    >>> standardize([2, 4, 3])
    Permutation(132)
    """
    if len(set(values)) != len(values):
        raise DuplicateValue(f"values {list(values)} are not distinct")
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order, start=1):
        ranks[i] = r
    return Permutation(tuple(ranks))


def embed(values: Sequence[int], pattern: Sequence[int]) -> list[int]:
    """Inverse of standardization: arrange the value set of ``values`` in the shape of ``pattern``."""
    ordered = sorted(values)
    return [ordered[r - 1] for r in pattern]


@dataclass(frozen=True)
class Decomposition:
    """
    Left-to-right-minima staircase of a permutation.

    All blocks hold 1-indexed positions, sorted increasingly.  ``minima`` are
    (position, value) pairs x_1 > x_2 > ... in order of appearance;
    ``bands[i]`` holds the elements after x_{i+1} with value between x_{i+1}
    and x_i (x_0 = +inf); ``column_blocks[j]`` holds the positions strictly
    between consecutive minima (the last block runs to the end);
    ``above``/``below`` split positions 2..n by comparison with pi_1.
    """

    minima: tuple[tuple[int, int], ...]
    bands: tuple[tuple[int, ...], ...]
    column_blocks: tuple[tuple[int, ...], ...]
    above: tuple[int, ...]
    below: tuple[int, ...]


def decompose(pi: Permutation) -> Decomposition:
    vals = pi.values
    n = len(vals)
    if n == 0:
        raise PermutationError("cannot decompose the empty permutation")
    minima: list[tuple[int, int]] = []
    for pos, v in enumerate(vals, start=1):
        if not minima or v < minima[-1][1]:
            minima.append((pos, v))
    min_vals = [v for _, v in minima]
    min_positions = {p for p, _ in minima}

    bands: list[list[int]] = [[] for _ in minima]
    for pos, v in enumerate(vals, start=1):
        if pos in min_positions:
            continue
        # the band is fixed by the value alone: x_i < v < x_{i-1}; such an
        # element necessarily sits after x_i, since x_i is a left-to-right minimum
        i = sum(1 for m in min_vals if m > v)
        bands[i].append(pos)

    columns: list[tuple[int, ...]] = []
    bounds = [p for p, _ in minima] + [n + 1]
    for a, b in zip(bounds, bounds[1:]):
        columns.append(tuple(range(a + 1, b)))

    first = vals[0]
    above = tuple(p for p in range(2, n + 1) if vals[p - 1] > first)
    below = tuple(p for p in range(2, n + 1) if vals[p - 1] < first)
    return Decomposition(tuple(minima), tuple(tuple(b) for b in bands), tuple(columns), above, below)


def enumerate_sn(n: int, start: int = 0, stop: int | None = None, limit: int = DEFAULT_LIMIT) -> Iterator[Permutation]:
    """
    All n-permutations in lexicographic order, optionally restricted to the
    contiguous rank range [start, stop).
    """
    check_limit(n, limit)
    it = itertools.permutations(range(1, n + 1))
    for vals in itertools.islice(it, start, stop):
        yield Permutation(vals)


def check_limit(n: int, limit: int = DEFAULT_LIMIT) -> None:
    if n < 0:
        raise PermutationError(f"negative length {n}")
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the enumeration limit {limit}")


def sn_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    """Split the lexicographic ranks 0..n!-1 into ``parts`` contiguous ranges."""
    total = math.factorial(n)
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def lex_rank(values: Sequence[int]) -> int:
    """Rank of a permutation among all permutations of its length, in lexicographic order."""
    n = len(values)
    rank = 0
    remaining = sorted(values)
    for i, v in enumerate(values):
        idx = remaining.index(v)
        rank += idx * math.factorial(n - 1 - i)
        remaining.pop(idx)
    return rank


def lex_unrank(n: int, rank: int) -> Permutation:
    remaining = list(range(1, n + 1))
    out = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        idx, rank = divmod(rank, f)
        out.append(remaining.pop(idx))
    return Permutation(tuple(out))
