"""
Explicit bijections that exchange the occurrence counts of two patterns.

Every map here is expressed as a sequence of transpositions of *values*:
``(u, v)`` means "swap the positions of u and v in the current permutation".
That single representation gives each map a step-by-step trace and makes
the structural operations mechanical:

* restricting a map to a block of elements (a band or the set above pi_1)
  relabels the block's standardized values by its actual values;
* conjugating by reverse leaves value swaps unchanged, conjugating by
  complement relabels u -> m + 1 - u;
* conjugating by inverse turns a value swap in pi^{-1} into the swap of the
  two corresponding positions of pi.

Maps are total: on permutations outside a construction's case analysis they
return the input unchanged.
"""
from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import sweep
from .mesh import MeshPattern, classify_type, mesh_inverse, parse_pattern, ShadingType
from .occur import Occurrence, occurrences
from .perm import Permutation, decompose, inverse, lex_rank, lex_unrank, standardize

Swap = tuple[int, int]

LEMMA_P1 = parse_pattern("12:(0,1)(0,2)(1,1)(1,2)")
LEMMA_P2 = parse_pattern("21:(0,1)(0,2)(1,1)(1,2)")


class PreconditionError(RuntimeError):
    """A construction was applied to a permutation its proof does not cover."""


@dataclass(frozen=True)
class SwapStep:
    step: int
    swap: Swap
    result: Permutation

    def to_json(self) -> dict:
        return {"step": self.step, "swap": list(self.swap), "result": str(self.result)}


def apply_swaps(values: Sequence[int], swaps: Sequence[Swap]) -> list[tuple[int, ...]]:
    """The successive states after each swap (the input itself is not included)."""
    cur = list(values)
    where = {v: i for i, v in enumerate(cur)}
    states = []
    for u, v in swaps:
        i, j = where[u], where[v]
        cur[i], cur[j] = v, u
        where[u], where[v] = j, i
        states.append(tuple(cur))
    return states


def _final(values: Sequence[int], swaps: Sequence[Swap]) -> tuple[int, ...]:
    states = apply_swaps(values, swaps)
    return states[-1] if states else tuple(values)


def _steps(values: Sequence[int], swaps: Sequence[Swap]) -> list[SwapStep]:
    return [SwapStep(i, s, Permutation(st)) for i, (s, st) in
            enumerate(zip(swaps, apply_swaps(values, swaps)), start=1)]


# --------------------------------------------------------------------------
# Length-2 swap chain


def chain_swaps(values: Sequence[int], p1: MeshPattern = LEMMA_P1, p2: MeshPattern = LEMMA_P2) -> list[Swap]:
    """
    Swaps of the chain construction for a pair of length-2 patterns.

    The involved positions i_1 < ... < i_t are fixed from the input.  Step j
    (1 <= j < t) takes the unique occurrence, of either pattern, in the current
    permutation whose second element sits at i_{t-j+1}, and swaps its two
    elements.
    """
    pi = Permutation(tuple(values))
    involved = sorted({i for q in (p1, p2) for o in occurrences(pi, q) for i in o.indices})
    swaps: list[Swap] = []
    cur = pi
    for target in reversed(involved[1:]):
        found = [o for q in (p1, p2) for o in occurrences(cur, q) if o.indices[1] == target]
        if len(found) != 1:
            raise PreconditionError(
                f"{len(found)} occurrences end at position {target} of {cur} (from {pi})")
        a, b = found[0].values(cur)
        swaps.append((a, b))
        cur = Permutation(_final(cur.values, [(a, b)]))
    return swaps


def swap_chain(pi: Permutation, p1: MeshPattern = LEMMA_P1,
               p2: MeshPattern = LEMMA_P2) -> tuple[Permutation, list[SwapStep]]:
    """
    Run the chain construction and return the image with its trace.

    >>> img, trace = swap_chain(Permutation((2, 6, 3, 5, 1, 8, 4, 9, 7)))
    >>> str(img), [s.swap for s in trace]
    ('325916487', [(8, 9), (6, 9), (9, 5), (5, 3), (2, 3)])
    """
    swaps = chain_swaps(pi.values, p1, p2)
    steps = _steps(pi.values, swaps)
    return (steps[-1].result if steps else pi), steps


# --------------------------------------------------------------------------
# Restriction to blocks of elements


def _relabel(swaps: Sequence[Swap], labels: Sequence[int]) -> list[Swap]:
    """Map standardized values 1..m of a block onto the block's actual values."""
    return [(labels[u - 1], labels[v - 1]) for u, v in swaps]


def _on_block(values: Sequence[int], positions: Sequence[int], inner) -> list[Swap]:
    """Apply ``inner`` (values -> swaps) to the standardized subsequence at ``positions`` (1-indexed)."""
    if len(positions) < 2:
        return []
    sub = [values[p - 1] for p in positions]
    return _relabel(inner(standardize(sub).values), sorted(sub))


def _complement_swaps(values: Sequence[int]) -> list[Swap]:
    m = len(values)
    return [(r, m + 1 - r) for r in range(1, m // 2 + 1)]


def _reverse_swaps(values: Sequence[int]) -> list[Swap]:
    m = len(values)
    return [(values[r], values[m - 1 - r]) for r in range(m // 2)]


def _rc_conjugate(inner):
    """Conjugate a swap producer by reverse-complement."""
    def run(values):
        m = len(values)
        rc = tuple(m + 1 - v for v in reversed(values))
        return [(m + 1 - u, m + 1 - v) for u, v in inner(rc)]
    return run


def prefix_swaps(values: Sequence[int], inner) -> list[Swap]:
    """Apply ``inner`` to the elements after pi_1 that exceed pi_1."""
    if not values:
        return []
    return _on_block(values, decompose(Permutation(tuple(values))).above, inner)


def band_swaps(values: Sequence[int], inner) -> list[Swap]:
    """Apply ``inner`` independently inside every band A_i of the staircase."""
    if not values:
        return []
    out: list[Swap] = []
    for band in decompose(Permutation(tuple(values))).bands:
        out += _on_block(values, band, inner)
    return out


def column_swaps(values: Sequence[int], inner) -> list[Swap]:
    """Apply ``inner`` independently inside every column block C_j."""
    if not values:
        return []
    out: list[Swap] = []
    for block in decompose(Permutation(tuple(values))).column_blocks:
        out += _on_block(values, block, inner)
    return out


def blockwise_complement(pi: Permutation) -> Permutation:
    """
    Complement the values inside every band, keeping positions and value sets.

    >>> str(blockwise_complement(Permutation((2, 4, 5, 1, 3))))
    '24315'
    """
    return Permutation(_final(pi.values, band_swaps(pi.values, _complement_swaps)))


def blockwise_reverse(pi: Permutation) -> Permutation:
    """
    Reverse the elements inside every column block between consecutive
    left-to-right minima.

    >>> str(blockwise_reverse(Permutation((2, 4, 5, 1, 3))))
    '25413'
    """
    return Permutation(_final(pi.values, column_swaps(pi.values, _reverse_swaps)))


def swap_chain_blockwise(pi: Permutation, q1: MeshPattern | None = None,
                         q2: MeshPattern | None = None) -> Permutation:
    """
    Run the length-2 chain inside every band.  With q1/q2 given, the inner
    pair is their p (they must be of an X2-like type); otherwise the default
    chain pair is used.
    """
    p1, p2 = _inner_pair(q1, q2)
    return Permutation(_final(pi.values, band_swaps(pi.values, functools.partial(chain_swaps, p1=p1, p2=p2))))


def _inner_pair(q1, q2) -> tuple[MeshPattern, MeshPattern]:
    if q1 is None:
        return LEMMA_P1, LEMMA_P2
    got = classify_type(q1)
    if got is None:
        raise ValueError(f"{q1} has no frame form")
    p = got[1]
    return p.with_tau("12"), p.with_tau("21")


# --------------------------------------------------------------------------
# Single swap


def tail_locator(values: Sequence[int], occ: Occurrence) -> tuple[int, int]:
    """Positions of the second and third elements of the occurrence."""
    return occ.indices[1], occ.indices[2]


LOCATORS: dict[str, Callable] = {"tail": tail_locator}


def single_swap_swaps(values: Sequence[int], q1: MeshPattern, q2: MeshPattern,
                      locator: Callable = tail_locator, per_block: bool = False) -> list[Swap]:
    """
    Swap two elements of the unique occurrence when exactly one of q1, q2
    occurs.

    With ``per_block`` the rule is applied separately to the occurrences
    sharing the same first element (one band at a time).
    """
    pi = Permutation(tuple(values))
    groups: dict[int, list[list[Occurrence]]] = defaultdict(lambda: [[], []])
    for side, q in enumerate((q1, q2)):
        for o in occurrences(pi, q):
            groups[o.indices[0] if per_block else 0][side].append(o)
    swaps: list[Swap] = []
    for key in sorted(groups):
        o1, o2 = groups[key]
        if len(o1) > 1 or len(o2) > 1:
            scope = f"block starting at position {key}" if per_block else "permutation"
            raise PreconditionError(
                f"{len(o1)} and {len(o2)} occurrences in one {scope} of {pi}")
        if len(o1) + len(o2) == 1:
            i, j = locator(values, (o1 or o2)[0])
            swaps.append((values[i - 1], values[j - 1]))
    return swaps


def single_swap_map(pi: Permutation, q1: MeshPattern, q2: MeshPattern,
                    locator: Callable = tail_locator, per_block: bool = False) -> Permutation:
    return Permutation(_final(pi.values, single_swap_swaps(pi.values, q1, q2, locator, per_block)))


# --------------------------------------------------------------------------
# Registered maps


def _kind_swaps(kind: str, values, q1, q2, locator: str = "tail") -> list[Swap]:
    if kind == "chain":
        return chain_swaps(values, q1, q2)
    if kind == "prefix-complement":
        return prefix_swaps(values, _complement_swaps)
    if kind == "prefix-reverse":
        return prefix_swaps(values, _reverse_swaps)
    if kind == "prefix-chain":
        return prefix_swaps(values, chain_swaps)
    if kind == "prefix-chain-rc":
        return prefix_swaps(values, _rc_conjugate(chain_swaps))
    if kind == "block-complement":
        return band_swaps(values, _complement_swaps)
    if kind == "block-reverse":
        return column_swaps(values, _reverse_swaps)
    if kind == "block-chain":
        p1, p2 = _inner_pair(q1, q2)
        return band_swaps(values, functools.partial(chain_swaps, p1=p1, p2=p2))
    if kind in ("single-swap", "single-swap-block"):
        return single_swap_swaps(values, q1, q2, LOCATORS[locator], per_block=kind == "single-swap-block")
    raise ValueError(f"unknown map kind {kind!r}")


MAP_KINDS = ("chain", "prefix-complement", "prefix-reverse", "prefix-chain", "prefix-chain-rc",
             "block-complement", "block-reverse", "block-chain", "single-swap", "single-swap-block")


@dataclass(frozen=True)
class MapSpec:
    """A registered map: a construction kind, optionally conjugated by inverse."""

    kind: str
    conjugate: str | None = None
    locator: str = "tail"

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.conjugate not in (None, "inverse"):
            raise ValueError(f"unknown conjugation {self.conjugate!r}")
        if self.locator not in LOCATORS:
            raise ValueError(f"unknown locator {self.locator!r}")

    @classmethod
    def from_json(cls, obj: dict) -> "MapSpec":
        return cls(obj["kind"], obj.get("conjugate"), obj.get("locator", "tail"))

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.conjugate:
            out["conjugate"] = self.conjugate
        if self.locator != "tail":
            out["locator"] = self.locator
        return out


def map_swaps(spec: MapSpec, values: Sequence[int], q1: MeshPattern, q2: MeshPattern) -> list[Swap]:
    """The value swaps the registered map performs on ``values``, in order."""
    if spec.conjugate is None:
        return _kind_swaps(spec.kind, values, q1, q2, spec.locator)
    # work on the inverse with the inverse pair, then translate each value
    # swap (u, v) of the inverse into the swap of values pos(u), pos(v)
    inv = inverse(Permutation(tuple(values))).values
    inner = _kind_swaps(spec.kind, inv, mesh_inverse(q1), mesh_inverse(q2), spec.locator)
    out = []
    cur = list(inv)
    where = {v: i for i, v in enumerate(cur)}
    for u, v in inner:
        i, j = where[u], where[v]
        out.append((i + 1, j + 1))
        cur[i], cur[j] = v, u
        where[u], where[v] = j, i
    return out


def apply_map(spec: MapSpec, q1: MeshPattern, q2: MeshPattern, pi: Permutation) -> Permutation:
    return Permutation(_final(pi.values, map_swaps(spec, pi.values, q1, q2)))


def trace_map(spec: MapSpec, q1: MeshPattern, q2: MeshPattern, pi: Permutation) -> list[SwapStep]:
    return _steps(pi.values, map_swaps(spec, pi.values, q1, q2))


def build_map(spec: MapSpec, q1: MeshPattern, q2: MeshPattern) -> Callable[[Permutation], Permutation]:
    """A picklable callable pi -> f(pi)."""
    return functools.partial(apply_map, spec, q1, q2)


# --------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class BijectionReport:
    n: int
    checked: int
    ok: bool
    failure: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_bijection(fn: Callable[[Permutation], Permutation], q1: MeshPattern, q2: MeshPattern,
                     n: int) -> BijectionReport:
    """
    Check that ``fn`` is injective on S_n and sends every permutation with
    counts (k, l) to one with counts (l, k).  Stops at the first violation.
    """
    c1, c2 = sweep.count_vector(q1, n), sweep.count_vector(q2, n)
    perms = sweep.perm_array(n)
    seen = np.full(len(c1), -1, dtype=np.int64)
    for r in range(len(c1)):
        pi = Permutation(tuple(int(v) for v in perms[r]))
        try:
            img = fn(pi)
        except PreconditionError as exc:
            return BijectionReport(n, r, False, {"kind": "precondition", "pi": str(pi), "detail": str(exc)})
        if img.n != n:
            return BijectionReport(n, r, False, {"kind": "length", "pi": str(pi), "image": str(img)})
        s = lex_rank(img.values)
        if seen[s] >= 0:
            other = lex_unrank(n, int(seen[s]))
            return BijectionReport(n, r, False, {"kind": "collision", "pi": str(pi),
                                                 "other": str(other), "image": str(img)})
        seen[s] = r
        if (c1[s], c2[s]) != (c2[r], c1[r]):
            return BijectionReport(n, r, False, {
                "kind": "counts", "pi": str(pi), "image": str(img),
                "counts": [int(c1[r]), int(c2[r])], "image_counts": [int(c1[s]), int(c2[s])]})
    return BijectionReport(n, len(c1), True)


@dataclass(frozen=True)
class ReductionReport:
    n_max: int
    ok: bool
    failure: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_reduction(q1: MeshPattern, q2: MeshPattern, n_max: int) -> ReductionReport:
    """
    For a pair of X1 type, check that the occurrences of each q in pi are
    exactly pi_1 followed by an occurrence of p inside the elements above pi_1.
    """
    pairs = []
    for q in (q1, q2):
        got = classify_type(q)
        if got is None or got[0] is not ShadingType.X1:
            raise ValueError(f"{q} is not of type X1")
        pairs.append((q, got[1]))
    for n in range(1, n_max + 1):
        for r in range(len(sweep.perm_array(n))):
            pi = lex_unrank(n, r)
            above = decompose(pi).above
            sub = standardize([pi[p] for p in above])
            for q, p in pairs:
                direct = {o.indices for o in occurrences(pi, q)}
                lifted = {(1,) + tuple(above[i - 1] for i in o.indices) for o in occurrences(sub, p)}
                if direct != lifted:
                    return ReductionReport(n_max, False, {"pi": str(pi), "pattern": str(q),
                                                          "direct": sorted(direct), "lifted": sorted(lifted)})
    return ReductionReport(n_max, True)


@dataclass(frozen=True)
class UniquenessReport:
    n_max: int
    scope: str
    max_seen: int
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_uniqueness(spec: MapSpec, q1: MeshPattern, q2: MeshPattern, n_max: int) -> UniquenessReport:
    """
    Check that a single-swap construction never sees two occurrences of the
    same pattern in one scope, for all n <= n_max.

    The scope is the whole permutation, or the set of occurrences sharing a
    first element for ``single-swap-block``.  Inverse-conjugated maps are
    checked on pi^{-1} against the inverse patterns, which is where they act.
    """
    if spec.kind not in ("single-swap", "single-swap-block"):
        raise ValueError(f"{spec.kind} is not a single-swap construction")
    per_block = spec.kind == "single-swap-block"
    if spec.conjugate == "inverse":
        q1, q2 = mesh_inverse(q1), mesh_inverse(q2)
    scope = "block" if per_block else "permutation"
    best = 0
    for n in range(1, n_max + 1):
        for r in range(len(sweep.perm_array(n))):
            pi = lex_unrank(n, r)
            for q in (q1, q2):
                keys = [o.indices[0] if per_block else 0 for o in occurrences(pi, q)]
                if not keys:
                    continue
                top = max(keys.count(k) for k in set(keys))
                best = max(best, top)
                if top > 1:
                    where = "inverse" if spec.conjugate == "inverse" else "pi"
                    return UniquenessReport(n_max, scope, top, False, {
                        "pi": str(pi), "checked_on": where, "pattern": str(q), "occurrences": top})
    return UniquenessReport(n_max, scope, best, True)
