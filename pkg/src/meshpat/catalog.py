"""
The catalog of (123, R) / (132, R) pairs and discovery of new candidates.

Data lives in ``data/table{2..8}.json``.  Tables 2-6 hold proved pairs,
table 7 the conjectured ones; each entry carries its shading, technique tag
and (where a construction exists) a registered map.  Table 8 is stored as
rows of frame templates and p-literals and expanded on load.
"""
from __future__ import annotations

import functools
import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import sweep
from .bij import MapSpec
from .mesh import (MeshPattern, ShadingType, classify_type, instantiate, is_horizontally_symmetric,
                   is_vertically_symmetric, mesh_inverse, parse_pattern)

STATUSES = ("proved", "conjectured", "extended")
TECHNIQUES = ("symmetry", "swap", "recurrence", "single-swap", "open")
PROVED_TABLES = (2, 3, 4, 5, 6)
ALL_TABLES = (2, 3, 4, 5, 6, 7, 8)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class PairEntry:
    id: str
    table: int
    status: str
    technique: str
    q1: MeshPattern
    q2: MeshPattern
    map: MapSpec | None = None
    template: ShadingType | None = None
    p: MeshPattern | None = None
    note: str | None = None

    @property
    def shading(self) -> frozenset:
        return self.q1.shading

    @property
    def supported_only(self) -> bool:
        return self.status == "conjectured"


def _pair(boxes) -> tuple[MeshPattern, MeshPattern]:
    boxes = [tuple(b) for b in boxes]
    return MeshPattern.of("123", boxes), MeshPattern.of("132", boxes)


def _read(table: int) -> dict:
    text = resources.files("meshpat").joinpath("data", f"table{table}.json").read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"table{table}.json: {exc}") from None


def _entry_from_json(obj: dict, table: int) -> PairEntry:
    try:
        status, technique = obj["status"], obj["technique"]
        if status not in STATUSES or technique not in TECHNIQUES:
            raise CatalogError(f"{obj['id']}: bad status/technique {status!r}/{technique!r}")
        if obj["table"] != table:
            raise CatalogError(f"{obj['id']}: listed under table {obj['table']} in table{table}.json")
        q1, q2 = _pair(obj["shading"])
        spec = MapSpec.from_json(obj["map"]) if "map" in obj else None
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"malformed entry in table{table}.json: {obj!r}") from exc
    got = classify_type(q1)
    return PairEntry(obj["id"], table, status, technique, q1, q2, spec,
                     template=got[0] if got else None, p=got[1] if got else None, note=obj.get("note"))


@functools.lru_cache(maxsize=1)
def _proved_and_conjectured() -> tuple[PairEntry, ...]:
    out = []
    for t in range(2, 8):
        data = _read(t)
        out += [_entry_from_json(obj, t) for obj in data["entries"]]
    return tuple(out)


def _x2_maps_by_p() -> dict[frozenset, MapSpec]:
    return {e.p.shading: e.map for e in _proved_and_conjectured()
            if e.template is ShadingType.X2 and e.map is not None}


def derive_map(shape: ShadingType, p: MeshPattern) -> MapSpec | None:
    """
    The construction that applies to frame ``shape`` filled with ``p``.

    Y forms use the X construction of the transposed p, conjugated by inverse.
    3-box forms borrow the map of the X2 entry with the same p; single swaps
    there are scoped per band since the (3,0) box no longer forces uniqueness.
    X4 constructions are entry-specific, so X4 gives None.
    """
    if not shape.is_x:
        inner = derive_map(shape.partner, mesh_inverse(p).with_tau("12"))
        return None if inner is None else MapSpec(inner.kind, "inverse", inner.locator)
    boxes = p.shading
    hsym, vsym = is_horizontally_symmetric(boxes, 2), is_vertically_symmetric(boxes, 2)
    lemma = parse_pattern("12:(0,1)(0,2)(1,1)(1,2)").shading
    lemma_rc = frozenset((2 - a, 2 - b) for a, b in lemma)
    if shape is ShadingType.X1:
        if hsym:
            return MapSpec("prefix-complement")
        if vsym:
            return MapSpec("prefix-reverse")
        if boxes == lemma:
            return MapSpec("prefix-chain")
        if boxes == lemma_rc:
            return MapSpec("prefix-chain-rc")
        return MapSpec("single-swap")
    if shape in (ShadingType.X2, ShadingType.X1_3box):
        if hsym:
            return MapSpec("block-complement")
        if boxes == lemma:
            return MapSpec("block-chain")
        known = _x2_maps_by_p().get(boxes)
        if known is None:
            return None
        if shape is ShadingType.X1_3box and known.kind == "single-swap":
            return MapSpec("single-swap-block")
        return known
    if shape is ShadingType.X3:
        return MapSpec("block-reverse") if vsym else MapSpec("single-swap")
    return None


@dataclass(frozen=True)
class Table8Row:
    row: int
    templates: tuple[ShadingType, ...]
    p_list: tuple[MeshPattern, ...]


def table8_rows() -> list[Table8Row]:
    data = _read(8)
    rows = []
    for obj in data["rows"]:
        try:
            templates = tuple(ShadingType(t) for t in obj["templates"])
            ps = tuple(parse_pattern(s) for s in obj["p_list"])
        except (KeyError, ValueError) as exc:
            raise CatalogError(f"malformed table 8 row {obj.get('row')!r}: {exc}") from None
        rows.append(Table8Row(obj["row"], templates, ps))
    return rows


@functools.lru_cache(maxsize=1)
def _extended() -> tuple[PairEntry, ...]:
    out = []
    for row in table8_rows():
        for shape in row.templates:
            for idx, p in enumerate(row.p_list, start=1):
                q1 = instantiate(shape, p.with_tau("12"))
                spec = derive_map(shape, p)
                out.append(PairEntry(f"T8_{shape.value}_r{row.row}_p{idx:03d}", 8, "extended",
                                     "symmetry" if spec and spec.kind in _SYMMETRY_KINDS else
                                     ("swap" if spec and "chain" in spec.kind else "single-swap"),
                                     q1, q1.with_tau("132"), spec, shape, p))
    return tuple(out)


_SYMMETRY_KINDS = ("prefix-complement", "prefix-reverse", "block-complement", "block-reverse")


def load_catalog(tables=ALL_TABLES) -> list[PairEntry]:
    """All entries of the selected tables, in table order; ids are checked for uniqueness."""
    tables = tuple(tables)
    for t in tables:
        if t not in ALL_TABLES:
            raise CatalogError(f"no table {t}")
    entries = [e for e in _proved_and_conjectured() if e.table in tables]
    if 8 in tables:
        entries += list(_extended())
    dupes = [i for i, c in Counter(e.id for e in entries).items() if c > 1]
    if dupes:
        raise CatalogError(f"duplicate ids {dupes}")
    return entries


def get_entry(entry_id: str) -> PairEntry:
    for e in load_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


def table8_counts() -> dict[str, int]:
    """(template, p) pairs generated, and the number of distinct shadings among them."""
    ext = _extended()
    return {"pairs": len(ext), "distinct_shadings": len({e.q1.mask for e in ext})}


# --------------------------------------------------------------------------
# Discovery


def minus_antipodal_shadings(k: int = 3) -> list[frozenset]:
    """
    All minus-antipodal shadings of [0,k]^2: one box from each off-diagonal
    pair, any subset of the diagonal.
    """
    pairs = list(itertools.combinations(range(k + 1), 2))
    diag = [(i, i) for i in range(k + 1)]
    out = []
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        off = [(i, j) if c == 0 else (j, i) for (i, j), c in zip(pairs, choice)]
        for bits in itertools.product((0, 1), repeat=len(diag)):
            out.append(frozenset(off + [d for d, b in zip(diag, bits) if b]))
    return out


def _passes_upto(boxes: frozenset, n_max: int) -> bool:
    q1, q2 = _pair(boxes)
    for n in range(3, n_max + 1):
        h = sweep.joint_histogram(q1, q2, n)
        if any(h.get((l, k), 0) != c for (k, l), c in h.items()):
            return False
    return True


def _filter_chunk(args) -> list[bool]:
    chunk, n_max = args
    return [_passes_upto(b, n_max) for b in chunk]


@dataclass(frozen=True)
class DiscoveryResult:
    n_max: int
    tested: int
    passing: tuple[frozenset, ...]
    orbits: tuple[tuple[frozenset, ...], ...]
    catalog_missing: tuple[str, ...]
    unlisted: tuple[frozenset, ...]

    def to_json(self) -> dict:
        enc = lambda s: [list(b) for b in sorted(s)]
        return {
            "n_max": self.n_max,
            "tested": self.tested,
            "passing_count": len(self.passing),
            "inverse_orbit_count": len(self.orbits),
            "passing": [enc(s) for s in self.passing],
            "inverse_orbits": [[enc(s) for s in orb] for orb in self.orbits],
            "catalog_missing": list(self.catalog_missing),
            "unlisted_empirical_candidates": [enc(s) for s in self.unlisted],
        }


def discover_candidates(n_max: int, jobs: int = 1) -> DiscoveryResult:
    """
    Test every minus-antipodal shading of [0,3]^2 for joint equidistribution
    of (123, R) and (132, R) at all n <= n_max, then compare with the catalog.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    shadings = sorted(minus_antipodal_shadings(3), key=lambda s: sorted(s))
    if jobs <= 1:
        flags = [_passes_upto(s, n_max) for s in shadings]
    else:
        size = -(-len(shadings) // (jobs * 4))
        chunks = [shadings[i:i + size] for i in range(0, len(shadings), size)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            flags = [f for part in ex.map(_filter_chunk, [(c, n_max) for c in chunks]) for f in part]
    passing = tuple(s for s, ok in zip(shadings, flags) if ok)
    seen, orbits = set(), []
    for s in passing:
        if s in seen:
            continue
        t = frozenset((b, a) for a, b in s)
        orb = (s,) if t == s else tuple(sorted((s, t), key=sorted))
        seen.update(orb)
        orbits.append(orb)
    listed = {e.shading: e.id for e in load_catalog(range(2, 8))}
    passing_set = set(passing)
    missing = tuple(sorted(i for s, i in listed.items() if s not in passing_set))
    unlisted = tuple(s for s in passing if s not in listed)
    return DiscoveryResult(n_max, len(shadings), passing, tuple(orbits), missing, unlisted)
