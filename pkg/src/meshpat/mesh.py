"""
Mesh patterns (tau, R) with the shading stored as a bitset.

Box (a, b) is the unit square with lower-left corner (a, b), 0 <= a, b <= k.
It lives at bit ``a * (k + 1) + b`` of ``MeshPattern.mask``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable

from . import perm as P
from .perm import Permutation

Box = tuple[int, int]


class PatternParseError(ValueError):
    pass


def box_bit(a: int, b: int, k: int) -> int:
    return 1 << (a * (k + 1) + b)


def boxes_to_mask(boxes: Iterable[Box], k: int) -> int:
    mask = 0
    for a, b in boxes:
        if not (0 <= a <= k and 0 <= b <= k):
            raise ValueError(f"box {(a, b)} outside [0,{k}]^2")
        mask |= box_bit(a, b, k)
    return mask


def mask_to_boxes(mask: int, k: int) -> frozenset[Box]:
    out = set()
    side = k + 1
    i = 0
    while mask:
        if mask & 1:
            out.add(divmod(i, side))
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True, slots=True)
class MeshPattern:
    tau: Permutation
    mask: int = 0

    def __post_init__(self):
        if not isinstance(self.tau, Permutation):
            object.__setattr__(self, "tau", Permutation(tuple(self.tau)))
        if not 0 <= self.mask < (1 << (self.k + 1) ** 2):
            raise ValueError(f"mask {self.mask:#x} has bits outside the {self.k + 1}x{self.k + 1} grid")

    @classmethod
    def of(cls, tau, boxes: Iterable[Box] = ()) -> "MeshPattern":
        """
        Build from a tau (Permutation, digit string or sequence) and a box list.

        >>> MeshPattern.of("12", [(0, 1)]).mask
        2
        """
        if isinstance(tau, str):
            tau = P.parse_permutation(tau)
        elif not isinstance(tau, Permutation):
            tau = Permutation(tuple(tau))
        return cls(tau, boxes_to_mask([tuple(b) for b in boxes], tau.n))

    @property
    def k(self) -> int:
        return self.tau.n

    @property
    def shading(self) -> frozenset[Box]:
        return mask_to_boxes(self.mask, self.k)

    def shaded(self, a: int, b: int) -> bool:
        return bool(self.mask & box_bit(a, b, self.k))

    def with_tau(self, tau) -> "MeshPattern":
        return MeshPattern.of(tau, self.shading)

    def __str__(self) -> str:
        return format_pattern(self)

    def __repr__(self) -> str:
        return f"MeshPattern({format_pattern(self)!r})"

    def to_json(self) -> dict:
        return {"tau": list(self.tau.values), "shading": [list(b) for b in sorted(self.shading)]}

    @classmethod
    def from_json(cls, obj: dict) -> "MeshPattern":
        try:
            return cls.of(tuple(obj["tau"]), [tuple(b) for b in obj["shading"]])
        except (KeyError, TypeError) as exc:
            raise PatternParseError(f"bad pattern object {obj!r}") from exc


_BOX_RE = re.compile(r"\((\d+),(\d+)\)")


def parse_pattern(text: str) -> MeshPattern:
    """
    Parse the literal ``"<tau>:<boxes>"``.

    >>> sorted(parse_pattern("132:(0,0)(1,1)(1,2)(3,1)").shading)
    [(0, 0), (1, 1), (1, 2), (3, 1)]
    >>> parse_pattern("12:").mask
    0
    """
    if ":" not in text:
        raise PatternParseError(f"missing ':' in pattern literal {text!r}")
    tau_text, box_text = text.split(":", 1)
    try:
        tau = P.parse_permutation(tau_text)
    except P.PermutationError as exc:
        raise PatternParseError(f"bad tau {tau_text!r}: {exc}") from None
    box_text = box_text.replace(" ", "")
    boxes = []
    pos = 0
    while pos < len(box_text):
        m = _BOX_RE.match(box_text, pos)
        if not m:
            raise PatternParseError(f"bad box token {box_text[pos:]!r} in {text!r}")
        boxes.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
    if len(set(boxes)) != len(boxes):
        raise PatternParseError(f"duplicate box in {text!r}")
    try:
        return MeshPattern.of(tau, boxes)
    except ValueError as exc:
        raise PatternParseError(f"{exc} in {text!r}") from None


def format_pattern(q: MeshPattern) -> str:
    return str(q.tau) + ":" + "".join(f"({a},{b})" for a, b in sorted(q.shading))


def mesh_reverse(q: MeshPattern) -> MeshPattern:
    k = q.k
    return MeshPattern.of(P.reverse(q.tau), [(k - a, b) for a, b in q.shading])


def mesh_complement(q: MeshPattern) -> MeshPattern:
    k = q.k
    return MeshPattern.of(P.complement(q.tau), [(a, k - b) for a, b in q.shading])


def mesh_inverse(q: MeshPattern) -> MeshPattern:
    return MeshPattern.of(P.inverse(q.tau), [(b, a) for a, b in q.shading])


def is_minus_antipodal(q: MeshPattern) -> bool:
    """Exactly one of (i,j), (j,i) shaded for every i != j; the diagonal is free."""
    k = q.k
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            if q.shaded(i, j) == q.shaded(j, i):
                return False
    return True


def is_symmetric_shading(q: MeshPattern) -> bool:
    return q.shading == frozenset((b, a) for a, b in q.shading)


def is_horizontally_symmetric(boxes: Iterable[Box], k: int) -> bool:
    """Invariant under (x, y) -> (x, k - y), the complement reflection."""
    s = frozenset(boxes)
    return s == frozenset((a, k - b) for a, b in s)


def is_vertically_symmetric(boxes: Iterable[Box], k: int) -> bool:
    """Invariant under (x, y) -> (k - x, y), the reverse reflection."""
    s = frozenset(boxes)
    return s == frozenset((k - a, b) for a, b in s)


def _transpose(boxes: Iterable[Box]) -> frozenset[Box]:
    return frozenset((b, a) for a, b in boxes)


class ShadingType(enum.Enum):
    """Frame forms of length-3 shadings; Y forms are the transposes of X forms."""

    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    X4 = "X4"
    Y1 = "Y1"
    Y2 = "Y2"
    Y3 = "Y3"
    Y4 = "Y4"
    X1_3box = "X1_3box"
    Y1_3box = "Y1_3box"

    @property
    def is_x(self) -> bool:
        return self.value.startswith("X")

    @property
    def partner(self) -> "ShadingType":
        """The X form for a Y form and vice versa."""
        flip = {"X": "Y", "Y": "X"}[self.value[0]]
        return ShadingType(flip + self.value[1:])

    @property
    def frame(self) -> frozenset[Box]:
        if self.is_x:
            return _X_FRAMES[self]
        return _transpose(_X_FRAMES[self.partner])


_X_FRAMES: dict[ShadingType, frozenset[Box]] = {
    ShadingType.X1: frozenset({(0, 0), (0, 1), (0, 2), (0, 3)}),
    ShadingType.X2: frozenset({(0, 0), (0, 1), (0, 2), (3, 0)}),
    ShadingType.X3: frozenset({(0, 0), (0, 1), (0, 3), (2, 0)}),
    ShadingType.X4: frozenset({(0, 0), (0, 1), (2, 0), (3, 0)}),
    ShadingType.X1_3box: frozenset({(0, 0), (0, 1), (0, 2)}),
}

_X_TAUS = {(1, 2): (1, 2, 3), (2, 1): (1, 3, 2)}


def instantiate(shape: ShadingType, p: MeshPattern) -> MeshPattern:
    """
    Insert the length-2 pattern p into the upper-right 3x3 block of a frame.

    The tau is 1 followed by p.tau shifted up by one.  For Y forms p sits in
    the same block; this equals mesh_inverse of the X form instantiated with
    the inverse of p.

    >>> str(instantiate(ShadingType.X1, parse_pattern("12:(1,0)(1,1)(2,0)(2,1)")))
    '123:(0,0)(0,1)(0,2)(0,3)(2,1)(2,2)(3,1)(3,2)'
    """
    if p.k != 2:
        raise ValueError(f"p must have length 2, got {p.k}")
    tau = (1,) + tuple(v + 1 for v in p.tau.values)
    boxes = set(shape.frame) | {(a + 1, b + 1) for a, b in p.shading}
    return MeshPattern.of(tau, boxes)


_BORDER = frozenset({(0, j) for j in range(4)} | {(i, 0) for i in range(4)})
_CLASS_ORDER = [ShadingType.X1, ShadingType.X2, ShadingType.X3, ShadingType.X4,
                ShadingType.X1_3box, ShadingType.Y1, ShadingType.Y2, ShadingType.Y3,
                ShadingType.Y4, ShadingType.Y1_3box]


def classify_type(q: MeshPattern) -> tuple[ShadingType, MeshPattern] | None:
    """
    Recover (frame form, p) from a length-3 pattern, or None.

    The shading on the bottom row and left column must be exactly one frame
    and tau must begin with 1.  The 3-box forms are matched only when no
    4-box frame applies (they are proper subsets, so the border test decides).
    """
    if q.k != 3 or q.tau.values[0] != 1:
        return None
    border = q.shading & _BORDER
    hits = [t for t in _CLASS_ORDER if t.frame == border]
    if not hits:
        return None
    if len(hits) > 1:
        raise AssertionError(f"shading {sorted(q.shading)} matches several frames {hits}")
    shape = hits[0]
    inner = [(a - 1, b - 1) for a, b in q.shading - _BORDER]
    ptau = P.standardize(q.tau.values[1:])
    return shape, MeshPattern.of(ptau, inner)
