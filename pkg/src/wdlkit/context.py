"""Formal contexts (G, M, I), the derivation operators, clarification and reduction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FormatError, OutOfRange
from .lattice import iter_bits


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> frozenset:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class FormalConcept:
    """A pair (extent, intent) of object and attribute index sets.

    Use :meth:`FormalContext.concept` to build one with the closure check.
    """

    extent: frozenset
    intent: frozenset


class FormalContext:
    """Objects, attributes and an incidence relation stored as row bitmasks.

    ``rows[g]`` has bit ``m`` set iff object ``g`` has attribute ``m``.
    """

    def __init__(self, objects: Sequence, attributes: Sequence, rows: Sequence[int]):
        self.objects = tuple(str(g) for g in objects)
        self.attributes = tuple(str(m) for m in attributes)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object name")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("duplicate attribute name")
        if len(rows) != len(self.objects):
            raise ValueError("incidence has wrong number of rows")
        full = (1 << len(self.attributes)) - 1
        if any(r & ~full for r in rows):
            raise ValueError("incidence row references a missing attribute")
        self.rows = tuple(rows)
        self.object_index = {g: i for i, g in enumerate(self.objects)}
        self.attribute_index = {m: i for i, m in enumerate(self.attributes)}

    @classmethod
    def from_pairs(cls, objects, attributes, incidence: Iterable[tuple]) -> "FormalContext":
        """Build from name lists and ``(object, attribute)`` incidence pairs."""
        objects = [str(g) for g in objects]
        attributes = [str(m) for m in attributes]
        gi = {g: i for i, g in enumerate(objects)}
        mi = {m: i for i, m in enumerate(attributes)}
        rows = [0] * len(objects)
        for g, m in incidence:
            rows[gi[str(g)]] |= 1 << mi[str(m)]
        return cls(objects, attributes, rows)

    @classmethod
    def from_relation(cls, objects, attributes, relation) -> "FormalContext":
        """Build from a predicate ``relation(g, m) -> bool`` over the given items."""
        objects = list(objects)
        attributes = list(attributes)
        rows = [mask_of(j for j, m in enumerate(attributes) if relation(g, m)) for g in objects]
        return cls(objects, attributes, rows)

    def __repr__(self) -> str:
        return f"FormalContext({len(self.objects)}x{len(self.attributes)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormalContext)
            and self.objects == other.objects
            and self.attributes == other.attributes
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.attributes, self.rows))

    @property
    def all_objects(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def all_attributes(self) -> int:
        return (1 << len(self.attributes)) - 1

    @cached_property
    def cols(self) -> tuple:
        cols = [0] * len(self.attributes)
        for g, row in enumerate(self.rows):
            for m in iter_bits(row):
                cols[m] |= 1 << g
        return tuple(cols)

    def incident(self, g: int, m: int) -> bool:
        return bool(self.rows[g] >> m & 1)

    # -- bitmask derivations -----------------------------------------------

    def extent_prime(self, objs: int) -> int:
        """A' for a bitmask A of objects."""
        out = self.all_attributes
        rows = self.rows
        for g in iter_bits(objs):
            out &= rows[g]
        return out

    def intent_prime(self, attrs: int) -> int:
        """B' for a bitmask B of attributes."""
        out = self.all_objects
        cols = self.cols
        for m in iter_bits(attrs):
            out &= cols[m]
        return out

    def object_closure(self, objs: int) -> int:
        return self.intent_prime(self.extent_prime(objs))

    def attribute_closure(self, attrs: int) -> int:
        return self.extent_prime(self.intent_prime(attrs))

    # -- name/index level API ----------------------------------------------

    def _object_mask(self, items) -> int:
        out = 0
        for g in items:
            if isinstance(g, str):
                if g not in self.object_index:
                    raise OutOfRange(f"unknown object {g!r}")
                g = self.object_index[g]
            elif not 0 <= g < len(self.objects):
                raise OutOfRange(f"object index {g} out of range")
            out |= 1 << g
        return out

    def _attribute_mask(self, items) -> int:
        out = 0
        for m in items:
            if isinstance(m, str):
                if m not in self.attribute_index:
                    raise OutOfRange(f"unknown attribute {m!r}")
                m = self.attribute_index[m]
            elif not 0 <= m < len(self.attributes):
                raise OutOfRange(f"attribute index {m} out of range")
            out |= 1 << m
        return out

    def object_names(self, indices: Iterable[int]) -> list:
        return [self.objects[i] for i in sorted(indices)]

    def attribute_names(self, indices: Iterable[int]) -> list:
        return [self.attributes[i] for i in sorted(indices)]

    def concept(self, extent: Iterable, intent: Iterable) -> FormalConcept:
        """Checked constructor: raises ValueError unless extent' = intent and intent' = extent."""
        a = self._object_mask(extent)
        b = self._attribute_mask(intent)
        if self.extent_prime(a) != b or self.intent_prime(b) != a:
            raise ValueError("not a formal concept of this context")
        return FormalConcept(indices_of(a), indices_of(b))

    def to_cxt(self) -> str:
        lines = ["B", "", str(len(self.objects)), str(len(self.attributes)), ""]
        lines += self.objects
        lines += self.attributes
        n = len(self.attributes)
        for row in self.rows:
            lines.append("".join("X" if row >> m & 1 else "." for m in range(n)))
        return "\n".join(lines) + "\n"


def derive_extent(K: FormalContext, A: Iterable) -> frozenset:
    """A' = attributes shared by every object of A (names or indices)."""
    return indices_of(K.extent_prime(K._object_mask(A)))


def derive_intent(K: FormalContext, B: Iterable) -> frozenset:
    """B' = objects having every attribute of B (names or indices)."""
    return indices_of(K.intent_prime(K._attribute_mask(B)))


def object_concept(K: FormalContext, g) -> FormalConcept:
    gm = K._object_mask([g])
    intent = K.extent_prime(gm)
    return FormalConcept(indices_of(K.intent_prime(intent)), indices_of(intent))


def attribute_concept(K: FormalContext, m) -> FormalConcept:
    mm = K._attribute_mask([m])
    extent = K.intent_prime(mm)
    return FormalConcept(indices_of(extent), indices_of(K.extent_prime(extent)))


def _merge_classes(masks: Sequence[int], names: Sequence[str]) -> tuple[list[int], dict]:
    """Indices of the kept representative per equal-mask class and a merge log."""
    first: dict = {}
    for i, m in enumerate(masks):
        first.setdefault(m, []).append(i)
    keep = []
    log = {}
    for cls in first.values():
        rep = min(cls, key=lambda i: names[i])
        keep.append(rep)
        others = [names[i] for i in cls if i != rep]
        if others:
            log[names[rep]] = others
    keep.sort()
    return keep, log


def subcontext(K: FormalContext, objects: Sequence[int], attributes: Sequence[int]) -> FormalContext:
    rows = []
    for g in objects:
        row = K.rows[g]
        rows.append(mask_of(j for j, m in enumerate(attributes) if row >> m & 1))
    return FormalContext([K.objects[g] for g in objects], [K.attributes[m] for m in attributes], rows)


def clarify(K: FormalContext) -> FormalContext:
    """Merge objects with equal rows and attributes with equal columns.

    The lexicographically first name of each class is kept, at the position
    of its first occurrence order.  The merge log is available as
    ``clarify_log(K)``.
    """
    return clarify_log(K)[0]


def clarify_log(K: FormalContext) -> tuple[FormalContext, dict]:
    objs, olog = _merge_classes(K.rows, K.objects)
    attrs, alog = _merge_classes(K.cols, K.attributes)
    return subcontext(K, objs, attrs), {"objects": olog, "attributes": alog}


def is_clarified(K: FormalContext) -> bool:
    return len(set(K.rows)) == len(K.rows) and len(set(K.cols)) == len(K.cols)


def reducible_objects(K: FormalContext) -> list[int]:
    """Objects g whose object concept is join-reducible.

    Such g satisfy g' = ⋂{h' | h' ⊋ g'} (the empty intersection being M),
    which covers the case where γg is the bottom concept.
    """
    out = []
    for g, row in enumerate(K.rows):
        acc = K.all_attributes
        for h, other in enumerate(K.rows):
            if other != row and other & row == row:
                acc &= other
        if acc == row:
            out.append(g)
    return out


def reducible_attributes(K: FormalContext) -> list[int]:
    out = []
    cols = K.cols
    for m, col in enumerate(cols):
        acc = K.all_objects
        for other in cols:
            if other != col and other & col == col:
                acc &= other
        if acc == col:
            out.append(m)
    return out


def reduce(K: FormalContext) -> FormalContext:
    """Drop reducible objects and attributes of the clarified context."""
    if not is_clarified(K):
        K = clarify(K)
    drop_g = set(reducible_objects(K))
    drop_m = set(reducible_attributes(K))
    return subcontext(
        K,
        [g for g in range(len(K.objects)) if g not in drop_g],
        [m for m in range(len(K.attributes)) if m not in drop_m],
    )


# -- Burmeister .cxt -------------------------------------------------------

def parse_cxt(text: str) -> FormalContext:
    lines = text.replace("\r", "").split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def line(i):
        if i >= len(lines):
            raise FormatError("unexpected end of file", i + 1)
        return lines[i]

    if line(0) != "B":
        raise FormatError("expected 'B'", 1)
    if line(1) != "":
        raise FormatError("expected empty line", 2)
    try:
        ng = int(line(2))
        nm = int(line(3))
    except ValueError:
        raise FormatError("object/attribute counts must be decimal integers", 3) from None
    if ng < 0 or nm < 0:
        raise FormatError("negative count", 3)
    if line(4) != "":
        raise FormatError("expected empty line", 5)
    objects = [line(5 + i) for i in range(ng)]
    attributes = [line(5 + ng + j) for j in range(nm)]
    rows = []
    start = 5 + ng + nm
    for i in range(ng):
        row = line(start + i)
        if len(row) != nm:
            raise FormatError(f"expected {nm} incidence characters, got {len(row)}", start + i + 1)
        mask = 0
        for j, ch in enumerate(row):
            if ch == "X":
                mask |= 1 << j
            elif ch != ".":
                raise FormatError(f"bad incidence character {ch!r}", start + i + 1)
        rows.append(mask)
    if len(lines) > start + ng:
        raise FormatError("trailing content", start + ng + 1)
    try:
        return FormalContext(objects, attributes, rows)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_cxt(path) -> FormalContext:
    with open(path, encoding="utf-8") as fh:
        return parse_cxt(fh.read())
