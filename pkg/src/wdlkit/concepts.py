"""Concept lattices: NextClosure enumeration, meets/joins, standard contexts, DOT."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator

from .context import FormalConcept, FormalContext, indices_of
from .lattice import FiniteLattice, iter_bits, join_irreducibles, meet_irreducibles


def next_closure_extents(K: FormalContext) -> Iterator[int]:
    """All extents of K as bitmasks, in lectic order over the object order."""
    n = len(K.objects)
    full = K.all_objects
    closure = K.object_closure
    A = closure(0)
    yield A
    while A != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if A & bit:
                A ^= bit
                continue
            B = closure(A | bit)
            # accept iff no new object below i was added
            if (B & ~A) & (bit - 1) == 0:
                A = B
                break
        else:  # pragma: no cover - unreachable: the full set is always an extent
            return
        yield A


class ConceptLatticeView:
    """All concepts of a context, indexed by discovery order.

    ``extents[i]`` and ``intents[i]`` are bitmasks; :attr:`as_lattice` is the
    concept lattice with element ``i`` labeled ``c<i>``.
    """

    def __init__(self, context: FormalContext, extents: list[int]):
        self.context = context
        self.extents = tuple(extents)
        self.intents = tuple(context.extent_prime(a) for a in extents)
        self.by_extent = {a: i for i, a in enumerate(self.extents)}
        self.by_intent = {b: i for i, b in enumerate(self.intents)}

    def __len__(self) -> int:
        return len(self.extents)

    @property
    def concepts(self) -> list[FormalConcept]:
        return [FormalConcept(indices_of(a), indices_of(b)) for a, b in zip(self.extents, self.intents)]

    def concept(self, i: int) -> FormalConcept:
        return FormalConcept(indices_of(self.extents[i]), indices_of(self.intents[i]))

    def index_of(self, c: FormalConcept) -> int:
        mask = 0
        for g in c.extent:
            mask |= 1 << g
        return self.by_extent[mask]

    def leq(self, i: int, j: int) -> bool:
        return self.extents[i] & ~self.extents[j] == 0

    @cached_property
    def as_lattice(self) -> FiniteLattice:
        n = len(self)
        ext, itt = self.extents, self.intents
        up = []
        for i in range(n):
            a = ext[i]
            m = 0
            for j in range(n):
                if a & ~ext[j] == 0:
                    m |= 1 << j
            up.append(m)
        down = [0] * n
        for i in range(n):
            for j in iter_bits(up[i]):
                down[j] |= 1 << i
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        by_extent, by_intent = self.by_extent, self.by_intent
        for i in range(n):
            for j in range(i, n):
                meet[i][j] = meet[j][i] = by_extent[ext[i] & ext[j]]
                join[i][j] = join[j][i] = by_intent[itt[i] & itt[j]]
        bottom = by_extent[self.context.object_closure(0)]
        top = by_extent[self.context.all_objects]
        return FiniteLattice([f"c{i}" for i in range(n)], up, down, meet, join, bottom, top)

    @property
    def bottom(self) -> int:
        return self.as_lattice.bottom

    @property
    def top(self) -> int:
        return self.as_lattice.top

    def object_concept_index(self, g: int) -> int:
        return self.by_intent[self.context.rows[g]]

    def attribute_concept_index(self, m: int) -> int:
        return self.by_extent[self.context.cols[m]]

    def label(self, i: int) -> str:
        K = self.context
        ext = ",".join(K.object_names(iter_bits(self.extents[i])))
        itt = ",".join(K.attribute_names(iter_bits(self.intents[i])))
        return f"{{{ext}}}|{{{itt}}}"


def enumerate_concepts(K: FormalContext) -> ConceptLatticeView:
    return ConceptLatticeView(K, list(next_closure_extents(K)))


def concept_meet(view: ConceptLatticeView, S: Iterable[int]) -> FormalConcept:
    """(⋂ extents, (⋃ intents)''); the empty meet is the top concept."""
    K = view.context
    ext = K.all_objects
    for i in S:
        ext &= view.extents[i]
    return FormalConcept(indices_of(ext), indices_of(K.extent_prime(ext)))


def concept_join(view: ConceptLatticeView, S: Iterable[int]) -> FormalConcept:
    """((⋃ extents)'', ⋂ intents); the empty join is the bottom concept."""
    K = view.context
    itt = K.all_attributes
    for i in S:
        itt &= view.intents[i]
    return FormalConcept(indices_of(K.intent_prime(itt)), indices_of(itt))


def standard_context(L: FiniteLattice) -> FormalContext:
    """(J(L), M(L), ≤) with objects and attributes in element order."""
    J = sorted(join_irreducibles(L))
    M = sorted(meet_irreducibles(L))
    rows = []
    for g in J:
        rows.append(sum(1 << k for k, m in enumerate(M) if L.leq(g, m)))
    return FormalContext([L.names[g] for g in J], [L.names[m] for m in M], rows)


def density_check(view: ConceptLatticeView, gamma_images: Iterable[int], mu_images: Iterable[int]) -> bool:
    """True iff every concept is a join of ``gamma_images`` and a meet of ``mu_images``."""
    L = view.as_lattice
    gammas = list(gamma_images)
    mus = list(mu_images)
    for c in range(len(view)):
        if L.join_all(g for g in gammas if L.leq(g, c)) != c:
            return False
        if L.meet_all(m for m in mus if L.leq(c, m)) != c:
            return False
    return True


def to_dot(view: ConceptLatticeView, reduced: bool = False) -> str:
    """Directed DOT graph with one node per concept and edges lower -> upper cover.

    With ``reduced`` each object (attribute) name appears only at its object
    (attribute) concept.
    """
    K = view.context
    L = view.as_lattice
    lines = ["digraph concepts {", "  rankdir=BT;", "  node [shape=box];"]
    if reduced:
        objs: dict = {}
        attrs: dict = {}
        for g in range(len(K.objects)):
            objs.setdefault(view.object_concept_index(g), []).append(K.objects[g])
        for m in range(len(K.attributes)):
            attrs.setdefault(view.attribute_concept_index(m), []).append(K.attributes[m])
    for i in range(len(view)):
        if reduced:
            label = ",".join(objs.get(i, [])) + "|" + ",".join(attrs.get(i, []))
        else:
            label = view.label(i)
        label = label.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  c{i} [label="{label}"];')
    for lo, hi in L.cover_pairs():
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
