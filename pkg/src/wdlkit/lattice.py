"""Finite bounded lattices as explicit order relations.

Elements are the integers ``0..n-1``; ``names`` maps them to display tokens.
Every element set in this package (``ElementSet``) is a ``frozenset`` of such
indices.  Orders are stored as bitmask rows: bit ``y`` of ``up_mask[x]`` is set
iff ``x <= y``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import CycleDetected, NotALattice, NotBounded

ElementSet = frozenset


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transitive_closure(up: list[int]) -> list[int]:
    # Warshall on bitmask rows
    n = len(up)
    up = list(up)
    for k in range(n):
        bit = 1 << k
        row_k = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row_k
    return up


class FiniteLattice:
    """A bounded finite lattice with precomputed meet and join tables.

    Build one with :meth:`from_covers`, :meth:`from_relation` or
    :meth:`from_up_masks`; the constructor itself trusts its arguments.
    """

    def __init__(self, names, up_mask, down_mask, meet_table, join_table, bottom, top):
        self.names = tuple(names)
        self.up_mask = tuple(up_mask)
        self.down_mask = tuple(down_mask)
        self.meet_table = tuple(tuple(r) for r in meet_table)
        self.join_table = tuple(tuple(r) for r in join_table)
        self.bottom = bottom
        self.top = top
        self.index = {name: i for i, name in enumerate(self.names)}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_covers(cls, names: Sequence, covers: Iterable[tuple]) -> "FiniteLattice":
        """Lattice whose order is the reflexive-transitive closure of ``covers``."""
        return cls.from_relation(names, covers)

    @classmethod
    def from_relation(cls, names: Sequence, pairs: Iterable[tuple]) -> "FiniteLattice":
        names = [str(n) for n in names]
        if len(set(names)) != len(names):
            raise ValueError("element names must be distinct")
        index = {name: i for i, name in enumerate(names)}
        up = [1 << i for i in range(len(names))]
        for lo, hi in pairs:
            lo, hi = str(lo), str(hi)
            if lo not in index or hi not in index:
                raise KeyError(f"cover ({lo}, {hi}) references an undeclared element")
            up[index[lo]] |= 1 << index[hi]
        return cls.from_up_masks(names, _transitive_closure(up))

    @classmethod
    def from_up_masks(cls, names: Sequence, up: Sequence[int]) -> "FiniteLattice":
        """Build from reflexive, transitive up-set masks; checks the lattice law."""
        names = tuple(str(n) for n in names)
        n = len(names)
        if n == 0:
            raise NotBounded("empty carrier has no bottom or top")
        down = [0] * n
        for x in range(n):
            for y in iter_bits(up[x]):
                down[y] |= 1 << x
        for x in range(n):
            both = up[x] & down[x] & ~(1 << x)
            if both:
                y = next(iter_bits(both))
                raise CycleDetected(names[x], names[y])

        # |down(x)| is strictly monotone along <, so sorting by it gives a
        # linear extension; in those coordinates a maximum of a down-closed
        # set is its highest bit and a minimum of an up-closed set its lowest.
        order = sorted(range(n), key=lambda i: (down[i].bit_count(), i))
        pos = [0] * n
        for p, x in enumerate(order):
            pos[x] = p

        def to_pos(mask):
            out = 0
            for i in iter_bits(mask):
                out |= 1 << pos[i]
            return out

        up_t = [to_pos(m) for m in up]
        down_t = [to_pos(m) for m in down]

        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for x in range(n):
            meet[x][x] = join[x][x] = x
            for y in range(x + 1, n):
                lower = down_t[x] & down_t[y]
                if not lower:
                    raise NotALattice(names[x], names[y], "no common lower bound")
                z = order[lower.bit_length() - 1]
                if down_t[z] != lower:
                    maxima = _extremal(lower, up_t, order)
                    raise NotALattice(
                        names[x], names[y],
                        "no greatest lower bound; maximal lower bounds "
                        + ", ".join(names[m] for m in maxima),
                    )
                meet[x][y] = meet[y][x] = z
                upper = up_t[x] & up_t[y]
                if not upper:
                    raise NotALattice(names[x], names[y], "no common upper bound")
                z = order[(upper & -upper).bit_length() - 1]
                if up_t[z] != upper:
                    minima = _extremal(upper, down_t, order)
                    raise NotALattice(
                        names[x], names[y],
                        "no least upper bound; minimal upper bounds "
                        + ", ".join(names[m] for m in minima),
                    )
                join[x][y] = join[y][x] = z
        bottom = order[0]
        top = order[-1]
        if down[top].bit_count() != n or up[bottom].bit_count() != n:
            raise NotBounded("no unique minimum or maximum")
        return cls(names, up, down, meet, join, bottom, top)

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"FiniteLattice({len(self)} elements)"

    def el(self, x) -> int:
        """Index of ``x``, which may be an index or an element name."""
        if isinstance(x, str):
            return self.index[x]
        if not 0 <= x < len(self.names):
            raise IndexError(x)
        return x

    def names_of(self, elements: Iterable[int]) -> set:
        return {self.names[i] for i in elements}

    def subset(self, names: Iterable[str]) -> ElementSet:
        return frozenset(self.index[n] for n in names)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up_mask[x] >> y & 1)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        row = self.meet_table
        for x in xs:
            acc = row[acc][x]
        return acc

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        row = self.join_table
        for x in xs:
            acc = row[acc][x]
        return acc

    def up_set(self, x: int) -> ElementSet:
        return frozenset(iter_bits(self.up_mask[x]))

    def down_set(self, x: int) -> ElementSet:
        return frozenset(iter_bits(self.down_mask[x]))

    @cached_property
    def lower_covers(self) -> tuple:
        covers = []
        for x in range(len(self)):
            strict = self.down_mask[x] & ~(1 << x)
            covers.append(tuple(
                y for y in iter_bits(strict) if self.up_mask[y] & strict == 1 << y
            ))
        return tuple(covers)

    @cached_property
    def upper_covers(self) -> tuple:
        ups = [[] for _ in range(len(self))]
        for x, lows in enumerate(self.lower_covers):
            for y in lows:
                ups[y].append(x)
        return tuple(tuple(u) for u in ups)

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(y, x) for x in range(len(self)) for y in self.lower_covers[x]]

    @cached_property
    def heights(self) -> tuple:
        """Length of the longest chain from bottom to each element."""
        h = [0] * len(self)
        for x in sorted(range(len(self)), key=lambda i: self.down_mask[i].bit_count()):
            h[x] = max((h[y] + 1 for y in self.lower_covers[x]), default=0)
        return tuple(h)

    def dual(self) -> "FiniteLattice":
        return FiniteLattice(
            self.names, self.down_mask, self.up_mask,
            self.join_table, self.meet_table, self.top, self.bottom,
        )

    def sublattice(self, elements: Iterable[int]) -> "FiniteLattice":
        """Restriction to a subset closed under meet and join, in index order."""
        keep = sorted(set(elements))
        if not keep:
            raise NotBounded("empty carrier has no bottom or top")
        new = {old: i for i, old in enumerate(keep)}
        up = []
        for old in keep:
            m = 0
            for y in keep:
                if self.leq(old, y):
                    m |= 1 << new[y]
            up.append(m)
        return FiniteLattice.from_up_masks([self.names[i] for i in keep], up)

    def to_lat(self, up: Optional[Sequence[int]] = None, down: Optional[Sequence[int]] = None) -> str:
        lines = ["elements " + " ".join(self.names)]
        for lo, hi in self.cover_pairs():
            lines.append(f"cover {self.names[lo]} {self.names[hi]}")
        if up is not None:
            lines += [f"up {self.names[x]} {self.names[up[x]]}" for x in range(len(self))]
        if down is not None:
            lines += [f"down {self.names[x]} {self.names[down[x]]}" for x in range(len(self))]
        return "\n".join(lines) + "\n"


def _extremal(mask: int, rows, order) -> list[int]:
    # members of mask whose row meets mask only in themselves; rows and mask
    # are in linear-extension coordinates
    members = [order[p] for p in iter_bits(mask)]
    out = []
    for m in members:
        own = rows[m] & mask
        if own.bit_count() == 1:
            out.append(m)
    return sorted(out)


# -- small standard lattices -----------------------------------------------

def chain(n: int) -> FiniteLattice:
    """The n-element chain ``0 < 1 < ... < n-1``."""
    names = [str(i) for i in range(n)]
    return FiniteLattice.from_covers(names, zip(names, names[1:]))


def boolean_lattice(n: int) -> FiniteLattice:
    """The powerset of an n-set; element ``i`` is the subset with bitmask ``i``."""
    size = 1 << n
    names = ["{" + ",".join(str(k) for k in range(n) if s >> k & 1) + "}" for s in range(size)]
    up = []
    for s in range(size):
        m = 0
        for t in range(size):
            if s & t == s:
                m |= 1 << t
        up.append(m)
    return FiniteLattice.from_up_masks(names, up)


def pentagon() -> FiniteLattice:
    return FiniteLattice.from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


def diamond() -> FiniteLattice:
    return FiniteLattice.from_covers(
        ["0", "p", "q", "r", "1"],
        [("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
    )


# -- irreducibles, complements, distributivity -----------------------------

def join_irreducibles(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(len(L)) if len(L.lower_covers[x]) == 1)


def meet_irreducibles(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(len(L)) if len(L.upper_covers[x]) == 1)


def pseudocomplement(L: FiniteLattice, x) -> Optional[int]:
    """Largest y with x ∧ y = 0, or None when that set has no maximum."""
    x = L.el(x)
    cands = [y for y in range(len(L)) if L.meet(x, y) == L.bottom]
    best = L.join_all(cands)
    return best if L.meet(x, best) == L.bottom else None


def dual_pseudocomplement(L: FiniteLattice, x) -> Optional[int]:
    x = L.el(x)
    cands = [y for y in range(len(L)) if L.join(x, y) == L.top]
    best = L.meet_all(cands)
    return best if L.join(x, best) == L.top else None


def is_distributive(L: FiniteLattice) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """Exhaustive triple scan; returns ``(True, None)`` or ``(False, (x, y, z))``."""
    m, j = L.meet_table, L.join_table
    n = len(L)
    for x, y, z in product(range(n), repeat=3):
        if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
            return False, (x, y, z)
    return True, None


def complements(L: FiniteLattice, x: int) -> list[int]:
    return [z for z in range(len(L)) if L.meet(x, z) == L.bottom and L.join(x, z) == L.top]


def complemented_elements(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(len(L)) if complements(L, x))


# -- isomorphism -----------------------------------------------------------

def _invariants(L: FiniteLattice) -> list[tuple]:
    heights = L.heights
    depth = L.dual().heights
    return [
        (heights[x], depth[x], L.down_mask[x].bit_count(), L.up_mask[x].bit_count(),
         len(L.lower_covers[x]), len(L.upper_covers[x]))
        for x in range(len(L))
    ]


def lattice_isomorphism(A: FiniteLattice, B: FiniteLattice, unary: Sequence[tuple] = ()) -> Optional[tuple]:
    """Find an order isomorphism ``A -> B`` as a tuple ``f`` with ``f[a] = b``.

    ``unary`` is an optional list of ``(table_on_A, table_on_B)`` pairs that
    the bijection must also commute with.  Returns None when no isomorphism
    exists.  Candidates are partitioned by height, depth, principal up/down
    set sizes and cover counts before backtracking.
    """
    n = len(A)
    if n != len(B):
        return None
    inv_a, inv_b = _invariants(A), _invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    by_inv: dict = {}
    for b, key in enumerate(inv_b):
        by_inv.setdefault(key, []).append(b)
    # bottom-up order keeps assigned elements connected to the next choice
    order = sorted(range(n), key=lambda a: (A.heights[a], len(by_inv[inv_a[a]]), a))
    f = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def consistent(a: int, b: int) -> bool:
        for a2 in assigned:
            b2 = f[a2]
            if A.leq(a2, a) != B.leq(b2, b) or A.leq(a, a2) != B.leq(b, b2):
                return False
        for ta, tb in unary:
            img = ta[a]
            if img == a:
                if tb[b] != b:
                    return False
            elif f[img] >= 0 and tb[b] != f[img]:
                return False
            for a2 in assigned:
                if ta[a2] == a and tb[f[a2]] != b:
                    return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for b in by_inv[inv_a[a]]:
            if used[b] or not consistent(a, b):
                continue
            f[a] = b
            used[b] = True
            assigned.append(a)
            if search(k + 1):
                return True
            assigned.pop()
            used[b] = False
            f[a] = -1
        return False

    return tuple(f) if search(0) else None
