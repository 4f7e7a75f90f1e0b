"""Enumeration of small lattices and dicomplementations, and counterexample search.

Lattices of size n are produced from naturally labeled posets on the n-2 inner
elements (each new element picks a down-closed set of earlier elements as its
strict down-set), bounded and filtered by the lattice law.  Duplicates are
removed through a canonical code: over all linear extensions p of the inner
order, the lexicographically least sequence of bits
``[p[i] not <= p[j]]`` for j = 1.., i < j.  Output is sorted by that code, so
chains come first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from .errors import SizeCapExceeded, UnknownProperty
from .lattice import FiniteLattice, is_distributive, iter_bits, join_irreducibles, meet_irreducibles
from .wdl import (
    Dicomplementation,
    boolean_part,
    double_p_pair,
    down_axioms_hold,
    dual_skeleton,
    is_wdl,
    skeleton,
    subalgebra_witness,
    up_axioms_hold,
)

MAX_LATTICE_SIZE = 8
MAX_DICOMPLEMENTATION_SIZE = 6


def worker_count() -> int:
    """Value of WDL_THREADS (0 or unset means automatic). Work runs sequentially."""
    raw = os.environ.get("WDL_THREADS", "").strip()
    if not raw:
        return 0
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"WDL_THREADS must be a non-negative integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"WDL_THREADS must be a non-negative integer, got {raw!r}")
    return value


# -- lattices ----------------------------------------------------------------

def _natural_posets(k: int) -> Iterator[list[int]]:
    """Strict down-set masks of all naturally labeled posets on k elements."""
    down = [0] * k

    def rec(i):
        if i == k:
            yield list(down)
            return
        # down-closed subsets of {0..i-1}
        for s in range(1 << i):
            if all(down[j] & ~s == 0 for j in iter_bits(s)):
                down[i] = s
                yield from rec(i + 1)

    yield from rec(0)


def _joins_exist(down: list[int]) -> bool:
    """Every pair of inner elements has a least upper bound (top included)."""
    k = len(down)
    up = [0] * k
    for i in range(k):
        for j in iter_bits(down[i]):
            up[j] |= 1 << i
    top = 1 << k
    up = [u | (1 << i) | top for i, u in enumerate(up)]
    for x in range(k):
        for y in range(x + 1, k):
            common = up[x] & up[y]
            # natural labeling: the least index in an up-set is minimal
            u = (common & -common).bit_length() - 1
            if u == k:
                continue
            if common & ~up[u]:
                return False
    return True


def canonical_code(down: list[int]) -> tuple[tuple, tuple]:
    """(code, order) for a poset given by strict down-set masks.

    ``order`` is one linear extension realizing the least code.
    """
    k = len(down)
    states = [((), 0)]  # (placed sequence, placed mask)
    code = []
    for _ in range(k):
        best = None
        nxt = []
        for seq, placed in states:
            for e in range(k):
                if placed >> e & 1 or down[e] & ~placed:
                    continue
                row = tuple(0 if down[e] >> p & 1 else 1 for p in seq)
                if best is None or row < best:
                    best = row
                    nxt = [(seq + (e,), placed | 1 << e)]
                elif row == best:
                    nxt.append((seq + (e,), placed | 1 << e))
        code.extend(best)
        states = nxt
    return tuple(code), states[0][0]


def _inner_names(k: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [letters[i] for i in range(k)]


def _build(down: list[int], order: tuple) -> FiniteLattice:
    k = len(down)
    pos = {e: i + 1 for i, e in enumerate(order)}
    n = k + 2
    names = ["0"] + _inner_names(k) + ["1"]
    up = [0] * n
    up[0] = (1 << n) - 1
    up[n - 1] = 1 << (n - 1)
    for e in range(k):
        i = pos[e]
        up[i] |= 1 << i | 1 << (n - 1)
        for d in iter_bits(down[e]):
            up[pos[d]] |= 1 << i
    return FiniteLattice.from_up_masks(names, up)


def enumerate_lattices(n: int) -> list[FiniteLattice]:
    """All lattices with n elements up to isomorphism, in canonical-code order."""
    if n > MAX_LATTICE_SIZE:
        raise SizeCapExceeded(f"lattice enumeration is capped at {MAX_LATTICE_SIZE} elements")
    if n < 1:
        raise ValueError("size must be at least 1")
    if n == 1:
        return [FiniteLattice.from_up_masks(["0"], [1])]
    k = n - 2
    found = {}
    for down in _natural_posets(k):
        if not _joins_exist(down):
            continue
        code, order = canonical_code(down)
        if code not in found:
            found[code] = (down, order)
    return [_build(*found[c]) for c in sorted(found)]


def lattice_code(L: FiniteLattice) -> tuple:
    """Canonical code of any lattice with at least two elements (an isomorphism invariant)."""
    inner = [x for x in range(len(L)) if x not in (L.bottom, L.top)]
    # topological order of inner elements keeps the down-sets natural
    inner.sort(key=lambda x: bin(L.down_mask[x]).count("1"))
    pos = {x: i for i, x in enumerate(inner)}
    down = [sum(1 << pos[y] for y in iter_bits(L.down_mask[x]) if y in pos and y != x) for x in inner]
    return canonical_code(down)[0]


# -- dicomplementations ------------------------------------------------------

def _up_tables(L: FiniteLattice) -> list[tuple]:
    """All weak complementations: x^△ = ⋁{m^△ | m ∈ M(L), m ≥ x}."""
    n = len(L)
    M = sorted(meet_irreducibles(L))
    above = [[i for i, m in enumerate(M) if L.leq(x, m)] for x in range(n)]
    out = []
    for values in product(range(n), repeat=len(M)):
        table = tuple(L.join_all(values[i] for i in above[x]) for x in range(n))
        if up_axioms_hold(L, table):
            out.append(table)
    return sorted(set(out))


def _down_tables(L: FiniteLattice) -> list[tuple]:
    """All dual weak complementations: x^▽ = ⋀{j^▽ | j ∈ J(L), j ≤ x}."""
    n = len(L)
    J = sorted(join_irreducibles(L))
    below = [[i for i, j in enumerate(J) if L.leq(j, x)] for x in range(n)]
    out = []
    for values in product(range(n), repeat=len(J)):
        table = tuple(L.meet_all(values[i] for i in below[x]) for x in range(n))
        if down_axioms_hold(L, table):
            out.append(table)
    return sorted(set(out))


def enumerate_dicomplementations(L: FiniteLattice) -> Iterator[Dicomplementation]:
    """Every (up, down) pair satisfying the axioms, ordered by (up, down).

    The axioms for △ involve only △ and those for ▽ only ▽, so the two sides
    are enumerated independently.  Candidates are restricted to tables
    determined by their values on M(L) (resp. J(L)), which every valid table
    is because (x∧y)^△ = x^△ ∨ y^△ and dually.
    """
    if len(L) > MAX_DICOMPLEMENTATION_SIZE:
        raise SizeCapExceeded(
            f"dicomplementation enumeration is capped at {MAX_DICOMPLEMENTATION_SIZE} elements")
    ups = _up_tables(L)
    downs = _down_tables(L)
    for up in ups:
        for down in downs:
            yield Dicomplementation(L, up, down)


# -- counterexample search ---------------------------------------------------

def _boolean_part_strict(D):
    return boolean_part(D) < (skeleton(D) & dual_skeleton(D))


def _skeleton_not_subalgebra(D):
    return subalgebra_witness(D, skeleton(D)) is not None


def _dual_skeleton_not_subalgebra(D):
    return subalgebra_witness(D, dual_skeleton(D)) is not None


def _condition_fails(D):
    u, d = D.up, D.down
    return any(u[u[x]] == d[d[x]] and u[d[x]] != d[u[x]] for x in range(len(D)))


def _pp_fails(L: FiniteLattice) -> Optional[Dicomplementation]:
    pp = double_p_pair(L)
    if pp is not None and not is_wdl(pp):
        return pp
    return None


def _pp_passes_nondistributive(L: FiniteLattice) -> Optional[Dicomplementation]:
    pp = double_p_pair(L)
    if pp is not None and is_wdl(pp) and not is_distributive(L)[0]:
        return pp
    return None


# properties over dicomplementations
DICOMPLEMENTATION_PROPERTIES: dict[str, Callable[[Dicomplementation], bool]] = {
    "up-neq-down": lambda D: D.up != D.down,
    "boolean-part-strict": _boolean_part_strict,
    "skeleton-not-subalgebra": _skeleton_not_subalgebra,
    "dual-skeleton-not-subalgebra": _dual_skeleton_not_subalgebra,
    "condition-fails": _condition_fails,
}

# properties over lattices; each returns the offending structure or None
LATTICE_PROPERTIES: dict[str, Callable[[FiniteLattice], Optional[Dicomplementation]]] = {
    "pp-pair-fails-axioms": _pp_fails,
    "pp-pair-wdl-nondistributive": _pp_passes_nondistributive,
}

PROPERTIES = tuple(sorted(DICOMPLEMENTATION_PROPERTIES) + sorted(LATTICE_PROPERTIES))


@dataclass(frozen=True, eq=False)
class Hit:
    property: str
    structure: Dicomplementation
    origin: str  # e.g. "size 5 lattice #3" or "candidate #0"

    def summary(self) -> str:
        D = self.structure
        nm = D.lattice.names
        up = " ".join(nm[v] for v in D.up)
        down = " ".join(nm[v] for v in D.down)
        return (f"{self.property}: {self.origin}, elements {' '.join(nm)}; "
                f"up [{up}] down [{down}]")

    def to_lat(self) -> str:
        return self.structure.to_lat()


def find_counterexample(property: str, max_size: int,
                        candidates: Optional[Iterable[Dicomplementation]] = None) -> Optional[Hit]:
    """First structure, in enumeration order, where ``property`` holds.

    With ``candidates`` the given structures are searched instead, in order,
    ignoring ``max_size``.
    """
    if property in DICOMPLEMENTATION_PROPERTIES:
        pred = DICOMPLEMENTATION_PROPERTIES[property]
        if candidates is not None:
            for i, D in enumerate(candidates):
                if is_wdl(D) and pred(D):
                    return Hit(property, D, f"candidate #{i}")
            return None
        if max_size > MAX_DICOMPLEMENTATION_SIZE:
            raise SizeCapExceeded(
                f"dicomplementation search is capped at {MAX_DICOMPLEMENTATION_SIZE} elements")
        for n in range(1, max_size + 1):
            for i, L in enumerate(enumerate_lattices(n)):
                for D in enumerate_dicomplementations(L):
                    if pred(D):
                        return Hit(property, D, f"size {n} lattice #{i}")
        return None
    if property in LATTICE_PROPERTIES:
        probe = LATTICE_PROPERTIES[property]
        if candidates is not None:
            for i, D in enumerate(candidates):
                hit = probe(D.lattice)
                if hit is not None:
                    return Hit(property, hit, f"candidate #{i}")
            return None
        for n in range(1, max_size + 1):
            for i, L in enumerate(enumerate_lattices(n)):
                hit = probe(L)
                if hit is not None:
                    return Hit(property, hit, f"size {n} lattice #{i}")
        return None
    raise UnknownProperty(f"unknown property {property!r}; known: {', '.join(PROPERTIES)}")
