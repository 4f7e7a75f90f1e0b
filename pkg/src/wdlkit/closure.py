"""Closure and kernel systems on finite sets and the structures they induce.

A closure operator h on X is given extensionally by its closed sets and a
kernel operator k on Y by its open sets.  The closed sets form a weakly
complemented lattice with A^△ = h(X∖A); the open sets a dual weakly
complemented lattice with B^▽ = k(Y∖B).  An order isomorphism between the two
families yields weakly dicomplemented lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .context import indices_of, mask_of
from .errors import FormatError, NotAnIsomorphism, TheoremViolation
from .lattice import FiniteLattice, iter_bits
from .wdl import AxiomReport, Dicomplementation, check_axioms


def _set_name(ground: Sequence[str], mask: int) -> str:
    return "{" + ",".join(ground[i] for i in iter_bits(mask)) + "}"


class _SetSystem:
    kind = ""

    def __init__(self, ground: Sequence, family: Iterable[Iterable]):
        self.ground = tuple(str(x) for x in ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("duplicate ground element")
        self.position = {x: i for i, x in enumerate(self.ground)}
        masks = []
        for s in family:
            m = self.mask(s)
            if m not in masks:
                masks.append(m)
        # sorted by size then value, so index 0 is the least set
        self.masks = tuple(sorted(masks, key=lambda m: (m.bit_count(), m)))
        self._validate()

    def mask(self, items: Iterable) -> int:
        out = 0
        for x in items:
            x = str(x)
            if x not in self.position:
                raise ValueError(f"{x!r} is not in the ground set")
            out |= 1 << self.position[x]
        return out

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def sets(self) -> list[frozenset]:
        return [frozenset(self.ground[i] for i in iter_bits(m)) for m in self.masks]

    def names(self) -> list[str]:
        return [_set_name(self.ground, m) for m in self.masks]

    def lattice(self) -> FiniteLattice:
        """The family ordered by inclusion."""
        up = []
        for a in self.masks:
            up.append(mask_of(j for j, b in enumerate(self.masks) if a & ~b == 0))
        return FiniteLattice.from_up_masks(self.names(), up)

    def _validate(self):
        raise NotImplementedError


class ClosureSystem(_SetSystem):
    """Closed sets of a closure operator: contains X, closed under ∩."""

    kind = "closed"

    def _validate(self):
        if self.full not in self.masks:
            raise ValueError("closure system must contain the ground set")
        family = set(self.masks)
        for a in self.masks:
            for b in self.masks:
                if a & b not in family:
                    raise ValueError(
                        "not closed under intersection: "
                        f"{_set_name(self.ground, a)} ∩ {_set_name(self.ground, b)}")

    def closure_mask(self, mask: int) -> int:
        out = self.full
        for c in self.masks:
            if mask & ~c == 0:
                out &= c
        return out


class KernelSystem(_SetSystem):
    """Open sets of a kernel operator: contains ∅, closed under ∪."""

    kind = "open"

    def _validate(self):
        if 0 not in self.masks:
            raise ValueError("kernel system must contain the empty set")
        family = set(self.masks)
        for a in self.masks:
            for b in self.masks:
                if a | b not in family:
                    raise ValueError(
                        "not closed under union: "
                        f"{_set_name(self.ground, a)} ∪ {_set_name(self.ground, b)}")

    def kernel_mask(self, mask: int) -> int:
        out = 0
        for o in self.masks:
            if o & ~mask == 0:
                out |= o
        return out


def closure_of(S: ClosureSystem, A: Iterable) -> frozenset:
    """Smallest closed superset of A."""
    m = S.closure_mask(S.mask(A))
    return frozenset(S.ground[i] for i in iter_bits(m))


def kernel_of(S: KernelSystem, B: Iterable) -> frozenset:
    """Largest open subset of B."""
    m = S.kernel_mask(S.mask(B))
    return frozenset(S.ground[i] for i in iter_bits(m))


@dataclass(frozen=True, eq=False)
class WeaklyComplementedLattice:
    lattice: FiniteLattice
    up: tuple
    report: AxiomReport


@dataclass(frozen=True, eq=False)
class DualWeaklyComplementedLattice:
    lattice: FiniteLattice
    down: tuple
    report: AxiomReport


def _closure_up(S: ClosureSystem) -> list[int]:
    index = {m: i for i, m in enumerate(S.masks)}
    return [index[S.closure_mask(S.full & ~a)] for a in S.masks]


def _kernel_down(S: KernelSystem) -> list[int]:
    index = {m: i for i, m in enumerate(S.masks)}
    return [index[S.kernel_mask(S.full & ~b)] for b in S.masks]


def wcl_from_closure(S: ClosureSystem) -> WeaklyComplementedLattice:
    """Closed sets with ∩, A ∨ B = h(A ∪ B) and A^△ = h(X∖A); axioms (1)-(3) verified."""
    L = S.lattice()
    up = _closure_up(S)
    report = check_axioms(L, up=up)
    if not report.ok:
        raise TheoremViolation("closure structure fails: " + report.failures()[0].to_line())
    return WeaklyComplementedLattice(L, tuple(up), report)


def dwcl_from_kernel(S: KernelSystem) -> DualWeaklyComplementedLattice:
    """Open sets with ∪, A ∧ B = k(A ∩ B) and B^▽ = k(Y∖B); axioms (1')-(3') verified."""
    L = S.lattice()
    down = _kernel_down(S)
    report = check_axioms(L, down=down)
    if not report.ok:
        raise TheoremViolation("kernel structure fails: " + report.failures()[0].to_line())
    return DualWeaklyComplementedLattice(L, tuple(down), report)


def _phi_indices(Sh: ClosureSystem, Sk: KernelSystem, phi) -> list[int]:
    """phi as a list mapping closed-set index -> open-set index; validated."""
    h_index = {m: i for i, m in enumerate(Sh.masks)}
    k_index = {m: i for i, m in enumerate(Sk.masks)}
    f = [-1] * len(Sh.masks)
    hn, kn = Sh.names(), Sk.names()
    for a, b in phi:
        am, bm = Sh.mask(a), Sk.mask(b)
        if am not in h_index:
            raise NotAnIsomorphism(_set_name(Sh.ground, am), _set_name(Sk.ground, bm), "first set is not closed")
        if bm not in k_index:
            raise NotAnIsomorphism(_set_name(Sh.ground, am), _set_name(Sk.ground, bm), "second set is not open")
        i, j = h_index[am], k_index[bm]
        if f[i] not in (-1, j):
            raise NotAnIsomorphism(hn[i], kn[j], "closed set mapped twice")
        f[i] = j
    if len(Sh.masks) != len(Sk.masks):
        raise NotAnIsomorphism(hn[0], kn[0], "families have different sizes")
    for i, j in enumerate(f):
        if j < 0:
            raise NotAnIsomorphism(hn[i], "-", "closed set has no image")
    if len(set(f)) != len(f):
        j = next(j for j in f if f.count(j) > 1)
        raise NotAnIsomorphism("-", kn[j], "open set hit twice")
    for a in range(len(f)):
        for c in range(len(f)):
            le_h = Sh.masks[a] & ~Sh.masks[c] == 0
            le_k = Sk.masks[f[a]] & ~Sk.masks[f[c]] == 0
            if le_h != le_k:
                raise NotAnIsomorphism(hn[a], hn[c], "order not preserved in both directions")
    return f


def combine(Sh: ClosureSystem, Sk: KernelSystem, phi) -> Dicomplementation:
    """Weakly dicomplemented lattice on the graph {(x, φ(x))}.

    (x, y)^△ = (x^△h, φ(x^△h)) and (x, y)^▽ = (φ⁻¹(y^▽k), y^▽k).  ``phi`` is an
    explicit list of (closed set, open set) pairs.
    """
    f = _phi_indices(Sh, Sk, phi)
    inv = {j: i for i, j in enumerate(f)}
    hL = Sh.lattice()
    names = [f"{a}|{b}" for a, b in zip(Sh.names(), [Sk.names()[j] for j in f])]
    L = FiniteLattice(names, hL.up_mask, hL.down_mask, hL.meet_table, hL.join_table, hL.bottom, hL.top)
    up_h = _closure_up(Sh)
    down_k = _kernel_down(Sk)
    up = up_h
    down = [inv[down_k[f[i]]] for i in range(len(f))]
    D = Dicomplementation(L, up, down)
    report = check_axioms(L, D.up, D.down)
    if not report.ok:
        raise TheoremViolation("combined structure fails: " + report.failures()[0].to_line())
    return D


def extend_via_isomorphism(Sh: ClosureSystem, Sk: KernelSystem, phi) -> tuple[Dicomplementation, Dicomplementation]:
    """Transport each half-structure across φ.

    Returns the full structure on the closed sets (its ``down`` is
    x^▽φ = φ⁻¹(φ(x)^▽k)) and on the open sets (its ``up`` is
    y^△φ = φ(φ⁻¹(y)^△h)).  Both are verified.
    """
    f = _phi_indices(Sh, Sk, phi)
    inv = {j: i for i, j in enumerate(f)}
    up_h = _closure_up(Sh)
    down_k = _kernel_down(Sk)
    closed = Dicomplementation(Sh.lattice(), up_h, [inv[down_k[f[i]]] for i in range(len(f))])
    n = len(f)
    opened = Dicomplementation(Sk.lattice(), [f[up_h[inv[j]]] for j in range(n)], down_k)
    for D in (closed, opened):
        report = check_axioms(D.lattice, D.up, D.down)
        if not report.ok:
            raise TheoremViolation("transported structure fails: " + report.failures()[0].to_line())
    return closed, opened


# -- file format -----------------------------------------------------------

def parse_system(text: str):
    """Parse ``ground`` followed by ``closed``/``open`` lines into a system."""
    ground = None
    kind = None
    family = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        key, args = tokens[0], tokens[1:]
        if ground is None:
            if key != "ground":
                raise FormatError("first statement must be 'ground'", lineno)
            ground = args
            continue
        if key not in ("closed", "open"):
            raise FormatError(f"unknown keyword {key!r}", lineno)
        if kind not in (None, key):
            raise FormatError("cannot mix 'closed' and 'open' sets", lineno)
        kind = key
        unknown = [a for a in args if a not in ground]
        if unknown:
            raise FormatError(f"{unknown[0]!r} is not in the ground set", lineno)
        family.append(args)
    if ground is None:
        raise FormatError("missing 'ground' line")
    if kind is None:
        raise FormatError("no 'closed' or 'open' sets")
    cls = ClosureSystem if kind == "closed" else KernelSystem
    try:
        return cls(ground, family)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_system(S) -> str:
    lines = ["ground " + " ".join(S.ground)]
    for m in S.masks:
        lines.append((S.kind + " " + " ".join(S.ground[i] for i in iter_bits(m))).rstrip())
    return "\n".join(lines) + "\n"


def powerset_system(cls, ground: Sequence):
    ground = list(ground)
    n = len(ground)
    family = [[ground[i] for i in iter_bits(m)] for m in range(1 << n)]
    return cls(ground, family)


__all__ = [
    "ClosureSystem", "KernelSystem", "closure_of", "kernel_of",
    "wcl_from_closure", "dwcl_from_kernel", "combine", "extend_via_isomorphism",
    "parse_system", "format_system", "powerset_system", "indices_of",
]
