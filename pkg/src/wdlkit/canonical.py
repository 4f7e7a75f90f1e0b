"""Primary filters and ideals, the canonical context and the embedding into it.

Every filter of a finite lattice is principal, so filters and ideals are
carried by their generators: ``x`` stands for ↑x and ``y`` for ↓y.  By default
only proper filters (x ≠ 0) and proper ideals (y ≠ 1) are used; the improper
ones contain every element and add a full row or column to the canonical
context without changing its concept algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .concepts import enumerate_concepts
from .context import FormalContext
from .errors import AxiomViolation, NotWithNegation, TheoremViolation
from .lattice import boolean_lattice, iter_bits, lattice_isomorphism
from .wdl import Dicomplementation, check_axioms, is_wdl


def _require_wdl(D: Dicomplementation):
    if not is_wdl(D):
        raise AxiomViolation(check_axioms(D.lattice, D.up, D.down))


def is_primary_filter(D: Dicomplementation, x: int) -> bool:
    """↑x contains w or w^△ for every w."""
    L = D.lattice
    return all(L.leq(x, w) or L.leq(x, D.up[w]) for w in range(len(L)))


def is_primary_ideal(D: Dicomplementation, y: int) -> bool:
    """↓y contains w or w^▽ for every w."""
    L = D.lattice
    return all(L.leq(w, y) or L.leq(D.down[w], y) for w in range(len(L)))


@dataclass(frozen=True, eq=False)
class PrimaryFilterSet:
    carrier: Dicomplementation
    filters: tuple  # generators x of primary filters ↑x, in element order
    ideals: tuple   # generators y of primary ideals ↓y

    def filter_names(self) -> list[str]:
        return [self.carrier.lattice.names[x] for x in self.filters]

    def ideal_names(self) -> list[str]:
        return [self.carrier.lattice.names[y] for y in self.ideals]


def primary_filters(D: Dicomplementation, include_improper: bool = False) -> PrimaryFilterSet:
    _require_wdl(D)
    L = D.lattice
    filters = []
    ideals = []
    for x in range(len(L)):
        if (include_improper or x != L.bottom) and is_primary_filter(D, x):
            filters.append(x)
        if (include_improper or x != L.top) and is_primary_ideal(D, x):
            ideals.append(x)
    return PrimaryFilterSet(D, tuple(filters), tuple(ideals))


def _extend(D: Dicomplementation, start: int, avoid: int, flip: bool) -> int:
    L = D.lattice
    leq = (lambda a, b: L.leq(b, a)) if flip else L.leq
    primary = is_primary_ideal if flip else is_primary_filter
    # in ideal mode the roles of ≤ and ≥ swap
    cands = [x for x in range(len(L)) if leq(x, start) and not leq(x, avoid) and primary(D, x)]
    if not cands:
        kind = "ideal" if flip else "filter"
        raise TheoremViolation(
            f"no primary {kind} extends {L.names[start]} avoiding {L.names[avoid]}")
    minimal = [x for x in cands if not any(y != x and leq(y, x) for y in cands)]
    return min(minimal)


def extend_to_primary_filter(D: Dicomplementation, F0, I0) -> int:
    """Generator x with ↑x ⊇ ↑F0 primary and disjoint from ↓I0.

    Among the qualifying generators the ≤-minimal ones (largest filters) are
    kept and the first in element order is returned.
    """
    _require_wdl(D)
    L = D.lattice
    f, i = L.el(F0), L.el(I0)
    if L.leq(f, i):
        raise ValueError(f"↑{L.names[f]} meets ↓{L.names[i]}")
    return _extend(D, f, i, flip=False)


def extend_to_primary_ideal(D: Dicomplementation, I0, F0) -> int:
    """Generator y with ↓y ⊇ ↓I0 primary and disjoint from ↑F0."""
    _require_wdl(D)
    L = D.lattice
    i, f = L.el(I0), L.el(F0)
    if L.leq(f, i):
        raise ValueError(f"↑{L.names[f]} meets ↓{L.names[i]}")
    return _extend(D, i, f, flip=True)


def _context_from(P: PrimaryFilterSet) -> FormalContext:
    L = P.carrier.lattice
    rows = []
    for x in P.filters:
        rows.append(sum(1 << k for k, y in enumerate(P.ideals) if L.leq(x, y)))
    return FormalContext(
        ["F" + L.names[x] for x in P.filters],
        ["I" + L.names[y] for y in P.ideals],
        rows,
    )


def build_canonical_context(D: Dicomplementation, include_improper: bool = False) -> FormalContext:
    """(primary filters, primary ideals, ↑x ∩ ↓y ≠ ∅), i.e. incidence x ≤ y."""
    return _context_from(primary_filters(D, include_improper))


# -- the embedding i(x) = (F_x, I_x) -----------------------------------------

@dataclass
class EmbeddingReport:
    carrier: Dicomplementation
    context: FormalContext
    extents: tuple        # F_x per element, bitmask over objects
    intents: tuple        # I_x per element, bitmask over attributes
    checks: dict = field(default_factory=dict)  # name -> first failing witness or None
    strict: tuple = ()    # per element: strictness of the three chain links
    preserves_up: bool = False
    preserves_down: bool = False

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.checks.values())

    def to_lines(self) -> list[str]:
        L = self.carrier.lattice
        K = self.context
        lines = [f"canonical-context objects={len(K.objects)} attributes={len(K.attributes)}"]
        for x in range(len(L)):
            fx = ",".join(K.object_names(iter_bits(self.extents[x])))
            ix = ",".join(K.attribute_names(iter_bits(self.intents[x])))
            marks = " ".join("<" if s else "=" for s in self.strict[x])
            lines.append(f"i({L.names[x]}) = ({{{fx}}}, {{{ix}}}) chain {marks}")
        for name, witness in self.checks.items():
            lines.append(f"PASS {name}" if witness is None else f"FAIL {name} witness {witness}")
        lines.append(f"preserves up: {'yes' if self.preserves_up else 'no'}")
        lines.append(f"preserves down: {'yes' if self.preserves_down else 'no'}")
        return lines


def canonical_embedding(D: Dicomplementation, fatal: bool = True) -> EmbeddingReport:
    """Compute i and verify the embedding claims on this instance.

    Checks the derivation identities F_x' = I_x and I_x' = F_x, injectivity,
    preservation of ∧, ∨, 0, 1 and the chain
    i(x^▽) ≤ i(x)^▽ ≤ i(x)^△ ≤ i(x^△).  Operations on the concept side are
    evaluated through derivations, without enumerating all concepts.  With
    ``fatal`` a failed check raises TheoremViolation.
    """
    P = primary_filters(D)
    K = _context_from(P)
    L = D.lattice
    n = len(L)
    names = L.names
    F = tuple(sum(1 << k for k, g in enumerate(P.filters) if L.leq(g, x)) for x in range(n))
    I = tuple(sum(1 << k for k, h in enumerate(P.ideals) if L.leq(x, h)) for x in range(n))
    G_all, M_all = K.all_objects, K.all_attributes

    def first(pred, arity=1):
        if arity == 1:
            return next((names[x] for x in range(n) if not pred(x)), None)
        return next((f"{names[x]},{names[y]}" for x in range(n) for y in range(n)
                     if not pred(x, y)), None)

    def neg(ext):  # extent of (A, B)^△
        return K.object_closure(G_all & ~ext)

    def opp(itt):  # extent of (A, B)^▽
        return K.intent_prime(M_all & ~itt)

    def sub(a, b):
        return a & ~b == 0

    checks = {
        "derivation F_x'=I_x": first(lambda x: K.extent_prime(F[x]) == I[x]),
        "derivation I_x'=F_x": first(lambda x: K.intent_prime(I[x]) == F[x]),
        "injective": next((f"{names[x]},{names[y]}" for x in range(n) for y in range(x + 1, n)
                           if F[x] == F[y]), None),
        "preserves meet": first(lambda x, y: F[L.meet(x, y)] == F[x] & F[y], 2),
        "preserves join": first(lambda x, y: I[L.join(x, y)] == I[x] & I[y], 2),
        "preserves bottom": None if F[L.bottom] == K.object_closure(0) else names[L.bottom],
        "preserves top": None if F[L.top] == G_all else names[L.top],
    }
    strict = []
    chain_fail = None
    up_ok = down_ok = True
    for x in range(n):
        a = F[D.down[x]]
        b = opp(I[x])
        c = neg(F[x])
        d = F[D.up[x]]
        if not (sub(a, b) and sub(b, c) and sub(c, d)) and chain_fail is None:
            chain_fail = names[x]
        strict.append((a != b, b != c, c != d))
        up_ok &= c == d
        down_ok &= a == b
    checks["chain"] = chain_fail
    report = EmbeddingReport(D, K, F, I, checks, tuple(strict), up_ok, down_ok)
    if fatal and not report.ok:
        bad = next(k for k, w in checks.items() if w is not None)
        raise TheoremViolation(f"canonical embedding fails {bad} at {checks[bad]}")
    return report


# -- finite Stone representation ---------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldOfSets:
    """x ↦ F_x as subsets of the ultrafilter set, with the full field of extents."""

    carrier: Dicomplementation
    points: tuple          # ultrafilter names
    sets: tuple            # per element, frozenset of point names
    field_size: int        # number of concepts of the canonical context
    onto: bool

    def to_lines(self) -> list[str]:
        L = self.carrier.lattice
        lines = [f"points {' '.join(self.points)}",
                 f"field {self.field_size} sets, embedding {'onto' if self.onto else 'into'}"]
        for x in range(len(L)):
            lines.append(f"{L.names[x]} -> {{{','.join(p for p in self.points if p in self.sets[x])}}}")
        return lines


def stone_field_of_sets(D: Dicomplementation) -> FieldOfSets:
    """Represent a wdl with negation as a field of subsets of its ultrafilters."""
    if D.up != D.down:
        x = next(i for i in range(len(D)) if D.up[i] != D.down[i])
        raise NotWithNegation(f"up and down differ at {D.lattice.names[x]}")
    report = canonical_embedding(D)
    K = report.context
    k = len(K.objects)
    view = enumerate_concepts(K)
    if len(view) != 1 << k:
        raise TheoremViolation(f"canonical context has {len(view)} concepts, expected {1 << k}")
    if lattice_isomorphism(view.as_lattice, boolean_lattice(k)) is None:
        raise TheoremViolation("concept lattice is not a powerset")
    L = D.lattice
    full = K.all_objects
    for x in range(len(L)):
        if report.extents[D.up[x]] != full & ~report.extents[x]:
            raise TheoremViolation(f"complement not preserved at {L.names[x]}")
    if not (report.preserves_up and report.preserves_down):
        raise TheoremViolation("embedding does not preserve the unary operations")
    sets = tuple(frozenset(K.objects[g] for g in iter_bits(report.extents[x])) for x in range(len(L)))
    return FieldOfSets(D, tuple(K.objects), sets, len(view), len(set(sets)) == 1 << k)


def filter_oracle(D: Dicomplementation) -> list[int]:
    """Primary filters by brute force over all up-sets closed under ∧.

    Returns the generator (least element) of each, nonempty and proper or
    not, in element order.  Intended for cross-checking.
    """
    L = D.lattice
    n = len(L)
    out = []
    for S in range(1, 1 << n):
        members = list(iter_bits(S))
        if any(L.up_mask[x] & ~S for x in members):
            continue
        if any(not S >> L.meet(x, y) & 1 for x in members for y in members):
            continue
        if all(S >> w & 1 or S >> D.up[w] & 1 for w in range(n)):
            out.append(L.meet_all(members))
    return sorted(out)


def separation_witness(D: Dicomplementation, x, y) -> Optional[int]:
    """A primary filter generator containing x but not y, when x ≰ y."""
    L = D.lattice
    x, y = L.el(x), L.el(y)
    if L.leq(x, y):
        return None
    return extend_to_primary_filter(D, x, y)
