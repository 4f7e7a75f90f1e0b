"""Weakly dicomplemented lattices: axiom checks, constructions, Boolean parts, skeletons."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    AxiomViolation,
    GeneratorSetTooSmall,
    InternalContradiction,
    NotBoolean,
    TheoremViolation,
)
from .lattice import (
    ElementSet,
    FiniteLattice,
    complemented_elements,
    complements,
    dual_pseudocomplement,
    is_distributive,
    join_irreducibles,
    lattice_isomorphism,
    meet_irreducibles,
    pseudocomplement,
)


@dataclass(frozen=True, eq=False)
class Dicomplementation:
    """A lattice with a weak complementation ``up`` (△) and dual ``down`` (▽).

    Tables are tuples indexed by element.  Construction does not check the
    axioms; use :func:`check_axioms` or one of the checked constructors.
    """

    lattice: FiniteLattice
    up: tuple
    down: tuple

    def __post_init__(self):
        n = len(self.lattice)
        for name, table in (("up", self.up), ("down", self.down)):
            if len(table) != n or any(not 0 <= v < n for v in table):
                raise ValueError(f"{name} table is not total on the carrier")
        object.__setattr__(self, "up", tuple(self.up))
        object.__setattr__(self, "down", tuple(self.down))

    def __len__(self) -> int:
        return len(self.lattice)

    def to_lat(self) -> str:
        return self.lattice.to_lat(self.up, self.down)

    @property
    def with_negation(self) -> bool:
        return self.up == self.down


# -- reports ---------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """Verdict for one axiom or property; failures carry a concrete witness."""

    name: str
    passed: bool
    witness: tuple = ()  # ((variable, element name), ...)
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    relation: str = "="
    violations: int = 0
    part: str = ""

    def to_line(self) -> str:
        if self.passed:
            return f"PASS {self.name}"
        parts = [f"FAIL {self.name}"]
        if self.witness:
            parts.append("witness " + " ".join(f"{v}={e}" for v, e in self.witness))
        if self.part:
            parts.append(f"part={self.part}")
        parts.append(f"lhs={self.lhs} rhs={self.rhs}")
        if self.relation != "=":
            parts.append(f"expected={self.relation}")
        return " ".join(parts)


@dataclass
class AxiomReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def merged(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport(self.results + other.results)

    def to_text(self) -> str:
        return "\n".join(r.to_line() for r in self.results) + "\n"


# Each check: (name, variables, [(part, lhs, relation, rhs), ...]) where the
# callables take (L, up, down, *args) and return element indices.
Term = Callable[..., int]

UP_AXIOMS = [
    ("axiom-1", "x", [("", lambda L, u, d, x: L.join(u[u[x]], x), "=", lambda L, u, d, x: x)]),
    ("axiom-2", "xy", [("", lambda L, u, d, x, y: L.meet(u[L.meet(x, y)], u[y]), "=",
                        lambda L, u, d, x, y: u[y])]),
    ("axiom-3", "xy", [("", lambda L, u, d, x, y: L.join(L.meet(x, y), L.meet(x, u[y])), "=",
                        lambda L, u, d, x, y: x)]),
]

DOWN_AXIOMS = [
    ("axiom-1'", "x", [("", lambda L, u, d, x: L.meet(d[d[x]], x), "=", lambda L, u, d, x: x)]),
    ("axiom-2'", "xy", [("", lambda L, u, d, x, y: L.meet(d[L.meet(x, y)], d[y]), "=",
                         lambda L, u, d, x, y: d[y])]),
    ("axiom-3'", "xy", [("", lambda L, u, d, x, y: L.meet(L.join(x, y), L.join(x, d[y])), "=",
                         lambda L, u, d, x, y: x)]),
]

DERIVED = [
    ("property-i", "x", [("", lambda L, u, d, x: L.join(x, u[x]), "=", lambda L, u, d, x: L.top)]),
    ("property-ii", "x", [("", lambda L, u, d, x: L.meet(x, d[x]), "=", lambda L, u, d, x: L.bottom)]),
    ("property-iii", "", [
        ("up", lambda L, u, d: u[L.bottom], "=", lambda L, u, d: L.top),
        ("down", lambda L, u, d: d[L.bottom], "=", lambda L, u, d: L.top),
    ]),
    ("property-iv", "", [
        ("up", lambda L, u, d: u[L.top], "=", lambda L, u, d: L.bottom),
        ("down", lambda L, u, d: d[L.top], "=", lambda L, u, d: L.bottom),
    ]),
    ("property-v", "x", [("", lambda L, u, d, x: d[x], "<=", lambda L, u, d, x: u[x])]),
    ("property-vi", "xy", [("", lambda L, u, d, x, y: u[L.meet(x, y)], "=",
                            lambda L, u, d, x, y: L.join(u[x], u[y]))]),
    ("property-vii", "xy", [("", lambda L, u, d, x, y: d[L.join(x, y)], "=",
                             lambda L, u, d, x, y: L.meet(d[x], d[y]))]),
    ("property-viii", "x", [("", lambda L, u, d, x: u[u[u[x]]], "=", lambda L, u, d, x: u[x])]),
    ("property-ix", "x", [("", lambda L, u, d, x: d[d[d[x]]], "=", lambda L, u, d, x: d[x])]),
    ("property-x", "x", [
        ("1", lambda L, u, d, x: d[u[x]], "<=", lambda L, u, d, x: u[u[x]]),
        ("2", lambda L, u, d, x: u[u[x]], "<=", lambda L, u, d, x: x),
        ("3", lambda L, u, d, x: x, "<=", lambda L, u, d, x: d[d[x]]),
        ("4", lambda L, u, d, x: d[d[x]], "<=", lambda L, u, d, x: u[d[x]]),
    ]),
]


def _evaluate(L: FiniteLattice, up, down, checks) -> AxiomReport:
    n = len(L)
    names = L.names
    report = AxiomReport()
    for name, variables, parts in checks:
        first = None
        count = 0
        for args in product(range(n), repeat=len(variables)):
            for part, lhs, rel, rhs in parts:
                a = lhs(L, up, down, *args)
                b = rhs(L, up, down, *args)
                if a == b if rel == "=" else L.leq(a, b):
                    continue
                count += 1
                if first is None:
                    first = (args, part, a, b, rel)
        if first is None:
            report.results.append(CheckResult(name, True))
        else:
            args, part, a, b, rel = first
            report.results.append(CheckResult(
                name, False,
                witness=tuple((v, names[e]) for v, e in zip(variables, args)),
                lhs=names[a], rhs=names[b], relation=rel, violations=count, part=part,
            ))
    return report


def check_axioms(L: FiniteLattice, up: Optional[Sequence[int]] = None,
                 down: Optional[Sequence[int]] = None) -> AxiomReport:
    """Evaluate (1)-(3) for ``up`` and (1')-(3') for ``down`` over all elements.

    Antitonicity is checked in its equational form (x∧y)^△ ∧ y^△ = y^△.
    Either table may be omitted to check a (dual) weakly complemented lattice.
    """
    checks = []
    if up is not None:
        checks += UP_AXIOMS
    if down is not None:
        checks += DOWN_AXIOMS
    return _evaluate(L, up, down, checks)


def check_derived_properties(D: Dicomplementation) -> AxiomReport:
    return _evaluate(D.lattice, D.up, D.down, DERIVED)


def full_report(D: Dicomplementation) -> AxiomReport:
    return check_axioms(D.lattice, D.up, D.down).merged(check_derived_properties(D))


def up_axioms_hold(L: FiniteLattice, up: Sequence[int]) -> bool:
    """Short-circuit boolean form of axioms (1)-(3)."""
    m, j = L.meet_table, L.join_table
    n = len(L)
    for x in range(n):
        if j[up[up[x]]][x] != x:
            return False
    for x in range(n):
        mx = m[x]
        for y in range(n):
            uy = up[y]
            if m[up[mx[y]]][uy] != uy or j[mx[y]][mx[uy]] != x:
                return False
    return True


def down_axioms_hold(L: FiniteLattice, down: Sequence[int]) -> bool:
    m, j = L.meet_table, L.join_table
    n = len(L)
    for x in range(n):
        if m[down[down[x]]][x] != x:
            return False
    for x in range(n):
        jx = j[x]
        for y in range(n):
            dy = down[y]
            if m[down[m[x][y]]][dy] != dy or m[jx[y]][jx[dy]] != x:
                return False
    return True


def is_wdl(D: Dicomplementation) -> bool:
    return up_axioms_hold(D.lattice, D.up) and down_axioms_hold(D.lattice, D.down)


def _checked(D: Dicomplementation) -> Dicomplementation:
    report = check_axioms(D.lattice, D.up, D.down)
    if not report.ok:
        raise TheoremViolation("constructed tables fail the axioms: " + report.failures()[0].to_line())
    return D


# -- constructions ---------------------------------------------------------

def trivial_dicomplementation(L: FiniteLattice) -> Dicomplementation:
    """0 ↦ (1,1), 1 ↦ (0,0), every other x ↦ (1,0)."""
    up = []
    down = []
    for x in range(len(L)):
        if x == L.bottom:
            up.append(L.top)
            down.append(L.top)
        elif x == L.top:
            up.append(L.bottom)
            down.append(L.bottom)
        else:
            up.append(L.top)
            down.append(L.bottom)
    return Dicomplementation(L, up, down)


def from_generators(L: FiniteLattice, G: Optional[Iterable] = None,
                    H: Optional[Iterable] = None) -> Dicomplementation:
    """x^△ = ⋁{a ∈ G | a ≰ x} and x^▽ = ⋀{m ∈ H | m ≱ x}.

    ``G`` must contain J(L) and ``H`` must contain M(L); they default to
    exactly those sets.  The result is verified against the axioms.
    """
    J = join_irreducibles(L)
    M = meet_irreducibles(L)
    G = J if G is None else frozenset(L.el(x) for x in G)
    H = M if H is None else frozenset(L.el(x) for x in H)
    for a in sorted(J - G):
        raise GeneratorSetTooSmall("join", L.names[a])
    for m in sorted(M - H):
        raise GeneratorSetTooSmall("meet", L.names[m])
    Gs, Hs = sorted(G), sorted(H)
    up = [L.join_all(a for a in Gs if not L.leq(a, x)) for x in range(len(L))]
    down = [L.meet_all(m for m in Hs if not L.leq(x, m)) for x in range(len(L))]
    return _checked(Dicomplementation(L, up, down))


def boolean_duplication(L: FiniteLattice) -> Dicomplementation:
    """Complementation used for both operations; L must be Boolean."""
    ok, witness = is_distributive(L)
    if not ok:
        raise NotBoolean("not distributive: " + ", ".join(L.names[w] for w in witness))
    comp = []
    for x in range(len(L)):
        cs = complements(L, x)
        if not cs:
            raise NotBoolean(f"{L.names[x]} has no complement")
        comp.append(cs[0])
    return _checked(Dicomplementation(L, comp, comp))


def double_p_pair(L: FiniteLattice) -> Optional[Dicomplementation]:
    """Tables (⁺, *) as (△, ▽) when L is a double p-algebra, else None. Unchecked."""
    up, down = [], []
    for x in range(len(L)):
        plus = dual_pseudocomplement(L, x)
        star = pseudocomplement(L, x)
        if plus is None or star is None:
            return None
        up.append(plus)
        down.append(star)
    return Dicomplementation(L, up, down)


def dicomplementation_isomorphism(A: Dicomplementation, B: Dicomplementation) -> Optional[tuple]:
    return lattice_isomorphism(A.lattice, B.lattice, unary=[(A.up, B.up), (A.down, B.down)])


# -- bounds from the weak complementation alone ----------------------------

def derive_bounds(meet_table: Sequence[Sequence[int]], join_table: Sequence[Sequence[int]],
                  up: Sequence[int], names: Optional[Sequence[str]] = None) -> tuple[int, int]:
    """Recover (bottom, top) of a nonempty lattice from a table satisfying (1)-(3).

    Top is x ∨ x^△ for any x and bottom is top^△.  Nothing about bounds is
    assumed; the axioms are checked first and the result is verified.
    """
    m, j = meet_table, join_table
    n = len(up)
    if n == 0:
        raise ValueError("empty structure")
    nm = list(names) if names is not None else [str(i) for i in range(n)]

    def _single_failure(name, witness, lhs, rhs) -> AxiomReport:
        return AxiomReport([CheckResult(
            name, False, witness=tuple((v, nm[e]) for v, e in witness),
            lhs=nm[lhs], rhs=nm[rhs], violations=1)])

    for x in range(n):
        if j[up[up[x]]][x] != x:
            raise AxiomViolation(_single_failure("axiom-1", (("x", x),), j[up[up[x]]][x], x))
    for x in range(n):
        for y in range(n):
            if m[up[m[x][y]]][up[y]] != up[y]:
                raise AxiomViolation(_single_failure(
                    "axiom-2", (("x", x), ("y", y)), m[up[m[x][y]]][up[y]], up[y]))
            lhs = j[m[x][y]][m[x][up[y]]]
            if lhs != x:
                raise AxiomViolation(_single_failure("axiom-3", (("x", x), ("y", y)), lhs, x))
    top = j[0][up[0]]
    bottom = up[top]
    for x in range(n):
        if j[x][up[x]] != top:
            raise TheoremViolation(f"x v x^up differs between {nm[0]} and {nm[x]}")
        if j[top][x] != top:
            raise TheoremViolation(f"derived top is not above {nm[x]}")
        if m[bottom][x] != bottom:
            raise TheoremViolation(f"derived bottom is not below {nm[x]}")
    return bottom, top


# -- negation, Boolean part, skeletons -------------------------------------

def is_with_negation(D: Dicomplementation) -> bool:
    return D.up == D.down


@dataclass(frozen=True, eq=False)
class BooleanAlgebraView:
    lattice: FiniteLattice
    complement: tuple
    atoms: frozenset


def boolean_collapse(D: Dicomplementation) -> Optional[BooleanAlgebraView]:
    """Boolean algebra (L, ∧, ∨, △, 0, 1) when △ = ▽, else None.

    Verifies unique complementation, both de Morgan laws and distributivity
    (through the complement of x∧(y∨z) complementing (x∧y)∨(x∧z)).
    """
    if not is_with_negation(D):
        return None
    L, c = D.lattice, D.up
    n = len(L)
    for x in range(n):
        cs = complements(L, x)
        if cs != [c[x]]:
            raise InternalContradiction(f"{L.names[x]}: complements {L.names_of(cs)} vs table {L.names[c[x]]}")
    m, j = L.meet_table, L.join_table
    for x in range(n):
        for y in range(n):
            if c[m[x][y]] != j[c[x]][c[y]] or c[j[x][y]] != m[c[x]][c[y]]:
                raise InternalContradiction(f"de Morgan fails at {L.names[x]}, {L.names[y]}")
    for x, y, z in product(range(n), repeat=3):
        lhs = m[x][j[y][z]]
        rhs = j[m[x][y]][m[x][z]]
        k = c[lhs]
        if m[k][rhs] != L.bottom or j[k][rhs] != L.top:
            raise InternalContradiction(
                f"complement of x∧(y∨z) does not complement (x∧y)∨(x∧z) at "
                f"{L.names[x]}, {L.names[y]}, {L.names[z]}")
        if lhs != rhs:
            raise InternalContradiction(f"distributivity fails at {L.names[x]}, {L.names[y]}, {L.names[z]}")
    atoms = frozenset(x for x in range(n) if L.lower_covers[x] == (L.bottom,))
    return BooleanAlgebraView(L, tuple(c), atoms)


def subalgebra_witness(D: Dicomplementation, S: ElementSet) -> Optional[str]:
    """None when S contains 0, 1 and is closed under ∧, ∨, △, ▽; else a reason."""
    L = D.lattice
    nm = L.names
    if L.bottom not in S or L.top not in S:
        return "missing bound"
    for x in sorted(S):
        if D.up[x] not in S:
            return f"{nm[x]}^up={nm[D.up[x]]} outside"
        if D.down[x] not in S:
            return f"{nm[x]}^down={nm[D.down[x]]} outside"
        for y in sorted(S):
            if L.meet(x, y) not in S:
                return f"{nm[x]}∧{nm[y]}={nm[L.meet(x, y)]} outside"
            if L.join(x, y) not in S:
                return f"{nm[x]}∨{nm[y]}={nm[L.join(x, y)]} outside"
    return None


def restrict(D: Dicomplementation, S: ElementSet) -> Dicomplementation:
    """The subalgebra on S as a Dicomplementation of its own."""
    L = D.lattice
    sub = L.sublattice(S)
    pos = {old: i for i, old in enumerate(sorted(S))}
    return Dicomplementation(sub, [pos[D.up[x]] for x in sorted(S)], [pos[D.down[x]] for x in sorted(S)])


def boolean_part(D: Dicomplementation) -> ElementSet:
    """B(L) = {x | x^△ = x^▽}; re-verifies that it is a Boolean subalgebra."""
    B = frozenset(x for x in range(len(D)) if D.up[x] == D.down[x])
    reason = subalgebra_witness(D, B)
    if reason is not None:
        raise TheoremViolation(f"Boolean part is not a subalgebra: {reason}")
    if not B <= skeleton(D) & dual_skeleton(D):
        raise TheoremViolation("Boolean part is not inside both skeletons")
    if boolean_collapse(restrict(D, B)) is None:  # pragma: no cover - up == down on B by definition
        raise TheoremViolation("Boolean part is not with negation")
    return B


def skeleton(D: Dicomplementation) -> ElementSet:
    """L^△, computed as the image of △ and as the fixed points of △△."""
    image = frozenset(D.up)
    fixed = frozenset(x for x in range(len(D)) if D.up[D.up[x]] == x)
    if image != fixed:
        raise TheoremViolation("image of up differs from fixed points of up-up")
    return image


def dual_skeleton(D: Dicomplementation) -> ElementSet:
    image = frozenset(D.down)
    fixed = frozenset(x for x in range(len(D)) if D.down[D.down[x]] == x)
    if image != fixed:
        raise TheoremViolation("image of down differs from fixed points of down-down")
    return image


def _complemented_within(L: FiniteLattice, S: ElementSet) -> bool:
    return all(
        any(L.meet(x, z) == L.bottom and L.join(x, z) == L.top for z in S) for x in S
    )


@dataclass
class Diagnostics:
    names: tuple
    boolean_part: ElementSet
    skeleton: ElementSet
    dual_skeleton: ElementSet
    skeleton_intersection: ElementSet
    complemented: ElementSet
    condition_holds: bool
    condition_witness: Optional[int]
    skeleton_subalgebra: Optional[str]
    dual_skeleton_subalgebra: Optional[str]
    skeleton_complemented: Optional[bool]
    dual_skeleton_complemented: Optional[bool]
    pp_pair: bool

    @property
    def boolean_part_strict(self) -> bool:
        return self.boolean_part < self.skeleton_intersection

    def _fmt(self, S) -> str:
        return "{" + ",".join(self.names[i] for i in sorted(S)) + "}"

    def to_lines(self) -> list[str]:
        def rel(a, b):
            if a == b:
                return "="
            if a < b:
                return "strict-subset"
            if a > b:
                return "strict-superset"
            return "incomparable"

        lines = [
            f"boolean-part {self._fmt(self.boolean_part)}",
            f"skeleton {self._fmt(self.skeleton)}",
            f"dual-skeleton {self._fmt(self.dual_skeleton)}",
            f"skeleton-intersection {self._fmt(self.skeleton_intersection)}",
            f"complemented {self._fmt(self.complemented)}",
            f"boolean-part vs skeleton-intersection: {rel(self.boolean_part, self.skeleton_intersection)}",
            f"boolean-part vs complemented: {rel(self.boolean_part, self.complemented)}",
            f"complemented vs skeleton-intersection: {rel(self.complemented, self.skeleton_intersection)}",
        ]
        if self.condition_holds:
            lines.append("condition upup=downdown=>updown=downup: holds")
        else:
            lines.append(f"condition upup=downdown=>updown=downup: fails at x={self.names[self.condition_witness]}")
        for label, sub, comp in (
            ("skeleton", self.skeleton_subalgebra, self.skeleton_complemented),
            ("dual-skeleton", self.dual_skeleton_subalgebra, self.dual_skeleton_complemented),
        ):
            if sub is None:
                lines.append(f"{label} subalgebra: yes, complemented: {'yes' if comp else 'no'}")
            else:
                lines.append(f"{label} subalgebra: no ({sub})")
        lines.append(f"distributive with (plus, star) tables: {'yes' if self.pp_pair else 'no'}")
        return lines


def boolean_part_diagnostics(D: Dicomplementation) -> Diagnostics:
    """Compare B(L), L^△ ∩ L^▽ and C(L), and check the related lemmas.

    Raises TheoremViolation if any of the following fails on the instance:
    B(L) = L^△ ∩ L^▽ exactly when x^△△ = x^▽▽ implies x^△▽ = x^▽△; a skeleton
    that is a subalgebra is complemented; and on a distributive lattice with
    △ = ⁺ and ▽ = *, B(L) = C(L).
    """
    L = D.lattice
    u, d = D.up, D.down
    B = boolean_part(D)
    S_up = skeleton(D)
    S_down = dual_skeleton(D)
    inter = S_up & S_down
    C = complemented_elements(L)
    witness = next(
        (x for x in range(len(L)) if u[u[x]] == d[d[x]] and u[d[x]] != d[u[x]]), None
    )
    holds = witness is None
    if holds != (B == inter):
        raise TheoremViolation("Boolean part / skeleton intersection lemma fails")
    sub_up = subalgebra_witness(D, S_up)
    sub_down = subalgebra_witness(D, S_down)
    comp_up = _complemented_within(L, S_up) if sub_up is None else None
    comp_down = _complemented_within(L, S_down) if sub_down is None else None
    if comp_up is False or comp_down is False:
        raise TheoremViolation("a skeleton subalgebra is not complemented")
    pp = double_p_pair(L)
    pp_pair = bool(is_distributive(L)[0] and pp is not None and pp.up == u and pp.down == d)
    if pp_pair and B != C:
        raise TheoremViolation("distributive (plus, star) lattice with B(L) != C(L)")
    return Diagnostics(
        L.names, B, S_up, S_down, inter, C, holds, witness,
        sub_up, sub_down, comp_up, comp_down, pp_pair,
    )
