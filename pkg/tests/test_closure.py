from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from wdlkit.closure import (
    ClosureSystem,
    KernelSystem,
    closure_of,
    combine,
    dwcl_from_kernel,
    extend_via_isomorphism,
    format_system,
    kernel_of,
    parse_system,
    powerset_system,
    wcl_from_closure,
)
from wdlkit.errors import FormatError, NotAnIsomorphism
from wdlkit.lab import enumerate_lattices
from wdlkit.lattice import iter_bits, join_irreducibles, lattice_isomorphism, meet_irreducibles
from wdlkit.wdl import dicomplementation_isomorphism, from_generators, full_report, trivial_dicomplementation

FOUR = [["1", "2", "3"], ["1"], ["1", "2"], ["1", "3"]]


@pytest.fixture
def four():
    return ClosureSystem(["1", "2", "3"], FOUR)


def systems_from_lattice(L):
    """Closure system of down-sets of J(L) and kernel system of non-up-sets of M(L)."""
    J = sorted(join_irreducibles(L))
    M = sorted(meet_irreducibles(L))
    closed = [[L.names[j] for j in J if L.leq(j, x)] for x in range(len(L))]
    opened = [[L.names[m] for m in M if not L.leq(x, m)] for x in range(len(L))]
    Sh = ClosureSystem([L.names[j] for j in J], closed)
    Sk = KernelSystem([L.names[m] for m in M], opened)
    return Sh, Sk, list(zip(closed, opened))


SMALL = [L for n in range(1, 7) for L in enumerate_lattices(n)]


class TestOperators:
    def test_powerset_closure_is_identity(self):
        S = powerset_system(ClosureSystem, "abc")
        for r in range(4):
            for A in combinations("abc", r):
                assert closure_of(S, A) == set(A)

    def test_four_system(self, four):
        assert closure_of(four, ["2"]) == {"1", "2"}
        assert closure_of(four, []) == {"1"}
        assert closure_of(four, ["2", "3"]) == {"1", "2", "3"}

    def test_powerset_kernel_is_identity(self):
        S = powerset_system(KernelSystem, "xy")
        assert kernel_of(S, ["x"]) == {"x"}

    def test_validation(self):
        with pytest.raises(ValueError):
            ClosureSystem(["1", "2"], [["1"], ["2"], ["1", "2"]])
        with pytest.raises(ValueError):
            ClosureSystem(["1", "2"], [["1"]])
        with pytest.raises(ValueError):
            KernelSystem(["1", "2"], [["1"], ["2"]])


@st.composite
def closure_systems(draw):
    n = draw(st.integers(0, 5))
    ground = [f"x{i}" for i in range(n)]
    masks = set(draw(st.lists(st.integers(0, (1 << n) - 1), max_size=8)))
    masks.add((1 << n) - 1)
    changed = True
    while changed:
        changed = False
        for a in list(masks):
            for b in list(masks):
                if a & b not in masks:
                    masks.add(a & b)
                    changed = True
    return ClosureSystem(ground, [[ground[i] for i in iter_bits(m)] for m in masks])


class TestClosureLaws:
    @settings(max_examples=80, deadline=None)
    @given(closure_systems())
    def test_closure_laws_exhaustive(self, S):
        n = len(S.ground)
        h = S.closure_mask
        for A in range(1 << n):
            assert A & ~h(A) == 0
            assert h(h(A)) == h(A)
            for B in range(1 << n):
                if A & ~B == 0:
                    assert h(A) & ~h(B) == 0
                assert h(h(A) | h(B)) == h(A | B)

    @settings(max_examples=80, deadline=None)
    @given(closure_systems())
    def test_kernel_laws_by_complement(self, S):
        # complements of a closure system form a kernel system
        n = len(S.ground)
        full = (1 << n) - 1
        K = KernelSystem(S.ground, [[S.ground[i] for i in iter_bits(full & ~m)] for m in S.masks])
        k = K.kernel_mask
        for A in range(1 << n):
            assert k(A) & ~A == 0
            assert k(k(A)) == k(A)
            assert k(A) == full & ~S.closure_mask(full & ~A)
            for B in range(1 << n):
                assert k(k(A) & k(B)) == k(A & B)

    @settings(max_examples=60, deadline=None)
    @given(closure_systems())
    def test_wcl_axioms(self, S):
        W = wcl_from_closure(S)
        assert W.report.ok
        for i, A in enumerate(S.masks):
            assert S.masks[W.up[i]] == S.closure_mask(S.full & ~A)


class TestHalfStructures:
    def test_powerset_up_is_complement(self):
        S = powerset_system(ClosureSystem, "ab")
        W = wcl_from_closure(S)
        assert [S.masks[W.up[i]] for i in range(4)] == [3 ^ m for m in S.masks]

    def test_four_system_table(self, four):
        W = wcl_from_closure(four)
        got = {W.lattice.names[i]: W.lattice.names[W.up[i]] for i in range(4)}
        # h(X \ A): X -> {1}, {1} -> X, {1,2} -> {1,3}, {1,3} -> {1,2}
        assert got == {"{1,2,3}": "{1}", "{1}": "{1,2,3}", "{1,2}": "{1,3}", "{1,3}": "{1,2}"}

    def test_single_closed_set(self):
        W = wcl_from_closure(ClosureSystem(["1"], [["1"]]))
        assert len(W.lattice) == 1 and W.up == (0,)

    def test_kernel_powerset(self):
        S = powerset_system(KernelSystem, "ab")
        W = dwcl_from_kernel(S)
        assert [S.masks[W.down[i]] for i in range(4)] == [3 ^ m for m in S.masks]

    def test_kernel_four(self):
        S = KernelSystem(["1", "2", "3"], [[], ["2", "3"], ["3"], ["2"]])
        W = dwcl_from_kernel(S)
        got = {W.lattice.names[i]: W.lattice.names[W.down[i]] for i in range(4)}
        # k(Y \ B) where Y = {1,2,3}
        assert got == {"{}": "{2,3}", "{2}": "{3}", "{3}": "{2}", "{2,3}": "{}"}

    def test_kernel_single(self):
        W = dwcl_from_kernel(KernelSystem(["1"], [[]]))
        assert len(W.lattice) == 1 and W.down == (0,)


class TestCombine:
    def test_powerset(self):
        Sh = powerset_system(ClosureSystem, "ab")
        Sk = powerset_system(KernelSystem, "ab")
        D = combine(Sh, Sk, [(s, s) for s in Sh.sets()])
        assert D.up == D.down
        assert full_report(D).ok

    def test_shapes_differ(self, four):
        chain = KernelSystem(["a", "b", "c"], [[], ["a"], ["a", "b"], ["a", "b", "c"]])
        with pytest.raises(NotAnIsomorphism):
            combine(four, chain, list(zip(four.sets(), chain.sets())))

    def test_bad_pairings(self, four):
        Sk = KernelSystem(["p", "q"], [[], ["p"], ["q"], ["p", "q"]])
        with pytest.raises(NotAnIsomorphism):
            combine(four, Sk, [(["2"], ["p"])])
        with pytest.raises(NotAnIsomorphism):
            combine(four, Sk, [(["1"], [])])

    def test_chains(self):
        Sh = ClosureSystem(["1", "2", "3"], [[], ["1"], ["1", "2"], ["1", "2", "3"]])
        Sk = KernelSystem(["a", "b", "c"], [[], ["a"], ["a", "b"], ["a", "b", "c"]])
        phi = list(zip(Sh.sets(), Sk.sets()))
        D = combine(Sh, Sk, phi)
        T = trivial_dicomplementation(D.lattice)
        assert (D.up, D.down) == (T.up, T.down)
        assert D.up == wcl_from_closure(Sh).up
        assert D.down == dwcl_from_kernel(Sk).down
        closed, opened = extend_via_isomorphism(Sh, Sk, phi)
        assert (closed.up, closed.down) == (D.up, D.down)
        assert (opened.up, opened.down) == (D.up, D.down)

    @pytest.mark.parametrize("i", range(len(SMALL)))
    def test_lattice_representations(self, i):
        L = SMALL[i]
        Sh, Sk, phi = systems_from_lattice(L)
        D = combine(Sh, Sk, phi)
        assert full_report(D).ok
        # projections are isomorphisms onto both families
        assert lattice_isomorphism(D.lattice, Sh.lattice()) is not None
        assert lattice_isomorphism(D.lattice, Sk.lattice()) is not None
        # tables restrict to the half structures
        assert D.up == wcl_from_closure(Sh).up
        kd = dwcl_from_kernel(Sk).down
        f = [Sk.masks.index(Sk.mask(b)) for a, b in sorted(phi, key=lambda p: Sh.masks.index(Sh.mask(p[0])))]
        assert [f[D.down[x]] for x in range(len(f))] == [kd[f[x]] for x in range(len(f))]
        # the pair built from J(L) and M(L) is the one generated by them
        assert dicomplementation_isomorphism(D, from_generators(L)) is not None
        closed, opened = extend_via_isomorphism(Sh, Sk, phi)
        assert (closed.up, closed.down) == (D.up, D.down)
        assert [opened.up[f[x]] for x in range(len(f))] == [f[D.up[x]] for x in range(len(f))]
        assert list(opened.down) == list(kd)


class TestFileFormat:
    def test_round_trip(self, four):
        assert parse_system(format_system(four)).masks == four.masks
        K = KernelSystem(["a", "b"], [[], ["a"], ["a", "b"]])
        assert parse_system(format_system(K)).masks == K.masks

    @pytest.mark.parametrize("text", [
        "closed a\n",
        "ground a\nclosed b\n",
        "ground a b\nclosed a\nopen a\n",
        "ground a b\nclosed a\n",
        "ground a b\nsets a\n",
        "ground a\n",
    ])
    def test_errors(self, text):
        with pytest.raises(FormatError):
            parse_system(text)
