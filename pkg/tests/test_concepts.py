import re

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_cxt
from oracles import naive_concepts
from test_context import contexts
from wdlkit.concepts import (
    concept_join,
    concept_meet,
    density_check,
    enumerate_concepts,
    next_closure_extents,
    standard_context,
    to_dot,
)
from wdlkit.context import FormalContext
from wdlkit.lab import enumerate_lattices
from wdlkit.lattice import boolean_lattice, chain, diamond, lattice_isomorphism, pentagon


def incidence(K):
    return {(g, m) for g in range(len(K.objects)) for m in range(len(K.attributes)) if K.incident(g, m)}


class TestEnumeration:
    def test_small_example(self):
        K = FormalContext.from_pairs(["g1", "g2"], ["m1", "m2"], [("g1", "m1"), ("g2", "m1"), ("g2", "m2")])
        view = enumerate_concepts(K)
        assert {(c.extent, c.intent) for c in view.concepts} == {
            (frozenset({0, 1}), frozenset({0})),
            (frozenset({1}), frozenset({0, 1})),
        }

    def test_inequality_context_is_boolean(self):
        K = FormalContext.from_relation("ab", "ab", lambda g, m: g != m)
        assert len(enumerate_concepts(K)) == 4
        K3 = load_cxt("neq3.cxt")
        view = enumerate_concepts(K3)
        assert lattice_isomorphism(view.as_lattice, boolean_lattice(3)) is not None

    def test_empty_context(self):
        K = FormalContext([], [], [])
        view = enumerate_concepts(K)
        assert len(view) == 1

    @settings(max_examples=150, deadline=None)
    @given(contexts())
    def test_matches_naive_oracle(self, K):
        view = enumerate_concepts(K)
        expected = naive_concepts(K.objects, K.attributes, incidence(K))
        assert {(c.extent, c.intent) for c in view.concepts} == expected
        assert len(view) == len(expected)

    @settings(max_examples=100, deadline=None)
    @given(contexts())
    def test_lectic_order(self, K):
        n = len(K.objects)
        extents = list(next_closure_extents(K))

        def key(mask):
            # lectic order: the smallest differing object decides
            return [mask >> i & 1 for i in range(n)]
        assert extents == sorted(extents, key=key)


class TestMeetJoin:
    def test_empty_sets(self):
        view = enumerate_concepts(load_cxt("living.cxt"))
        top = view.concept(view.top)
        bottom = view.concept(view.bottom)
        assert concept_meet(view, []) == top
        assert concept_join(view, []) == bottom

    @settings(max_examples=100, deadline=None)
    @given(contexts(5, 5), st.data())
    def test_agrees_with_lattice_tables(self, K, data):
        view = enumerate_concepts(K)
        L = view.as_lattice
        i = data.draw(st.integers(0, len(view) - 1))
        j = data.draw(st.integers(0, len(view) - 1))
        assert concept_meet(view, [i, j]) == view.concept(L.meet(i, j))
        assert concept_join(view, [i, j]) == view.concept(L.join(i, j))


class TestStandardContext:
    @pytest.mark.parametrize("L", [chain(3), pentagon(), boolean_lattice(3), diamond()],
                             ids=["chain3", "pentagon", "b3", "diamond"])
    def test_round_trip(self, L):
        view = enumerate_concepts(standard_context(L))
        assert lattice_isomorphism(view.as_lattice, L) is not None

    def test_pentagon_shape(self):
        K = standard_context(pentagon())
        assert K.objects == ("a", "b", "c") and K.attributes == ("a", "b", "c")

    def test_density(self):
        for n in range(1, 7):
            for L in enumerate_lattices(n):
                K = standard_context(L)
                view = enumerate_concepts(K)
                gam = [view.object_concept_index(g) for g in range(len(K.objects))]
                mu = [view.attribute_concept_index(m) for m in range(len(K.attributes))]
                assert density_check(view, gam, mu)

    def test_density_fails_without_generators(self):
        view = enumerate_concepts(standard_context(boolean_lattice(2)))
        assert not density_check(view, [], [])


class TestDot:
    @pytest.mark.parametrize("name", ["living.cxt", "neq3.cxt", "l1_generators.cxt"])
    def test_counts(self, name):
        view = enumerate_concepts(load_cxt(name))
        dot = to_dot(view)
        nodes = re.findall(r"^  c\d+ \[label=", dot, re.M)
        edges = re.findall(r"^  c(\d+) -> c(\d+);", dot, re.M)
        assert len(nodes) == len(view)
        assert len(edges) == len(view.as_lattice.cover_pairs())
        for lo, hi in edges:
            assert view.leq(int(lo), int(hi)) and lo != hi
        assert dot == to_dot(view)

    def test_reduced_labels(self):
        view = enumerate_concepts(load_cxt("neq2.cxt"))
        dot = to_dot(view, reduced=True)
        assert dot.count('"a|') + dot.count(',a|') == 1
