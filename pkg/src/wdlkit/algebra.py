"""Concept algebras: weak negation and weak opposition on formal concepts."""

from __future__ import annotations

from functools import cached_property

from .concepts import ConceptLatticeView, enumerate_concepts
from .context import FormalConcept, FormalContext
from .errors import TheoremViolation
from .lattice import iter_bits
from .wdl import AxiomReport, Dicomplementation, full_report


def _negation_index(view: ConceptLatticeView, i: int) -> int:
    K = view.context
    rest = K.all_objects & ~view.extents[i]
    return view.by_intent[K.extent_prime(rest)]


def _opposition_index(view: ConceptLatticeView, i: int) -> int:
    K = view.context
    rest = K.all_attributes & ~view.intents[i]
    return view.by_extent[K.intent_prime(rest)]


def weak_negation(view: ConceptLatticeView, c: FormalConcept) -> FormalConcept:
    """(A, B) ↦ ((G∖A)'', (G∖A)')."""
    return view.concept(_negation_index(view, view.index_of(c)))


def weak_opposition(view: ConceptLatticeView, c: FormalConcept) -> FormalConcept:
    """(A, B) ↦ ((M∖B)', (M∖B)'')."""
    return view.concept(_opposition_index(view, view.index_of(c)))


class ConceptAlgebraView:
    """A concept lattice with both unary tables, verified on construction.

    ``report`` holds the full axiom and derived-property report.
    """

    def __init__(self, base: ConceptLatticeView):
        self.base = base
        n = len(base)
        self.up_table = tuple(_negation_index(base, i) for i in range(n))
        self.down_table = tuple(_opposition_index(base, i) for i in range(n))
        self.report: AxiomReport = full_report(self.dicomplementation)
        if not self.report.ok:
            raise TheoremViolation(
                "concept algebra fails: " + self.report.failures()[0].to_line())

    def __len__(self) -> int:
        return len(self.base)

    @property
    def context(self) -> FormalContext:
        return self.base.context

    @cached_property
    def dicomplementation(self) -> Dicomplementation:
        return Dicomplementation(self.base.as_lattice, self.up_table, self.down_table)

    def dump(self) -> str:
        """One line per concept: ``i: up=j down=k extent={...} intent={...}``."""
        K = self.context
        lines = []
        for i in range(len(self)):
            ext = ",".join(K.object_names(iter_bits(self.base.extents[i])))
            itt = ",".join(K.attribute_names(iter_bits(self.base.intents[i])))
            lines.append(f"{i}: up={self.up_table[i]} down={self.down_table[i]} "
                         f"extent={{{ext}}} intent={{{itt}}}")
        return "\n".join(lines) + "\n"


def build_concept_algebra(K: FormalContext) -> ConceptAlgebraView:
    return ConceptAlgebraView(enumerate_concepts(K))

