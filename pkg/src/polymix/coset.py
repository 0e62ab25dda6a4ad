"""Coset enumeration over finite presentations.

The enumerator is HLT-style: each live coset is scanned against every
relator, with definitions filled in eagerly and coincidences merged by a
union-find pass. When the live-coset budget is hit it falls back to a
collapse-only lookahead sweep before giving up. Coset numbering is by
first definition, so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from polymix import _kernel
from polymix.errors import FaithfulnessFailure
from polymix.perms import GeneratedGroup, Permutation
from polymix.words import Presentation, Word

COSET_BUDGET_DEFAULT = 1_000_000


@dataclass(frozen=True)
class CosetTable:
    """A completed coset table: one permutation column per generator."""

    ncosets: int
    columns: tuple[tuple[int, ...], ...]

    def permutations(self) -> list[Permutation]:
        return [Permutation(col) for col in self.columns]


def enumerate_cosets(
    presentation: Presentation,
    subgroup_words: tuple[Word, ...] = (),
    budget: int = COSET_BUDGET_DEFAULT,
) -> CosetTable:
    """Enumerate cosets of the subgroup generated by `subgroup_words`.

    An empty subgroup gives the regular action (cosets = group elements).
    Raises BudgetExceeded when more than `budget` live cosets are needed.
    """
    ncosets, cols = _kernel.coset_enumerate(
        presentation.ngens,
        presentation.encoded_relators(),
        [w.encode() for w in subgroup_words],
        budget,
    )
    return CosetTable(ncosets, tuple(tuple(c) for c in cols))


def group_order(presentation: Presentation, budget: int = COSET_BUDGET_DEFAULT) -> int:
    return enumerate_cosets(presentation, (), budget).ncosets


def permutation_realization(
    presentation: Presentation, budget: int = COSET_BUDGET_DEFAULT
) -> GeneratedGroup:
    """A faithful permutation realization of the presented group.

    Prefers the action on the cosets of the subgroup generated by all but
    the first generator (for our presentations: the vertex action), which
    keeps degrees small. If that action's stabilizer-chain order differs
    from the presented group's order the realization falls back to the
    regular representation.
    """
    regular = enumerate_cosets(presentation, (), budget)
    if presentation.ngens >= 2:
        stabilizer_words = tuple(
            Word.generator(i) for i in range(1, presentation.ngens)
        )
        compact = enumerate_cosets(presentation, stabilizer_words, budget)
        group = GeneratedGroup(compact.permutations(), degree=compact.ncosets)
        if group.order == regular.ncosets:
            return group
        # unfaithful stabilizer action; fall through to the regular action
    group = GeneratedGroup(regular.permutations(), degree=regular.ncosets)
    if group.order != regular.ncosets:
        raise FaithfulnessFailure(
            f"regular action order {group.order} != coset count {regular.ncosets}"
        )
    return group
