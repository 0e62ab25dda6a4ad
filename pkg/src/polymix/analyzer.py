"""Structural analysis of mixes: types, face vectors, polytopality.

The polytopality decision runs a cascade of exact criteria, each of
which is only applied when its hypotheses are established:

1. Rank at most 3 is always polytopal (the mix of polyhedra is a
   polyhedron), as is any single seed.
2. If the facet mix or the vertex-figure mix is non-polytopal, the mix
   cannot be a polytope; this negative is only reported when the
   independent face-lattice oracle confirms it on the full flag graph,
   otherwise the result is undecided.
3. Grouping rules over bipartitions of the leaf set, valid only when
   both sides are themselves known polytopal: if the facet mixes of the
   two sides cover one another (either direction), or the vertex-figure
   mixes do, or the Schläfli types of the two sides are entrywise
   coprime, the mix is polytopal.
4. The medial-section criterion over bipartitions with both sides
   polytopal: when the facet and vertex-figure mixes are polytopal and
   the mixed medial sections form a direct product, the mix is
   polytopal; when additionally both the facet mixes and vertex-figure
   mixes of the two sides themselves form direct products, the direct
   product condition on medial sections is equivalent to polytopality,
   so its failure is a definitive negative.
5. The explicit intersection condition: with facet and vertex-figure
   mixes polytopal, the mix is polytopal exactly when the subgroup
   generated by all but the last generator meets the subgroup generated
   by all but the first in the subgroup generated by the shared middle
   generators.
6. Anything else is undecided (budget-limited), never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

from polymix.errors import BudgetExceeded, CapExceeded, NonIntegralFaceCount, TooLarge
from polymix.mixer import MixExpression, Workspace
from polymix.words import SchlafliSymbol, entrywise_lcm

__all__ = [
    "Analyzer",
    "StructureReport",
    "Verdict",
    "bipartitions",
    "co_face_leaves",
    "face_vector",
    "facet_leaves",
    "k_face_leaves",
    "medial_leaves",
    "polytopality",
    "report",
    "schlafli_of_mix",
    "vertex_figure_leaves",
]

Leaves = tuple[SchlafliSymbol, ...]


def _canon(leaves: Iterable[SchlafliSymbol]) -> Leaves:
    return tuple(sorted(set(leaves)))


def k_face_leaves(leaves: Iterable[SchlafliSymbol], k: int) -> Leaves:
    """Leaf types of the rank-``k`` face sections (needs ``k >= 2``)."""
    return _canon(SchlafliSymbol(leaf.entries[: k - 1]) for leaf in leaves)


def co_face_leaves(leaves: Iterable[SchlafliSymbol], k: int) -> Leaves:
    """Leaf types of the sections above a rank-``k`` face (rank n-1-k >= 2)."""
    return _canon(SchlafliSymbol(leaf.entries[k + 1 :]) for leaf in leaves)


def facet_leaves(leaves: Iterable[SchlafliSymbol]) -> Leaves:
    """Leaf types of the facet sections (rank n-1)."""
    return _canon(SchlafliSymbol(leaf.entries[:-1]) for leaf in leaves)


def vertex_figure_leaves(leaves: Iterable[SchlafliSymbol]) -> Leaves:
    """Leaf types of the vertex-figure sections (rank n-1)."""
    return _canon(SchlafliSymbol(leaf.entries[1:]) for leaf in leaves)


def medial_leaves(leaves: Iterable[SchlafliSymbol]) -> Leaves:
    """Leaf types of the medial sections (between a vertex and a facet)."""
    return _canon(SchlafliSymbol(leaf.entries[1:-1]) for leaf in leaves)


def bipartitions(items: Sequence) -> Iterator[tuple[tuple, tuple]]:
    """All unordered splits of ``items`` into two nonempty parts.

    The first item always lands in the first part, so each split is
    produced exactly once, in a deterministic order.
    """
    n = len(items)
    for mask in range(0, 1 << (n - 1)):
        side_a = [items[0]]
        side_b = []
        for i in range(1, n):
            if mask & (1 << (i - 1)):
                side_a.append(items[i])
            else:
                side_b.append(items[i])
        if side_b:
            yield tuple(side_a), tuple(side_b)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a polytopality decision.

    ``status`` is ``"Y"``, ``"N"``, or ``"?"``; ``method`` names the
    criterion that settled it (or the reason it stayed open).
    """

    status: str
    method: str
    detail: str = ""

    @property
    def decided(self) -> bool:
        return self.status in ("Y", "N")

    @property
    def polytopal(self) -> bool | None:
        if self.status == "Y":
            return True
        if self.status == "N":
            return False
        return None

    def __str__(self) -> str:
        text = {"Y": "polytopal", "N": "not polytopal", "?": "undecided"}[self.status]
        return f"{text} ({self.method})"


class Analyzer:
    """Polytopality and structure computations over a shared workspace."""

    def __init__(self, workspace: Workspace | None = None) -> None:
        self.workspace = workspace or Workspace()
        self._verdicts: dict[Leaves, Verdict] = {}

    # -- type ---------------------------------------------------------------

    def schlafli(self, expression: MixExpression) -> SchlafliSymbol:
        """Schläfli type of the mix, verified against measured generator orders.

        The type is the entrywise lcm of the leaf types; each entry is
        cross-checked against the actual order of the corresponding
        mixed generator, which is the lcm of its orders in the
        component realizations.
        """
        expected = expression.type_symbol()
        ws = self.workspace
        for i in range(expression.rank - 1):
            measured = 1
            for leaf in expression.leaves:
                gen = ws.rotation_group(leaf).generators[i]
                order = gen.order()
                measured = measured * order // gcd(measured, order)
            assert measured == expected.entries[i], (
                f"measured generator order {measured} disagrees with "
                f"type entry {expected.entries[i]} at position {i}"
            )
        return expected

    # -- face counts ----------------------------------------------------------

    def _section_flag_count(self, slices: list[tuple[int, ...]], rank: int) -> int:
        """Flags of a section of the given rank with the given leaf entries."""
        if rank <= 0:
            return 1
        if rank == 1:
            return 2
        leaves = _canon(SchlafliSymbol(s) for s in slices)
        return 2 * self.workspace.mix_order(leaves)

    def face_vector(self, expression: MixExpression) -> tuple[int, ...]:
        """Face counts by rank, from flag counts of sections.

        Every face of rank k carries the same number of flags below it
        and the same number above it (sections of one isomorphism type
        each), so the k-face count is the total flag count divided by
        the product of the two section flag counts.  Non-exact division
        would mean the engine produced an inconsistent flag graph and
        raises.
        """
        leaves = expression.canonical_leaves
        n = expression.rank
        total = 2 * self.workspace.mix_order(leaves)
        counts = []
        for k in range(n):
            below = self._section_flag_count(
                [leaf.entries[: k - 1] for leaf in leaves], k
            )
            above = self._section_flag_count(
                [leaf.entries[k + 1 :] for leaf in leaves], n - 1 - k
            )
            weight = below * above
            if total % weight:
                raise NonIntegralFaceCount(
                    f"rank-{k} faces of {expression}: {total} flags do not divide "
                    f"evenly into sections of weight {weight}"
                )
            counts.append(total // weight)
        return tuple(counts)

    # -- polytopality ---------------------------------------------------------

    def polytopality(self, subject: MixExpression | Iterable[SchlafliSymbol]) -> Verdict:
        """Decide whether the mix is a polytope (see module docstring)."""
        if isinstance(subject, MixExpression):
            leaves = subject.canonical_leaves
        else:
            leaves = _canon(subject)
        cached = self._verdicts.get(leaves)
        if cached is None:
            cached = self._decide(leaves)
            self._verdicts[leaves] = cached
        return cached

    def _decide(self, leaves: Leaves) -> Verdict:
        rank = leaves[0].rank
        if len(leaves) == 1:
            return Verdict("Y", "seed")
        if rank <= 3:
            return Verdict("Y", "polyhedron")

        ws = self.workspace
        facet_verdict = self.polytopality(facet_leaves(leaves))
        vf_verdict = self.polytopality(vertex_figure_leaves(leaves))

        if facet_verdict.status == "N" or vf_verdict.status == "N":
            return self._confirm_nonpolytopal_sections(leaves, facet_verdict, vf_verdict)

        sides_polytopal = {}

        def side_ok(side: Leaves) -> bool:
            key = _canon(side)
            known = sides_polytopal.get(key)
            if known is None:
                known = self.polytopality(key).status == "Y"
                sides_polytopal[key] = known
            return known

        def leafset_covers(a: Leaves, b: Leaves) -> bool:
            return ws.mix_order(a + b) == ws.mix_order(a)

        splits = list(bipartitions(leaves))

        # Grouping rules: valid only between two polytopal sides.
        for side_a, side_b in splits:
            if not (side_ok(side_a) and side_ok(side_b)):
                continue
            ka, kb = facet_leaves(side_a), facet_leaves(side_b)
            if leafset_covers(ka, kb) or leafset_covers(kb, ka):
                return Verdict(
                    "Y", "covering-facets", f"{_fmt(side_a)} | {_fmt(side_b)}"
                )
            la, lb = vertex_figure_leaves(side_a), vertex_figure_leaves(side_b)
            if leafset_covers(la, lb) or leafset_covers(lb, la):
                return Verdict(
                    "Y", "covering-vertex-figures", f"{_fmt(side_a)} | {_fmt(side_b)}"
                )
            type_a = reduce(entrywise_lcm, side_a).entries
            type_b = reduce(entrywise_lcm, side_b).entries
            if all(gcd(p, q) == 1 for p, q in zip(type_a, type_b)):
                return Verdict(
                    "Y", "coprime-types", f"{_fmt(side_a)} | {_fmt(side_b)}"
                )

        # Medial-section criterion, when facet and vertex-figure mixes
        # are polytopal.
        if facet_verdict.status == "Y" and vf_verdict.status == "Y":
            for side_a, side_b in splits:
                if not (side_ok(side_a) and side_ok(side_b)):
                    continue
                med_a, med_b = medial_leaves(side_a), medial_leaves(side_b)
                medial_product = ws.mix_order(med_a) * ws.mix_order(med_b)
                medial_is_product = (
                    ws.mix_order(med_a + med_b) == medial_product
                )
                if medial_is_product:
                    return Verdict(
                        "Y", "medial-sections", f"{_fmt(side_a)} | {_fmt(side_b)}"
                    )
                ka, kb = facet_leaves(side_a), facet_leaves(side_b)
                la, lb = vertex_figure_leaves(side_a), vertex_figure_leaves(side_b)
                facet_is_product = (
                    ws.mix_order(ka + kb) == ws.mix_order(ka) * ws.mix_order(kb)
                )
                vf_is_product = (
                    ws.mix_order(la + lb) == ws.mix_order(la) * ws.mix_order(lb)
                )
                if facet_is_product and vf_is_product:
                    return Verdict(
                        "N", "medial-sections", f"{_fmt(side_a)} | {_fmt(side_b)}"
                    )

            # Explicit intersection condition (definitive when it runs).
            return self._intersection_verdict(leaves)

        return Verdict("?", "sections-undecided")

    def _confirm_nonpolytopal_sections(
        self, leaves: Leaves, facet_verdict: Verdict, vf_verdict: Verdict
    ) -> Verdict:
        """A non-polytopal section forces a negative; confirm it independently."""
        which = "facet" if facet_verdict.status == "N" else "vertex-figure"
        ws = self.workspace
        if ws.flag_count(leaves) <= ws.budgets.max_flags:
            from polymix.oracle import check_polytope

            confirmed = check_polytope(MixExpression(leaves), workspace=ws)
            assert not confirmed.polytopal, (
                f"oracle found a polytope although its {which} mix is not one"
            )
            return Verdict("N", "oracle", f"{which} mix non-polytopal")
        return Verdict("?", "section-nonpolytopal-unconfirmed", which)

    def _intersection_verdict(self, leaves: Leaves) -> Verdict:
        ws = self.workspace
        mixed = ws.mixed_group(leaves)
        gens = mixed.generators
        facet_side = mixed.subgroup(gens[:-1])
        vertex_side = mixed.subgroup(gens[1:])
        middle = mixed.subgroup(gens[1:-1])
        try:
            meet = facet_side.intersection(vertex_side, cap=ws.budgets.elements)
        except (CapExceeded, BudgetExceeded) as exc:
            return Verdict("?", "intersection-budget", str(exc))
        assert meet.order % middle.order == 0 and meet.order >= middle.order, (
            "intersection lost the shared middle subgroup"
        )
        if meet.order == middle.order:
            return Verdict("Y", "intersection")
        return Verdict(
            "N",
            "intersection",
            f"meet order {meet.order} exceeds middle order {middle.order}",
        )


def _fmt(leaves: Iterable[SchlafliSymbol]) -> str:
    return "*".join(str(leaf) for leaf in leaves)


@dataclass(frozen=True)
class StructureReport:
    """Full structural description of one mix."""

    expression: str
    rank: int
    leaves: tuple[str, ...]
    schlafli: str
    rotation_order: int
    flag_count: int
    face_vector: tuple[int, ...]
    polytopal: str
    method: str
    detail: str


def report(expression: MixExpression, analyzer: Analyzer | None = None) -> StructureReport:
    """Compute the structure report for a mix expression."""
    an = analyzer or Analyzer()
    schlafli = an.schlafli(expression)
    order = an.workspace.mix_order(expression.leaves)
    faces = an.face_vector(expression)
    verdict = an.polytopality(expression)
    return StructureReport(
        expression=str(expression),
        rank=expression.rank,
        leaves=tuple(str(leaf) for leaf in expression.canonical_leaves),
        schlafli=str(schlafli),
        rotation_order=order,
        flag_count=2 * order,
        face_vector=faces,
        polytopal=verdict.status,
        method=verdict.method,
        detail=verdict.detail,
    )


def schlafli_of_mix(expression: MixExpression, workspace: Workspace | None = None) -> SchlafliSymbol:
    """Schläfli type of a mix (entrywise lcm, verified against the engine)."""
    return Analyzer(workspace).schlafli(expression)


def face_vector(expression: MixExpression, workspace: Workspace | None = None) -> tuple[int, ...]:
    """Face counts by rank for a mix expression."""
    return Analyzer(workspace).face_vector(expression)


def polytopality(expression: MixExpression, workspace: Workspace | None = None) -> Verdict:
    """Polytopality verdict for a mix expression."""
    return Analyzer(workspace).polytopality(expression)
