"""Mixing engine for rotation groups of regular convex polytopes.

The mix of directly regular polytopes is realized concretely: each
component's rotation group acts on a faithful coset space, and the mix
is the subgroup of the direct product generated by the tuples of
matched standard generators, acting on the disjoint union of the coset
spaces.  The comix is realized by presentation: the relators of both
components are imposed simultaneously and the quotient is measured by
coset enumeration.

A :class:`Workspace` caches the expensive reusable artifacts (seed
realizations and mix orders); mixed group objects themselves are built
on demand and never cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from polymix.catalog import require_convex_seed
from polymix.coset import COSET_BUDGET_DEFAULT, group_order, permutation_realization
from polymix.errors import RankMismatch
from polymix.perms import (
    ELEMENT_CAP_DEFAULT,
    GeneratedGroup,
    diagonal_mix,
)
from polymix.words import (
    SchlafliSymbol,
    comix_presentation,
    entrywise_gcd,
    entrywise_lcm,
    rotation_presentation,
    coxeter_presentation,
)

__all__ = [
    "Budgets",
    "MixExpression",
    "MixedGroup",
    "SizeIdentityReport",
    "Workspace",
    "build",
    "comix_order",
    "covers",
    "gcd_trivial_comix",
    "mix_order",
    "size_identity_check",
]


@dataclass(frozen=True)
class Budgets:
    """Resource limits for the deterministic engines.

    ``cosets`` bounds live cosets during any single coset enumeration,
    ``elements`` bounds explicit element enumeration (element lists and
    subgroup intersections), and ``max_flags`` bounds the size of flag
    graphs built by the face-lattice oracle.
    """

    cosets: int = COSET_BUDGET_DEFAULT
    elements: int = ELEMENT_CAP_DEFAULT
    max_flags: int = 200_000


@dataclass(frozen=True)
class MixExpression:
    """A formal mix of regular convex seed polytopes, all of one rank.

    The expression is a flat multiset of Schläfli symbols; mixing is
    associative, commutative, and idempotent, so nesting carries no
    information beyond the set of leaves.
    """

    leaves: tuple[SchlafliSymbol, ...]

    def __post_init__(self) -> None:
        if not self.leaves:
            raise RankMismatch("a mix expression needs at least one component")
        ranks = {leaf.rank for leaf in self.leaves}
        if len(ranks) != 1:
            raise RankMismatch(
                f"mix components must share one rank, got ranks {sorted(ranks)}"
            )
        for leaf in self.leaves:
            require_convex_seed(leaf)

    @property
    def rank(self) -> int:
        return self.leaves[0].rank

    @property
    def canonical_leaves(self) -> tuple[SchlafliSymbol, ...]:
        """Leaves deduplicated and sorted; the identity of the mix."""
        return tuple(sorted(set(self.leaves)))

    def type_symbol(self) -> SchlafliSymbol:
        """Schläfli type of the mix: the entrywise lcm of the leaf types."""
        return reduce(entrywise_lcm, self.leaves)

    def dual(self) -> "MixExpression":
        return MixExpression(tuple(leaf.dual() for leaf in self.leaves))

    def __str__(self) -> str:
        return "*".join(str(leaf) for leaf in self.leaves)


class Workspace:
    """Shared caches and budgets for a sequence of mix computations.

    Seed realizations are cached per symbol, and mix orders are cached
    per deduplicated sorted leaf tuple.  Deduplication is exact, not
    merely up to isomorphism: identical symbols contribute identical
    defining relation subgroups, so repeating a leaf never changes the
    mix.
    """

    def __init__(self, budgets: Budgets | None = None) -> None:
        self.budgets = budgets or Budgets()
        self._rotation: dict[SchlafliSymbol, GeneratedGroup] = {}
        self._coxeter: dict[SchlafliSymbol, GeneratedGroup] = {}
        self._mix_orders: dict[tuple[SchlafliSymbol, ...], int] = {}

    # -- seed realizations -------------------------------------------------

    def rotation_group(self, symbol: SchlafliSymbol) -> GeneratedGroup:
        """Faithful permutation realization of the seed's rotation group."""
        group = self._rotation.get(symbol)
        if group is None:
            require_convex_seed(symbol)
            group = permutation_realization(
                rotation_presentation(symbol), budget=self.budgets.cosets
            )
            self._rotation[symbol] = group
        return group

    def coxeter_group(self, symbol: SchlafliSymbol) -> GeneratedGroup:
        """Faithful permutation realization of the seed's full symmetry group."""
        group = self._coxeter.get(symbol)
        if group is None:
            require_convex_seed(symbol)
            group = permutation_realization(
                coxeter_presentation(symbol), budget=self.budgets.cosets
            )
            self._coxeter[symbol] = group
        return group

    # -- mixes -------------------------------------------------------------

    def mixed_group(self, leaves: Sequence[SchlafliSymbol]) -> GeneratedGroup:
        """Diagonal realization of the mix of ``leaves``, literally as given.

        No deduplication is applied, so the returned group acts on the
        disjoint union of one coset space per listed leaf.
        """
        components = [self.rotation_group(leaf) for leaf in leaves]
        if len(components) == 1:
            return components[0]
        return diagonal_mix(components)

    def mix_order(self, leaves: Iterable[SchlafliSymbol]) -> int:
        """Order of the mix of ``leaves`` (cached by deduplicated leaf set)."""
        key = tuple(sorted(set(leaves)))
        if not key:
            raise RankMismatch("a mix needs at least one component")
        order = self._mix_orders.get(key)
        if order is None:
            if len(key) == 1:
                order = self.rotation_group(key[0]).order
            else:
                order = self.mixed_group(key).order
            self._mix_orders[key] = order
        return order

    def flag_count(self, leaves: Iterable[SchlafliSymbol]) -> int:
        """Number of flags of the mix: twice the rotation group order."""
        return 2 * self.mix_order(leaves)


@dataclass(frozen=True)
class MixedGroup:
    """A built mix: the expression, its realization, and its components."""

    expression: MixExpression
    group: GeneratedGroup
    components: tuple[GeneratedGroup, ...]

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def generators(self):
        return self.group.generators


def build(expression: MixExpression, workspace: Workspace | None = None) -> MixedGroup:
    """Build the rotation group of a mix expression.

    The realization acts diagonally on the disjoint union of the leaf
    coset spaces.  As an engine self-check, the defining property that
    every consecutive product of generators is an involution is
    verified on the concrete permutations.
    """
    ws = workspace or Workspace()
    components = tuple(ws.rotation_group(leaf) for leaf in expression.leaves)
    if len(components) == 1:
        group = components[0]
    else:
        group = diagonal_mix(components)
    gens = group.generators
    for i in range(len(gens)):
        running = gens[i]
        for j in range(i + 1, len(gens)):
            running = running * gens[j]
            product = running
            assert (product * product).is_identity(), (
                f"consecutive generator product {i}..{j} is not an involution"
            )
    return MixedGroup(expression=expression, group=group, components=components)


def mix_order(expression: MixExpression, workspace: Workspace | None = None) -> int:
    """Order of the rotation group of the mix."""
    ws = workspace or Workspace()
    return ws.mix_order(expression.leaves)


def comix_order(
    a: SchlafliSymbol,
    b: SchlafliSymbol,
    budget: int = 10_000,
) -> int:
    """Order of the comix of two seed rotation groups.

    The comix is presented by the union of both rotation presentations
    on a shared generator set; its order is measured by coset
    enumeration over the trivial subgroup.
    """
    require_convex_seed(a)
    require_convex_seed(b)
    merged = comix_presentation(rotation_presentation(a), rotation_presentation(b))
    return group_order(merged, budget=budget)


@dataclass(frozen=True)
class SizeIdentityReport:
    """Outcome of checking |mix| * |comix| == |A| * |B| for seeds A, B."""

    a: SchlafliSymbol
    b: SchlafliSymbol
    order_a: int
    order_b: int
    mix_order: int
    comix_order: int

    @property
    def lhs(self) -> int:
        return self.mix_order * self.comix_order

    @property
    def rhs(self) -> int:
        return self.order_a * self.order_b

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def size_identity_check(
    a: SchlafliSymbol,
    b: SchlafliSymbol,
    workspace: Workspace | None = None,
    comix_budget: int = 10_000,
) -> SizeIdentityReport:
    """Check the product identity relating mix and comix orders."""
    ws = workspace or Workspace()
    return SizeIdentityReport(
        a=a,
        b=b,
        order_a=ws.mix_order([a]),
        order_b=ws.mix_order([b]),
        mix_order=ws.mix_order([a, b]),
        comix_order=comix_order(a, b, budget=comix_budget),
    )


def gcd_trivial_comix(a: SchlafliSymbol, b: SchlafliSymbol) -> bool:
    """Sufficient condition for a trivial comix, read off the gcd type.

    If every entry of the entrywise gcd of the two types is odd and at
    least one entry equals 1, the comix collapses to the trivial group.
    """
    gcds = entrywise_gcd(a, b)
    return all(g % 2 == 1 for g in gcds) and any(g == 1 for g in gcds)


def covers(
    a: MixExpression,
    b: MixExpression,
    workspace: Workspace | None = None,
) -> bool:
    """Whether the mix ``a`` covers the mix ``b``.

    ``a`` covers ``b`` exactly when mixing ``b`` into ``a`` changes
    nothing: the defining subgroup of ``a`` is contained in that of
    ``b``, measured by comparing group orders.
    """
    if a.rank != b.rank:
        raise RankMismatch(
            f"cover comparison needs equal ranks, got {a.rank} and {b.rank}"
        )
    ws = workspace or Workspace()
    combined = ws.mix_order(tuple(a.leaves) + tuple(b.leaves))
    return combined == ws.mix_order(a.leaves)
