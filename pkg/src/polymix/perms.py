"""Permutations and finitely generated permutation groups.

Permutations act on the right: (g * h) sends x to h[g[x]], i.e. g is
applied first. Group orders come from a deterministic stabilizer chain and
are exact Python integers at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from polymix import _kernel
from polymix.errors import CapExceeded, DegreeMismatch

ELEMENT_CAP_DEFAULT = 20_000_000


class Permutation:
    """An immutable permutation of 0..degree-1 stored as an image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise DegreeMismatch(f"{self.degree} vs {other.degree}")
        o = other.images
        return Permutation(o[x] for x in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        square = self
        while n:
            if n & 1:
                result = result * square
            square = square * square
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "Permutation(id)"
        return "Permutation(" + "".join(str(c) for c in cycs) + ")"


def evaluate_word(word, images: list[Permutation], degree: int) -> Permutation:
    """Evaluate a words.Word under generator images (0-based indices)."""
    result = Permutation.identity(degree)
    for idx, sign in word.letters:
        g = images[idx] if sign == 1 else images[idx].inverse()
        result = result * g
    return result


class GeneratedGroup:
    """A permutation group with a deterministic stabilizer chain."""

    def __init__(self, generators, degree: int | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"{g.degree} vs {degree}")
        self.degree = degree
        self.generators = tuple(gens)
        base, transversals, orbits, order = _kernel.schreier_sims(
            degree, [list(g.images) for g in gens]
        )
        self._base = base
        self._transversals = transversals
        self._orbits = orbits
        self.order = order

    @property
    def base(self) -> list[int]:
        return list(self._base)

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            raise DegreeMismatch(f"{perm.degree} vs {self.degree}")
        residue = _kernel.sift(
            self.degree, self._base, self._transversals, list(perm.images)
        )
        return all(residue[i] == i for i in range(self.degree))

    def elements(self):
        """Iterate all elements in base-image lexicographic order."""
        for images in _kernel.iter_chain_elements(self.degree, self._transversals):
            yield Permutation(images)

    def element_list(self, cap: int = ELEMENT_CAP_DEFAULT) -> list[Permutation]:
        if self.order > cap:
            raise CapExceeded(f"group order {self.order} exceeds cap {cap}")
        return list(self.elements())

    def subgroup(self, generators) -> "GeneratedGroup":
        return GeneratedGroup(generators, degree=self.degree)

    def intersection(
        self, other: "GeneratedGroup", cap: int = ELEMENT_CAP_DEFAULT
    ) -> "GeneratedGroup":
        """Intersection by filtering the smaller group through the larger.

        Enumerates every element of the smaller group, so it refuses to
        start if that order exceeds `cap`.
        """
        if other.degree != self.degree:
            raise DegreeMismatch(f"{other.degree} vs {self.degree}")
        small, big = (self, other) if self.order <= other.order else (other, self)
        if small.order > cap:
            raise CapExceeded(
                f"intersection would enumerate {small.order} elements (cap {cap})"
            )
        members = _kernel.intersection_filter(
            self.degree, small._transversals, big._base, big._transversals
        )
        group = GeneratedGroup([Permutation(m) for m in members], degree=self.degree)
        # the filtered set is itself a group, so closing it must not grow it
        if group.order != len(members):
            raise AssertionError("intersection filter returned a non-group")
        return group


def close_and_order(generators, degree: int | None = None) -> int:
    """Order of the group generated by the given permutations."""
    return GeneratedGroup(generators, degree=degree).order


def diagonal_mix(groups) -> GeneratedGroup:
    """Subgroup of the direct product generated by paired generators.

    All groups must expose the same number of generators; paired generator
    i acts as component i's generator on each block of the disjoint union
    of the domains.
    """
    groups = list(groups)
    if not groups:
        raise ValueError("diagonal_mix needs at least one group")
    k = len(groups[0].generators)
    for g in groups:
        if len(g.generators) != k:
            raise DegreeMismatch(
                f"component with {len(g.generators)} generators, expected {k}"
            )
    total = sum(g.degree for g in groups)
    mixed = []
    for i in range(k):
        images = []
        offset = 0
        for g in groups:
            images.extend(offset + x for x in g.generators[i].images)
            offset += g.degree
        mixed.append(Permutation(images))
    return GeneratedGroup(mixed, degree=total)
