"""Words, finite presentations, and Schlafli symbols.

Generator indices are 0-based everywhere in code; rendered text uses the
1-based names s1, s2, ... A word is a sequence of (index, sign) letters and
is stored exactly as written - free reduction is a separate, explicit step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd, lcm

from polymix.errors import InvalidSymbol, InvalidWord, ParseError, RankMismatch


@dataclass(frozen=True)
class Word:
    """A word in the free group: letters are (generator index, +1 or -1)."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for idx, sign in self.letters:
            if idx < 0 or sign not in (1, -1):
                raise InvalidWord(f"bad letter ({idx}, {sign})")

    @classmethod
    def generator(cls, index: int) -> "Word":
        return cls(((index, 1),))

    @classmethod
    def product(cls, indices) -> "Word":
        """Word made of the given generators, each with exponent +1."""
        return cls(tuple((i, 1) for i in indices))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, exponent: int) -> "Word":
        if exponent >= 0:
            return Word(self.letters * exponent)
        return self.inverse() ** (-exponent)

    def inverse(self) -> "Word":
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))

    def free_reduce(self) -> "Word":
        out: list[tuple[int, int]] = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return Word(tuple(out))

    @property
    def max_index(self) -> int:
        return max((i for i, _ in self.letters), default=-1)

    def encode(self) -> list[int]:
        """Flat kernel encoding: letter (g, +1) -> 2g, (g, -1) -> 2g + 1."""
        return [2 * i + (0 if s == 1 else 1) for i, s in self.letters]

    def __str__(self) -> str:
        if not self.letters:
            return "<empty>"
        parts = []
        for i, s in self.letters:
            parts.append(f"s{i + 1}" if s == 1 else f"s{i + 1}^-1")
        return "*".join(parts)

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator count plus relator words."""

    ngens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        for rel in self.relators:
            if rel.max_index >= self.ngens:
                raise InvalidWord(
                    f"relator {rel} references generator beyond {self.ngens}"
                )

    def encoded_relators(self) -> list[list[int]]:
        return [rel.encode() for rel in self.relators]


_SYMBOL_RE = re.compile(r"^\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}$")


@dataclass(frozen=True, order=True)
class SchlafliSymbol:
    """A Schlafli symbol {p1, ..., p_{n-1}} with finite entries >= 2."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise InvalidSymbol("empty symbol (rank < 2 has no symbol)")
        for p in self.entries:
            if p < 2:
                entries = ",".join(str(q) for q in self.entries)
                raise InvalidSymbol(f"entry {p} < 2 in {{{entries}}}")

    @classmethod
    def parse(cls, text: str) -> "SchlafliSymbol":
        m = _SYMBOL_RE.match(text.strip())
        if not m:
            raise ParseError(f"not a Schlafli symbol: {text!r}")
        return cls(tuple(int(tok) for tok in m.group(1).split(",")))

    @property
    def rank(self) -> int:
        return len(self.entries) + 1

    def dual(self) -> "SchlafliSymbol":
        return SchlafliSymbol(tuple(reversed(self.entries)))

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.entries) + "}"


def entrywise_lcm(a: SchlafliSymbol, b: SchlafliSymbol) -> SchlafliSymbol:
    if a.rank != b.rank:
        raise RankMismatch(f"{a} vs {b}")
    return SchlafliSymbol(tuple(lcm(x, y) for x, y in zip(a.entries, b.entries)))


def entrywise_gcd(a: SchlafliSymbol, b: SchlafliSymbol) -> tuple[int, ...]:
    if a.rank != b.rank:
        raise RankMismatch(f"{a} vs {b}")
    return tuple(gcd(x, y) for x, y in zip(a.entries, b.entries))


def rotation_presentation(symbol: SchlafliSymbol) -> Presentation:
    """Presentation of the abstract rotation group on n-1 generators.

    Relator order is pinned for reproducible coset tables: first the power
    relators s_i^{p_i} by increasing i, then the squared runs
    (s_i * s_{i+1} * ... * s_j)^2 in lexicographic (i, j) order.
    """
    n = symbol.rank
    relators = []
    for i, p in enumerate(symbol.entries):
        relators.append(Word.generator(i) ** p)
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            run = Word.product(range(i, j + 1))
            relators.append(run**2)
    return Presentation(n - 1, tuple(relators))


def coxeter_presentation(symbol: SchlafliSymbol) -> Presentation:
    """Presentation of the full reflection group on n generators r_i.

    Relators: r_i^2 by increasing i, then (r_{i-1} * r_i)^{p_i} by
    increasing i, then the commuting squares (r_i * r_j)^2 for j >= i + 2
    in lexicographic (i, j) order.
    """
    n = symbol.rank
    relators = []
    for i in range(n):
        relators.append(Word.generator(i) ** 2)
    for i, p in enumerate(symbol.entries):
        relators.append((Word.generator(i) * Word.generator(i + 1)) ** p)
    for i in range(n):
        for j in range(i + 2, n):
            relators.append((Word.generator(i) * Word.generator(j)) ** 2)
    return Presentation(n, tuple(relators))


def comix_presentation(a: Presentation, b: Presentation) -> Presentation:
    """Merge two presentations on the same generators.

    The relator list is the concatenation of both lists, b's rewritten onto
    a's generators by index. Duplicate relators are kept as written.
    """
    if a.ngens != b.ngens:
        raise RankMismatch(f"{a.ngens} generators vs {b.ngens}")
    return Presentation(a.ngens, a.relators + b.relators)
