"""Embedded reference tables for mixes of regular convex polytopes.

The CSV files under ``polymix/data`` hold the expected structural data
(face vectors, flag counts, and polytopality verdicts) for every mix of
regular convex polyhedra and of regular convex 4-polytopes, plus this
module provides the closed-form expectations for mixes of the rank-n
seed families.  The data files are fixed reference values, never
recomputed at build time; the ``verify`` machinery recomputes each row
with the engine and diffs against them.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb, factorial

__all__ = [
    "PolyhedronMixRow",
    "Rank4MixRow",
    "RANK_N_COMBOS",
    "polyhedron_mix_rows",
    "rank4_mix_rows",
    "rank_n_mix_expected",
]

RANK_N_COMBOS = ("TB", "TC", "BC", "TBC")


@dataclass(frozen=True)
class PolyhedronMixRow:
    """Expected structure of one mix of regular convex polyhedra."""

    expression: str
    face_vector: tuple[int, int, int]
    flag_count: int


@dataclass(frozen=True)
class Rank4MixRow:
    """Expected structure of one mix of regular convex 4-polytopes."""

    expression: str
    face_vector: tuple[int, int, int, int]
    flag_count: int
    polytopal: str


def _read_rows(name: str) -> list[dict[str, str]]:
    path = resources.files("polymix") / "data" / name
    with path.open("r", encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


@lru_cache(maxsize=None)
def polyhedron_mix_rows() -> tuple[PolyhedronMixRow, ...]:
    """The 26 mixes of distinct regular convex polyhedra."""
    rows = []
    for row in _read_rows("polyhedra_mixes.csv"):
        rows.append(
            PolyhedronMixRow(
                expression=row["expression"],
                face_vector=(int(row["f0"]), int(row["f1"]), int(row["f2"])),
                flag_count=int(row["g"]),
            )
        )
    assert len(rows) == 26
    return tuple(rows)


@lru_cache(maxsize=None)
def rank4_mix_rows() -> tuple[Rank4MixRow, ...]:
    """The 57 mixes of distinct regular convex 4-polytopes."""
    rows = []
    for row in _read_rows("rank4_mixes.csv"):
        rows.append(
            Rank4MixRow(
                expression=row["expression"],
                face_vector=tuple(int(row[k]) for k in ("f0", "f1", "f2", "f3")),
                flag_count=int(row["g"]),
                polytopal=row["polytopal"],
            )
        )
    assert len(rows) == 57
    assert all(r.polytopal in ("Y", "N") for r in rows)
    return tuple(rows)


def rank_n_mix_expected(combo: str, n: int) -> tuple[int, tuple[int, ...], str]:
    """Closed-form flag count, face vector, and verdict for seed-family mixes.

    ``combo`` selects which of simplex (T), cube (B), and cross-polytope
    (C) are mixed.  Returns (flag count, face vector, polytopality) for
    rank ``n >= 4``; the verdicts are Y for every combination except the
    cube/cross-polytope mix.
    """
    if combo not in RANK_N_COMBOS:
        raise ValueError(f"unknown combination {combo!r}, expected one of {RANK_N_COMBOS}")
    if n < 4:
        raise ValueError("closed forms start at rank 4")
    if combo == "TB":
        flags = 2 ** (n - 1) * factorial(n) * factorial(n + 1)
        faces = [2 ** (n - 1) * factorial(n + 1)]
        faces += [
            2 ** (n - k) * factorial(n - k) * comb(n + 1, k + 1) * comb(n, k)
            for k in range(1, n)
        ]
        verdict = "Y"
    elif combo == "TC":
        flags = 2 ** (n - 1) * factorial(n) * factorial(n + 1)
        faces = [
            2 ** (k + 1) * factorial(k + 1) * comb(n + 1, k + 1) * comb(n, k + 1)
            for k in range(0, n - 1)
        ]
        faces += [2 ** (n - 1) * factorial(n + 1)]
        verdict = "Y"
    elif combo == "BC":
        flags = 2 ** (2 * n - 1) * factorial(n) ** 2
        faces = [2 ** (n + 1) * n]
        faces += [2 ** (n + 2) * comb(n, k) * comb(n, k + 1) for k in range(1, n - 1)]
        faces += [2 ** (n + 1) * n]
        verdict = "N"
    else:  # TBC
        flags = 2 ** (2 * n - 2) * factorial(n) ** 2 * factorial(n + 1)
        faces = [2 ** n * n * factorial(n + 1)]
        faces += [
            2 ** (n + 1) * factorial(n + 1) * comb(n, k) * comb(n, k + 1)
            for k in range(1, n - 1)
        ]
        faces += [2 ** n * n * factorial(n + 1)]
        verdict = "Y"
    return flags, tuple(faces), verdict
