"""Catalog of the regular convex polytopes usable as mix leaves.

Rank 2: every polygon {p}, p >= 3. Rank 3: the five Platonic solids.
Rank 4: the six regular convex 4-polytopes. Rank >= 5: simplex, cube,
cross-polytope. The one-letter families T/B/C (simplex, cube, cross)
exist in every rank >= 2.
"""

from __future__ import annotations

from math import comb, factorial

from polymix.errors import NotConvexSeed
from polymix.words import SchlafliSymbol

PLATONIC = (
    SchlafliSymbol((3, 3)),
    SchlafliSymbol((3, 4)),
    SchlafliSymbol((4, 3)),
    SchlafliSymbol((3, 5)),
    SchlafliSymbol((5, 3)),
)

CONVEX_4_POLYTOPES = (
    SchlafliSymbol((3, 3, 3)),
    SchlafliSymbol((3, 3, 4)),
    SchlafliSymbol((3, 3, 5)),
    SchlafliSymbol((3, 4, 3)),
    SchlafliSymbol((4, 3, 3)),
    SchlafliSymbol((5, 3, 3)),
)


def simplex(rank: int) -> SchlafliSymbol:
    if rank < 2:
        raise NotConvexSeed(f"rank {rank} < 2")
    return SchlafliSymbol((3,) * (rank - 1))


def cube(rank: int) -> SchlafliSymbol:
    if rank < 2:
        raise NotConvexSeed(f"rank {rank} < 2")
    return SchlafliSymbol((4,) + (3,) * (rank - 2))


def cross_polytope(rank: int) -> SchlafliSymbol:
    if rank < 2:
        raise NotConvexSeed(f"rank {rank} < 2")
    return SchlafliSymbol((3,) * (rank - 2) + (4,))


FAMILIES = {"T": simplex, "B": cube, "C": cross_polytope}


def is_convex_seed(symbol: SchlafliSymbol) -> bool:
    n = symbol.rank
    if n == 2:
        return symbol.entries[0] >= 3
    if n == 3:
        return symbol in PLATONIC
    if n == 4:
        return symbol in CONVEX_4_POLYTOPES
    return symbol in (simplex(n), cube(n), cross_polytope(n))


def require_convex_seed(symbol: SchlafliSymbol) -> SchlafliSymbol:
    if not is_convex_seed(symbol):
        raise NotConvexSeed(f"{symbol} is not a regular convex polytope")
    return symbol


def seed_group_order(symbol: SchlafliSymbol) -> int:
    """Order of the full symmetry group of a convex seed (closed form)."""
    require_convex_seed(symbol)
    n = symbol.rank
    if n == 2:
        return 2 * symbol.entries[0]
    if n == 3:
        return {
            (3, 3): 24,
            (3, 4): 48,
            (4, 3): 48,
            (3, 5): 120,
            (5, 3): 120,
        }[symbol.entries]
    if n == 4:
        return {
            (3, 3, 3): 120,
            (3, 3, 4): 384,
            (4, 3, 3): 384,
            (3, 3, 5): 14400,
            (5, 3, 3): 14400,
            (3, 4, 3): 1152,
        }[symbol.entries]
    if symbol == simplex(n):
        return factorial(n + 1)
    return 2**n * factorial(n)


def seed_face_count(symbol: SchlafliSymbol, k: int) -> int:
    """Number of k-faces of a convex seed in the T/B/C families.

    Closed forms: the rank-n simplex has C(n+1, k+1) faces of rank k, the
    cube 2^(n-k) * C(n, k), the cross-polytope 2^(k+1) * C(n, k+1). Other
    seeds (the exceptional rank-3/4 ones outside the families) are not
    covered here; compute those through a group-based report instead.
    """
    n = symbol.rank
    if not 0 <= k <= n - 1:
        raise ValueError(f"face rank {k} outside 0..{n - 1}")
    if symbol == simplex(n):
        return comb(n + 1, k + 1)
    if symbol == cube(n):
        return 2 ** (n - k) * comb(n, k)
    if symbol == cross_polytope(n):
        return 2 ** (k + 1) * comb(n, k + 1)
    raise NotConvexSeed(f"{symbol} has no closed-form face count here")
