"""Independent small-scale face-lattice oracle.

The oracle builds the full flag graph of a mix — one node per flag,
one fixed-point-free involution per rank — and decides polytopality by
purely combinatorial section checks on that graph, without reusing the
mixing engine's subgroup arithmetic.

Flags are enumerated by breadth-first search over base-image vectors:
with a stabilizer chain for the full (reflection) group of the mix, an
element is identified by the images of the base points alone, and right
multiplication by a generator acts on those vectors pointwise.  The
search therefore never materializes full-degree permutations per flag.

Polytopality is checked interval by interval.  For every color
interval, the flags sharing both the lower end section and the upper
end section of a base flag must be exactly the flags sharing its middle
section; running this over all intervals is equivalent to the full
intersection property of the flag group, hence to polytopality of the
flag graph.  Face counts are connected components of the graph with one
color removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from polymix import _kernel
from polymix.errors import TooLarge
from polymix.mixer import MixExpression, Workspace
from polymix.perms import GeneratedGroup, diagonal_mix

__all__ = [
    "FlagGraph",
    "OracleCheck",
    "build_flag_graph",
    "check_polytope",
    "face_counts",
]


@dataclass(frozen=True)
class FlagGraph:
    """Flag adjacency of a mix: ``columns[i][x]`` is the i-adjacent flag of x."""

    nflags: int
    columns: tuple[tuple[int, ...], ...]

    @property
    def nranks(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class OracleCheck:
    """Outcome of the combinatorial polytopality check on a flag graph."""

    flag_count: int
    face_counts: tuple[int, ...]
    polytopal: bool
    failures: tuple[str, ...]


def _full_group(expression: MixExpression, ws: Workspace) -> GeneratedGroup:
    components = [ws.coxeter_group(leaf) for leaf in expression.canonical_leaves]
    if len(components) == 1:
        return components[0]
    return diagonal_mix(components)


def build_flag_graph(
    expression: MixExpression,
    workspace: Workspace | None = None,
    max_flags: int | None = None,
) -> FlagGraph:
    """Build the flag graph of a mix.

    Raises :class:`TooLarge` when the number of flags exceeds the
    limit (the workspace's ``max_flags`` budget by default).
    """
    ws = workspace or Workspace()
    limit = ws.budgets.max_flags if max_flags is None else max_flags
    full = _full_group(expression, ws)
    if full.order > limit:
        raise TooLarge(
            f"{expression} has {full.order} flags, above the limit of {limit}"
        )

    generators = full.generators
    for gen in generators:
        assert not gen.is_identity(), "degenerate reflection in the flag group"
    for i in range(len(generators)):
        for j in range(i + 2, len(generators)):
            assert generators[i] * generators[j] == generators[j] * generators[i], (
                f"non-adjacent reflections {i} and {j} fail to commute"
            )

    images = [gen.images for gen in generators]
    start = tuple(full.base)
    index: dict[tuple[int, ...], int] = {start: 0}
    vectors: list[tuple[int, ...]] = [start]
    columns: list[list[int]] = [[] for _ in generators]
    cursor = 0
    while cursor < len(vectors):
        vector = vectors[cursor]
        for color, image in enumerate(images):
            neighbor = tuple(image[x] for x in vector)
            target = index.get(neighbor)
            if target is None:
                target = len(vectors)
                index[neighbor] = target
                vectors.append(neighbor)
            columns[color].append(target)
        cursor += 1

    nflags = len(vectors)
    assert nflags == full.order, (
        f"flag search found {nflags} flags but the group has order {full.order}"
    )
    for color, column in enumerate(columns):
        for x, y in enumerate(column):
            assert y != x and column[y] == x, (
                f"color {color} is not a free involution at flag {x}"
            )
    _, pieces = _kernel.component_labels(nflags, columns)
    assert pieces == 1, "flag graph is disconnected"
    return FlagGraph(nflags=nflags, columns=tuple(tuple(col) for col in columns))


def face_counts(graph: FlagGraph) -> tuple[int, ...]:
    """Face counts by rank: components of the graph with one color removed."""
    counts = []
    for k in range(graph.nranks):
        kept = [graph.columns[c] for c in range(graph.nranks) if c != k]
        if kept:
            _, count = _kernel.component_labels(graph.nflags, kept)
        else:
            count = graph.nflags
        counts.append(count)
    return tuple(counts)


def _interval_labels(
    graph: FlagGraph, cache: dict, a: int, b: int
) -> list[int] | None:
    """Component labels over colors a..b inclusive; None for an empty interval."""
    if a > b:
        return None
    key = (a, b)
    labels = cache.get(key)
    if labels is None:
        columns = [graph.columns[c] for c in range(a, b + 1)]
        labels, _ = _kernel.component_labels(graph.nflags, columns)
        cache[key] = labels
    return labels


def check_graph(graph: FlagGraph) -> OracleCheck:
    """Run the combinatorial polytopality check on a built flag graph."""
    n = graph.nranks
    cache: dict = {}
    failures: list[str] = []
    for width in range(2, n + 1):
        for a in range(0, n - width + 1):
            b = a + width - 1
            lower = _interval_labels(graph, cache, a, b - 1)
            upper = _interval_labels(graph, cache, a + 1, b)
            middle = _interval_labels(graph, cache, a + 1, b - 1)
            lower0 = lower[0]
            upper0 = upper[0]
            shared = 0
            for y in range(graph.nflags):
                if lower[y] == lower0 and upper[y] == upper0:
                    shared += 1
            expected = 1 if middle is None else middle.count(middle[0])
            assert shared >= expected, "middle section escaped its end sections"
            if shared != expected:
                failures.append(
                    f"colors {a}..{b}: {shared} flags lie in both end sections "
                    f"of the base flag, but its middle section holds {expected}"
                )
    return OracleCheck(
        flag_count=graph.nflags,
        face_counts=face_counts(graph),
        polytopal=not failures,
        failures=tuple(failures),
    )


def check_polytope(
    expression: MixExpression,
    workspace: Workspace | None = None,
    max_flags: int | None = None,
) -> OracleCheck:
    """Build the flag graph of a mix and check it for polytopality."""
    graph = build_flag_graph(expression, workspace=workspace, max_flags=max_flags)
    return check_graph(graph)
