"""Combinatorial fat graphs (rotation systems).

A fat graph on half-edges 0..2E-1 is a pair of permutations:

* ``pairing`` -- a fixed-point-free involution whose orbits are the edges;
* ``next_at_vertex`` -- a permutation whose orbits are the vertices, sending
  each half-edge to the next one in the cyclic order at its vertex.

A half-edge h is read as the oriented edge leaving its vertex.  Boundary
cycles are the orbits of the tracing permutation

    t(h) = next_at_vertex(pairing(h))

i.e. cross the edge, then turn to the next slot at the far vertex.  The
opposite composition would reverse every cycle; this convention is fixed
throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    FixedPointInPairing,
    InconsistentTables,
    NonIntegerGenus,
    ValenceTooLow,
)

__all__ = [
    "FatGraph",
    "TopType",
    "validate",
    "boundary_cycles",
    "euler_characteristic",
    "topological_type",
    "canonical_code",
    "canonical_labeling",
]


@dataclass(frozen=True)
class TopType:
    """Topological type (g; p, q) of a chord diagram.

    For a plain fat graph only ``g`` and the total boundary count
    ``p + q`` are meaningful.
    """

    genus: int
    p: int
    q: int

    def __post_init__(self):
        if self.genus < 0 or self.p < 0 or self.q < 0:
            raise ValueError("genus, p and q must be non-negative")

    @property
    def n_boundary(self) -> int:
        return self.p + self.q

    def __str__(self) -> str:
        return f"({self.genus};{self.p},{self.q})"


@dataclass(frozen=True)
class FatGraph:
    """Immutable rotation system.  Use :func:`validate` to build one safely."""

    pairing: tuple[int, ...]
    next_at_vertex: tuple[int, ...]

    @property
    def n_half_edges(self) -> int:
        return len(self.pairing)

    @property
    def n_edges(self) -> int:
        return len(self.pairing) // 2

    def vertices(self) -> list[tuple[int, ...]]:
        """Orbits of next_at_vertex, each starting at its least half-edge,
        listed in order of that least element."""
        return _orbits(self.next_at_vertex)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices())

    def trace(self, h: int) -> int:
        """One step of the boundary tracing permutation."""
        return self.next_at_vertex[self.pairing[h]]

    def vertex_of(self) -> tuple[int, ...]:
        """Map from half-edge to the index of its vertex in vertices()."""
        verts = self.vertices()
        out = [0] * self.n_half_edges
        for i, orbit in enumerate(verts):
            for h in orbit:
                out[h] = i
        return tuple(out)

    def edge_of(self, h: int) -> int:
        """Canonical id of the edge through h: the smaller half-edge."""
        return min(h, self.pairing[h])

    def edges(self) -> list[int]:
        return sorted(h for h in range(self.n_half_edges) if h < self.pairing[h])


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        h = start
        while not seen[h]:
            seen[h] = True
            orbit.append(h)
            h = perm[h]
        out.append(tuple(orbit))
    return out


def _is_connected(pairing: Sequence[int], nxt: Sequence[int]) -> bool:
    n = len(pairing)
    if n == 0:
        return True
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        h = stack.pop()
        for k in (pairing[h], nxt[h]):
            if not seen[k]:
                seen[k] = True
                count += 1
                stack.append(k)
    return count == n


def validate(
    pairing: Sequence[int],
    vertex_lists: Iterable[Sequence[int]],
    *,
    min_valence: int = 3,
    require_connected: bool = True,
) -> FatGraph:
    """Build a FatGraph from a pairing table and vertex cyclic lists.

    ``vertex_lists`` gives, for each vertex, its half-edges in cyclic order.
    Raises a structured error if the tables are inconsistent, the pairing is
    not a fixed-point-free involution, a vertex has valence < min_valence,
    or the graph is disconnected.
    """
    pairing = tuple(pairing)
    n = len(pairing)
    if n % 2:
        raise InconsistentTables("odd number of half-edges")

    seen = [False] * n
    nxt = [-1] * n
    for cyc in vertex_lists:
        if len(cyc) < min_valence:
            raise ValenceTooLow(f"vertex {tuple(cyc)} has valence {len(cyc)}")
        for h in cyc:
            if not (0 <= h < n) or seen[h]:
                raise InconsistentTables(f"half-edge {h} repeated or out of range")
            seen[h] = True
        for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
            nxt[a] = b
    if not all(seen):
        raise InconsistentTables("some half-edges appear in no vertex")

    for h, k in enumerate(pairing):
        if not (0 <= k < n):
            raise InconsistentTables(f"pairing({h}) = {k} out of range")
        if k == h:
            raise FixedPointInPairing(f"pairing fixes half-edge {h}")
        if pairing[k] != h:
            raise InconsistentTables(f"pairing is not an involution at {h}")

    if require_connected and not _is_connected(pairing, nxt):
        raise Disconnected("fat graph is not connected")

    return FatGraph(pairing=pairing, next_at_vertex=tuple(nxt))


def boundary_cycles(graph: FatGraph) -> list[tuple[int, ...]]:
    """The orbits of t(h) = next_at_vertex(pairing(h)).

    Each cycle is rotated to start at its least half-edge; cycles are listed
    in order of that least element.  Every half-edge occurs exactly once in
    exactly one cycle.
    """
    perm = tuple(graph.next_at_vertex[graph.pairing[h]] for h in range(graph.n_half_edges))
    return _orbits(perm)


def euler_characteristic(graph: FatGraph) -> int:
    """chi = V - E."""
    return graph.n_vertices - graph.n_edges


def topological_type(graph: FatGraph) -> tuple[int, int]:
    """Genus and boundary count of the thickened surface: 2 - 2g - n = V - E."""
    n = len(boundary_cycles(graph))
    chi = euler_characteristic(graph)
    if (2 - chi - n) % 2:
        raise NonIntegerGenus(f"chi={chi}, n={n}")
    g = (2 - chi - n) // 2
    if g < 0:
        raise NonIntegerGenus(f"negative genus from chi={chi}, n={n}")
    return g, n


def _color_index(n, colors):
    if colors is None:
        return [], None
    if len(colors) != n:
        raise ValueError("one color per half-edge expected")
    palette = sorted(set(colors))
    index = {c: i for i, c in enumerate(palette)}
    return palette, tuple(index[c] for c in colors)


def canonical_code(
    graph: FatGraph,
    colors: Sequence[object] | None = None,
    _step_counter: list[int] | None = None,
) -> bytes:
    """Relabeling-invariant code; equal codes iff isomorphic fat graphs.

    For every starting half-edge, relabel by breadth-first traversal along
    pairing and next_at_vertex, serialize both permutations (plus per-half-edge
    colors, used as decoration tie-breaks), and keep the lexicographic minimum.
    The graph must be connected.  ``_step_counter`` accumulates traversal step
    counts for complexity tests.
    """
    n = graph.n_half_edges
    pairing = graph.pairing
    nxt = graph.next_at_vertex
    palette, color_ix = _color_index(n, colors)

    best = None
    for start in range(n):
        label = [-1] * n
        order = [start]
        label[start] = 0
        head = 0
        while head < len(order):
            h = order[head]
            head += 1
            for k in (nxt[h], pairing[h]):
                if label[k] < 0:
                    label[k] = len(order)
                    order.append(k)
        if _step_counter is not None:
            _step_counter[0] += n
        if len(order) != n:
            raise Disconnected("canonical_code requires a connected graph")
        word = []
        for h in order:
            word.append(label[nxt[h]])
            word.append(label[pairing[h]])
            if color_ix is not None:
                word.append(color_ix[h])
        word = tuple(word)
        if best is None or word < best:
            best = word
    payload = (n, tuple(repr(c) for c in palette), best)
    return repr(payload).encode("ascii")


def canonical_labeling(
    graph: FatGraph, colors: Sequence[object] | None = None
) -> tuple[int, ...]:
    """A relabeling (old half-edge -> new label) achieving the canonical code.

    Relabeling any graph by its canonical labeling yields identical pairing
    and next_at_vertex tables (and colors) for every member of its
    isomorphism class.
    """
    n = graph.n_half_edges
    pairing = graph.pairing
    nxt = graph.next_at_vertex
    _, color_ix = _color_index(n, colors)

    best = None
    best_label = None
    for start in range(n):
        label = [-1] * n
        order = [start]
        label[start] = 0
        head = 0
        while head < len(order):
            h = order[head]
            head += 1
            for k in (nxt[h], pairing[h]):
                if label[k] < 0:
                    label[k] = len(order)
                    order.append(k)
        if len(order) != n:
            raise Disconnected("canonical_labeling requires a connected graph")
        word = []
        for h in order:
            word.append(label[nxt[h]])
            word.append(label[pairing[h]])
            if color_ix is not None:
                word.append(color_ix[h])
        word = tuple(word)
        if best is None or word < best:
            best = word
            best_label = tuple(label)
    return best_label
