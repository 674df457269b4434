"""Sullivan chord diagrams.

A chord diagram of type (g; p, q) is a fat graph consisting of p disjoint
circles (circular edges) plus a forest of ghost edges whose endpoints lie on
the circles, decorated with:

* an ordering of all boundary cycles, the first p being the incoming circles
  (each incoming circle, traversed with its orientation, is itself a boundary
  cycle of the fat graph);
* a marking per boundary cycle: one oriented circular-edge occurrence, which
  doubles as the start of the cycle's parameterization.

The module provides validation, ghost collapse, vertex multiplicities, the
essential-edge test, elementary collapse/expansion moves, the canonical
base-point diagram of each type, and gluing along matched boundaries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import fatgraph as fg
from .errors import (
    ArityMismatch,
    BadMarking,
    ChordLabError,
    CircleNotDisjoint,
    EssentialEdge,
    GhostCycle,
    GlueValidationFailed,
    IncomingNotBoundaryCycle,
    InconsistentTables,
    InvalidSchedule,
    LoopEdge,
    NoCircularEdgeOnCycle,
    UnrepresentableType,
)
from .fatgraph import FatGraph, TopType

CIRCULAR = "C"
GHOST = "G"

__all__ = [
    "ChordDiagram",
    "CollapsedGraph",
    "validate_chord",
    "collapse_ghosts",
    "multiplicity",
    "multiplicities",
    "chi_defect",
    "is_essential",
    "collapse_edge",
    "expansions",
    "canonical_gamma0",
    "glue",
    "diagram_code",
    "canonical_form",
    "canonical_form_with_map",
]


@dataclass(frozen=True)
class ChordDiagram:
    """Validated chord diagram.  Build through :func:`validate_chord`."""

    graph: FatGraph
    labels: tuple[str, ...]          # C/G per half-edge, equal on paired halves
    p: int                           # number of incoming circles
    boundary_order: tuple[int, ...]  # least half-edge of each boundary cycle
    markings: tuple[int, ...]        # circular half-edge per cycle, same order

    @property
    def q(self) -> int:
        return len(self.boundary_order) - self.p

    def top_type(self) -> TopType:
        g, n = fg.topological_type(self.graph)
        return TopType(g, self.p, n - self.p)

    def cycles(self) -> list[tuple[int, ...]]:
        return _cycles(self.graph)

    def cycle_by_rep(self, rep: int) -> tuple[int, ...]:
        for cyc in _cycles(self.graph):
            if cyc[0] == rep:
                return cyc
        raise KeyError(rep)

    def incoming_circles(self) -> list[tuple[int, ...]]:
        by_rep = {cyc[0]: cyc for cyc in _cycles(self.graph)}
        return [by_rep[r] for r in self.boundary_order[: self.p]]

    def is_circular(self, h: int) -> bool:
        return self.labels[h] == CIRCULAR

    def circular_edges(self) -> list[int]:
        return [e for e in self.graph.edges() if self.labels[e] == CIRCULAR]

    def ghost_edges(self) -> list[int]:
        return [e for e in self.graph.edges() if self.labels[e] == GHOST]


@dataclass(frozen=True)
class CollapsedGraph:
    """The fat graph S(c) obtained by collapsing every ghost edge of c."""

    s_graph: FatGraph
    projection: tuple[int, ...]      # vertex index of c -> vertex index of S(c)
    half_edge_map: tuple[int, ...]   # half-edge of c -> half-edge of S(c), -1 on ghosts


@lru_cache(maxsize=65536)
def _cycles(graph: FatGraph) -> list[tuple[int, ...]]:
    return fg.boundary_cycles(graph)


def _cycle_of_map(graph: FatGraph) -> dict[int, int]:
    """half-edge -> least half-edge of its boundary cycle."""
    out = {}
    for cyc in _cycles(graph):
        for h in cyc:
            out[h] = cyc[0]
    return out


def _ghost_components(diagram_or_parts) -> tuple[tuple[int, ...], list[int]]:
    """Union-find over vertices along ghost edges.

    Returns (component index per vertex, component sizes in circular vertices).
    Raises GhostCycle if the ghost subgraph contains a cycle.
    """
    graph, labels = diagram_or_parts
    vertex_of = graph.vertex_of()
    nv = graph.n_vertices
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in graph.edges():
        if labels[e] == GHOST:
            a, b = find(vertex_of[e]), find(vertex_of[graph.pairing[e]])
            if a == b:
                raise GhostCycle(f"ghost edge {e} closes a cycle")
            parent[a] = b

    roots = sorted({find(v) for v in range(nv)})
    index = {r: i for i, r in enumerate(roots)}
    comp = tuple(index[find(v)] for v in range(nv))

    circ_count = [0] * len(roots)
    for v, orbit in enumerate(graph.vertices()):
        if any(labels[h] == CIRCULAR for h in orbit):
            circ_count[comp[v]] += 1
    return comp, circ_count


def validate_chord(
    graph: FatGraph,
    labels,
    p: int,
    boundary_order,
    markings=None,
) -> tuple[ChordDiagram, TopType]:
    """Check every chord-diagram invariant and classify the type.

    ``labels`` is a C/G string per half-edge (paired halves must agree).
    ``boundary_order`` lists the least half-edge of each boundary cycle, the
    first ``p`` designating the incoming circles.  ``markings``, if omitted,
    default to the first circular half-edge of each cycle.
    """
    labels = tuple(labels)
    n = graph.n_half_edges
    if len(labels) != n or any(l not in (CIRCULAR, GHOST) for l in labels):
        raise InconsistentTables("labels must be one C/G entry per half-edge")
    for h in range(n):
        if labels[h] != labels[graph.pairing[h]]:
            raise InconsistentTables(f"edge of half-edge {h} has mixed labels")

    # circular edges form p pairwise-disjoint simple cycles: every vertex
    # carries either exactly two circular half-edges or none at all
    n_circ_vertices = 0
    for orbit in graph.vertices():
        k = sum(1 for h in orbit if labels[h] == CIRCULAR)
        if k not in (0, 2):
            raise CircleNotDisjoint(
                f"vertex {orbit} has {k} circular half-edges (want 0 or 2)"
            )
        n_circ_vertices += k == 2

    _ghost_components((graph, labels))  # raises GhostCycle

    cycles = _cycles(graph)
    by_rep = {cyc[0]: cyc for cyc in cycles}
    boundary_order = tuple(boundary_order)
    if sorted(boundary_order) != sorted(by_rep):
        raise InconsistentTables("boundary_order is not a permutation of the cycles")
    if not (1 <= p <= len(boundary_order)):
        raise IncomingNotBoundaryCycle(f"incoming count {p} out of range")

    # each designated incoming cycle is a circle: all-circular, and the p of
    # them cover every circular edge exactly once
    covered = set()
    for r in boundary_order[:p]:
        cyc = by_rep[r]
        if any(labels[h] == GHOST for h in cyc):
            raise IncomingNotBoundaryCycle(
                f"incoming cycle at {r} traverses a ghost edge"
            )
        for h in cyc:
            e = graph.edge_of(h)
            if e in covered:
                raise CircleNotDisjoint(f"circular edge {e} on two incoming cycles")
            covered.add(e)
    if len(covered) != sum(1 for e in graph.edges() if labels[e] == CIRCULAR):
        raise IncomingNotBoundaryCycle(
            "incoming cycles do not cover every circular edge"
        )
    if len(covered) != n_circ_vertices:
        # a circle with k vertices has k edges; mismatch means a stray cycle
        raise CircleNotDisjoint("circular subgraph is not a union of p circles")

    for cyc in cycles:
        if not any(labels[h] == CIRCULAR for h in cyc):
            raise NoCircularEdgeOnCycle(f"cycle at {cyc[0]} is all ghost")

    if markings is None:
        markings = tuple(
            next(h for h in by_rep[r] if labels[h] == CIRCULAR)
            for r in boundary_order
        )
    else:
        markings = tuple(markings)
        if len(markings) != len(boundary_order):
            raise BadMarking("one marking per boundary cycle expected")
        for r, m in zip(boundary_order, markings):
            if m not in by_rep[r] or labels[m] != CIRCULAR:
                raise BadMarking(f"marking {m} is not a circular occurrence on {r}")

    g, n_bnd = fg.topological_type(graph)
    q = n_bnd - p
    diagram = ChordDiagram(
        graph=graph, labels=labels, p=p, boundary_order=boundary_order,
        markings=markings,
    )
    return diagram, TopType(g, p, q)


# ---------------------------------------------------------------------------
# ghost collapse and multiplicities
# ---------------------------------------------------------------------------

def collapse_ghosts(c: ChordDiagram) -> CollapsedGraph:
    """Contract every ghost edge; circular edges biject with edges of S(c)."""
    graph, labels = c.graph, c.labels
    comp, _ = _ghost_components((graph, labels))

    circ = [h for h in range(graph.n_half_edges) if labels[h] == CIRCULAR]
    rank = {h: i for i, h in enumerate(circ)}
    half_map = tuple(rank.get(h, -1) for h in range(graph.n_half_edges))

    pairing = [rank[graph.pairing[h]] for h in circ]
    nxt = []
    for h in circ:
        # walk the boundary trace until the next circular half-edge; the ghost
        # forest guarantees this is the contraction of the whole ghost tree
        x = graph.next_at_vertex[h]
        while labels[x] == GHOST:
            x = graph.next_at_vertex[graph.pairing[x]]
        nxt.append(rank[x])

    s_graph = FatGraph(pairing=tuple(pairing), next_at_vertex=tuple(nxt))

    # S(c) vertex index: dense renumbering of components in vertex order
    order = []
    for v in range(graph.n_vertices):
        if comp[v] not in order:
            order.append(comp[v])
    remap = {cpt: i for i, cpt in enumerate(order)}
    projection = tuple(remap[comp[v]] for v in range(graph.n_vertices))
    return CollapsedGraph(s_graph=s_graph, projection=projection, half_edge_map=half_map)


def multiplicities(c: ChordDiagram) -> list[int]:
    """mu(v) for every vertex v of S(c): circular vertices collapsing to v."""
    graph, labels = c.graph, c.labels
    collapsed = collapse_ghosts(c)
    counts = [0] * (max(collapsed.projection) + 1)
    for v, orbit in enumerate(graph.vertices()):
        if any(labels[h] == CIRCULAR for h in orbit):
            counts[collapsed.projection[v]] += 1
    return counts


def multiplicity(c: ChordDiagram, v: int) -> int:
    return multiplicities(c)[v]


def chi_defect(c: ChordDiagram) -> int:
    """v(c) - sigma(c); always equals -chi of the underlying fat graph."""
    graph, labels = c.graph, c.labels
    comp, _ = _ghost_components((graph, labels))
    n_circ = sum(
        1 for orbit in graph.vertices() if any(labels[h] == CIRCULAR for h in orbit)
    )
    return n_circ - len(set(comp))


# ---------------------------------------------------------------------------
# moves
# ---------------------------------------------------------------------------

def is_essential(c: ChordDiagram, e: int) -> bool:
    """True iff no morphism may collapse the edge e.

    A circular edge is essential when it is a loop or when its endpoints lie
    in the same ghost component (collapsing it would close a ghost cycle); a
    ghost edge is essential when both endpoints are circular vertices
    (collapsing a chord would merge or pinch the disjoint incoming circles).
    """
    graph, labels = c.graph, c.labels
    e = graph.edge_of(e)
    vertex_of = graph.vertex_of()
    va, vb = vertex_of[e], vertex_of[graph.pairing[e]]
    if labels[e] == CIRCULAR:
        if va == vb:
            return True
        comp, _ = _ghost_components((graph, labels))
        return comp[va] == comp[vb]
    circ_vertex = [
        any(labels[h] == CIRCULAR for h in orbit) for orbit in graph.vertices()
    ]
    return circ_vertex[va] and circ_vertex[vb]


def _renumber(half_edges_kept: list[int]):
    new_id = {h: i for i, h in enumerate(half_edges_kept)}
    return new_id


def collapse_edge(c: ChordDiagram, e: int) -> ChordDiagram:
    """Contract a single non-essential, non-loop edge.

    Markings on the collapsed edge are transported to the next surviving
    circular half-edge in their boundary cycle.  The topological type is
    preserved.
    """
    graph, labels = c.graph, c.labels
    a = graph.edge_of(e)
    b = graph.pairing[a]
    vertex_of = graph.vertex_of()
    if vertex_of[a] == vertex_of[b]:
        raise LoopEdge(f"edge {a} is a loop")
    if is_essential(c, a):
        raise EssentialEdge(f"edge {a} is essential")

    verts = graph.vertices()
    rot_a = list(verts[vertex_of[a]])
    rot_b = list(verts[vertex_of[b]])
    ia, ib = rot_a.index(a), rot_b.index(b)
    merged = rot_a[ia + 1:] + rot_a[:ia] + rot_b[ib + 1:] + rot_b[:ib]

    kept = [h for h in range(graph.n_half_edges) if h not in (a, b)]
    new_id = _renumber(kept)
    new_vertex_lists = []
    for v, orbit in enumerate(verts):
        if v == vertex_of[a]:
            new_vertex_lists.append([new_id[h] for h in merged])
        elif v != vertex_of[b]:
            new_vertex_lists.append([new_id[h] for h in orbit])
    new_pairing = [0] * len(kept)
    for h in kept:
        new_pairing[new_id[h]] = new_id[graph.pairing[h]]
    new_labels = tuple(labels[h] for h in kept)
    new_graph = fg.validate(new_pairing, new_vertex_lists)

    # boundary cycles survive edge contraction with the occurrences of a and b
    # dropped; transport order and markings along that correspondence
    old_by_rep = {cyc[0]: cyc for cyc in _cycles(graph)}
    new_cycle_of = _cycle_of_map(new_graph)
    new_order, new_marks = [], []
    for r, m in zip(c.boundary_order, c.markings):
        cyc = old_by_rep[r]
        if m in (a, b):
            i = cyc.index(m)
            rotated = cyc[i:] + cyc[:i]
            m = next(
                (h for h in rotated if h not in (a, b) and labels[h] == CIRCULAR),
                None,
            )
            if m is None:
                raise NoCircularEdgeOnCycle(f"cycle at {r} loses its last marking")
        new_order.append(new_cycle_of[new_id[m]])
        new_marks.append(new_id[m])

    result, top = validate_chord(new_graph, new_labels, c.p, new_order, new_marks)
    if top != c.top_type():
        raise ChordLabError(f"collapse changed the type to {top}")  # unreachable
    return result


def _expansion_candidates(c: ChordDiagram):
    """All (vertex index, arc1, arc2, label) single-vertex splits to try."""
    for orbit in c.graph.vertices():
        d = len(orbit)
        if d < 4:
            continue
        seen = set()
        doubled = orbit + orbit
        for i in range(d):
            for l1 in range(2, d - 1):
                arc1 = tuple(doubled[i: i + l1])
                arc2 = tuple(doubled[i + l1: i + d])
                key = frozenset((arc1, arc2))
                if key in seen:
                    continue
                seen.add(key)
                for label in (CIRCULAR, GHOST):
                    yield orbit, arc1, arc2, label


def apply_expansion(
    c: ChordDiagram, arc1, arc2, label: str
) -> ChordDiagram | None:
    """Split one vertex along two cyclically contiguous arcs, joined by a new
    edge with the given label.  Returns None when the split does not validate
    to a diagram of the same type."""
    graph, labels = c.graph, c.labels
    n = graph.n_half_edges
    n1, n2 = n, n + 1
    vertex_of = graph.vertex_of()
    v = vertex_of[arc1[0]]

    new_vertex_lists = []
    for w, orbit in enumerate(graph.vertices()):
        if w == v:
            new_vertex_lists.append(list(arc1) + [n1])
            new_vertex_lists.append(list(arc2) + [n2])
        else:
            new_vertex_lists.append(list(orbit))
    new_pairing = list(graph.pairing) + [n2, n1]
    new_labels = labels + (label, label)

    try:
        new_graph = fg.validate(new_pairing, new_vertex_lists)
    except ChordLabError:
        return None

    # transport boundary order/markings: every old half-edge survives, so each
    # old cycle maps to the new cycle containing its marking
    new_cycle_of = _cycle_of_map(new_graph)
    new_order = [new_cycle_of[m] for m in c.markings]
    if len(set(new_order)) != len(new_order) or len(new_order) != len(
        _cycles(new_graph)
    ):
        return None
    try:
        result, top = validate_chord(
            new_graph, new_labels, c.p, new_order, c.markings
        )
    except ChordLabError:
        return None
    if top != c.top_type():
        return None
    return result


def expansions(c: ChordDiagram, check_inverse: bool = False) -> list[ChordDiagram]:
    """Every diagram obtained by one valid type-preserving vertex split.

    With ``check_inverse`` the (guaranteed-by-construction) round trip through
    collapse_edge is verified explicitly.
    """
    out = []
    for _orbit, arc1, arc2, label in _expansion_candidates(c):
        d = apply_expansion(c, arc1, arc2, label)
        if d is None:
            continue
        if check_inverse:
            back = collapse_edge(d, d.graph.n_half_edges - 2)
            if diagram_code(back) != diagram_code(c):
                continue
        out.append(d)
    return out


def _code_colors(c: ChordDiagram, with_markings: bool) -> tuple:
    cycle_of = _cycle_of_map(c.graph)
    position = {r: i for i, r in enumerate(c.boundary_order)}
    marked = set(c.markings) if with_markings else set()
    return tuple(
        (c.labels[h], position[cycle_of[h]], h in marked)
        for h in range(c.graph.n_half_edges)
    )


def diagram_code(c: ChordDiagram, with_markings: bool = False) -> bytes:
    """Canonical code of the decorated graph.

    Decorations used as colors: the C/G label of each half-edge and the
    position of its boundary cycle in the boundary order (which encodes the
    incoming designation).  Markings are excluded by default, matching the
    reduction of connectivity questions to the unmarked space.
    """
    return fg.canonical_code(c.graph, _code_colors(c, with_markings))


def canonical_form(c: ChordDiagram) -> ChordDiagram:
    """Relabel c by the canonical labeling of its unmarked decorated graph.

    Every diagram in an (unmarked) isomorphism class maps to the same
    pairing, rotation, label tables and boundary order; markings land
    wherever the relabeling sends them.
    """
    return canonical_form_with_map(c)[0]


def canonical_form_with_map(c: ChordDiagram) -> tuple[ChordDiagram, tuple[int, ...]]:
    """canonical_form plus the relabeling (old half-edge -> new label)."""
    label = fg.canonical_labeling(c.graph, _code_colors(c, False))
    n = c.graph.n_half_edges
    inv = [0] * n
    for h, l in enumerate(label):
        inv[l] = h
    pairing = [label[c.graph.pairing[inv[l]]] for l in range(n)]
    nxt = [label[c.graph.next_at_vertex[inv[l]]] for l in range(n)]
    graph = FatGraph(pairing=tuple(pairing), next_at_vertex=tuple(nxt))
    labels = tuple(c.labels[inv[l]] for l in range(n))

    cycle_of = _cycle_of_map(graph)
    order = [cycle_of[label[m]] for m in c.markings]
    marks = [label[m] for m in c.markings]
    result, _ = validate_chord(graph, labels, c.p, order, marks)
    return result, label


# ---------------------------------------------------------------------------
# the canonical base-point diagram
# ---------------------------------------------------------------------------

def canonical_gamma0(g: int, p: int, q: int) -> ChordDiagram:
    """The base-point diagram of type (g; p, q).

    One big incoming circle carries the distinguished vertex v0 (the only
    vertex allowed more than three half-edges); p-1 one-vertex incoming
    circles hang off v0 by single ghost edges; q-1 outgoing boundaries are
    simple three-edge cycles through consecutive chords; genus comes from g
    crossed chord pairs.  The cylinder type (0;1,1) admits no diagram with
    trivalent vertices and is rejected.
    """
    if g < 0 or p < 1 or q < 1:
        raise UnrepresentableType(f"({g};{p},{q}) is not a chord-diagram type")
    if (g, p, q) == (0, 1, 1):
        raise UnrepresentableType(
            "(0;1,1): the cylinder needs a bivalent circle; handled directly "
            "as the identity operation"
        )

    n_chords = (q - 1) + 2 * g          # chords from v0 to the big circle
    counter = itertools.count()

    def half():
        return next(counter)

    pairing: dict[int, int] = {}
    labels: dict[int, str] = {}

    def edge(lbl):
        x, y = half(), half()
        pairing[x], pairing[y] = y, x
        labels[x] = labels[y] = lbl
        return x, y

    # big circle through v0 and one attachment vertex per chord; edge i joins
    # vertex i to vertex i+1, its forward half at i and back half at i+1
    n_big = 1 + n_chords
    fwd, bwd = [], []
    for _ in range(n_big):
        f, b = edge(CIRCULAR)
        fwd.append(f)
        bwd.append(b)

    chord_v0, chord_far = [], []
    for _ in range(n_chords):
        x, y = edge(GHOST)
        chord_v0.append(x)
        chord_far.append(y)

    loops, loop_chord_v0 = [], []
    for _ in range(p - 1):
        lf, lb = edge(CIRCULAR)          # one-vertex circle: a circular loop
        s_w, s_v0 = edge(GHOST)
        loops.append((lf, lb, s_w))
        loop_chord_v0.append(s_v0)

    # circle attachment slots, in circle order after v0:
    #   clean-outgoing chords 1..q-1, then per genus pair the crossed (M, P)
    circle_slots = list(range(q - 1))
    v0_ghosts = chord_v0[: q - 1]
    for j in range(g):
        m_ix = (q - 1) + 2 * j
        p_ix = m_ix + 1
        circle_slots += [m_ix, p_ix]
        v0_ghosts += [chord_v0[p_ix], chord_v0[m_ix]]   # crossed at v0
    v0_ghosts += loop_chord_v0

    vertex_lists = []
    # v0 = circle vertex 0: (back, fwd, ghosts...); edge i-1 arrives at vertex i
    vertex_lists.append([bwd[n_big - 1], fwd[0], *v0_ghosts])
    for i, slot in enumerate(circle_slots, start=1):
        vertex_lists.append([bwd[i - 1], fwd[i], chord_far[slot]])
    for lf, lb, s_w in loops:
        vertex_lists.append([lb, lf, s_w])

    n_half = next(counter)
    pairing_list = [pairing[h] for h in range(n_half)]
    label_list = [labels[h] for h in range(n_half)]
    graph = fg.validate(pairing_list, vertex_lists)

    cycle_of = _cycle_of_map(graph)
    order = [cycle_of[fwd[0]]]
    order += [cycle_of[lf] for lf, _, _ in loops]
    order += [cycle_of[chord_v0[k]] for k in range(q - 1)]
    rest = [cyc[0] for cyc in _cycles(graph) if cyc[0] not in set(order)]
    if len(rest) != 1 or len(order) + 1 != len(_cycles(graph)):
        raise ChordLabError(f"base-point construction broke for ({g};{p},{q})")
    order.append(rest[0])

    diagram, top = validate_chord(graph, label_list, p, order)
    if top != TopType(g, p, q):
        raise ChordLabError(
            f"base-point construction produced {top}, wanted ({g};{p},{q})"
        )
    return diagram


# ---------------------------------------------------------------------------
# gluing
# ---------------------------------------------------------------------------

def _rotate_to(seq, x):
    i = seq.index(x)
    return list(seq[i:]) + list(seq[:i])


def glue(c1: ChordDiagram, c2: ChordDiagram, schedule=None) -> ChordDiagram:
    """Glue the outgoing boundaries of c1 to the incoming circles of c2.

    The k-th outgoing cycle of c1 is identified with the k-th incoming circle
    of c2 using the markings; the circular vertices of that circle are planted
    on c1's cycle and every ghost edge and ghost vertex of c2 is imported
    unchanged.  By default all vertices of a circle subdivide the single
    marked circular edge of the matching outgoing cycle, laid out along the
    incoming circle's direction (so the two matched parameterizations run
    opposite ways around the glued curve, as orientations require); the
    result is a diagram of type (g1+g2+q-1; p, r).

    ``schedule``, if given, is one list per outgoing cycle of c1: for each
    circular vertex of c2's matching circle (in circle order from its
    marking) a non-decreasing occurrence index into that cycle's traversal
    from its marking, reversed.  A circular occurrence subdivides that edge;
    a ghost occurrence snaps the vertex onto the ghost edge's source vertex,
    which may fail validation (reported, never repaired).
    """
    q = c1.q
    if q != c2.p:
        raise ArityMismatch(f"c1 has {q} outgoing, c2 has {c2.p} incoming")

    g1 = c1.graph
    g2 = c2.graph
    n1 = g1.n_half_edges

    counter = itertools.count(n1)
    pairing = {h: g1.pairing[h] for h in range(n1)}
    labels = {h: c1.labels[h] for h in range(n1)}

    # mutable rotations, keyed by arbitrary vertex tokens
    rotations: dict[object, list[int]] = {
        ("c1", i): list(orbit) for i, orbit in enumerate(g1.vertices())
    }

    # import c2's ghost half-edges and all-ghost vertices
    ghost_map = {}
    for h in range(g2.n_half_edges):
        if c2.labels[h] == GHOST:
            ghost_map[h] = next(counter)
            labels[ghost_map[h]] = GHOST
    for h, new in ghost_map.items():
        pairing[new] = ghost_map[g2.pairing[h]]
    vertex_of2 = g2.vertex_of()
    for i, orbit in enumerate(g2.vertices()):
        if all(c2.labels[h] == GHOST for h in orbit):
            rotations[("c2", i)] = [ghost_map[h] for h in orbit]

    by_rep1 = {cyc[0]: cyc for cyc in _cycles(g1)}
    by_rep2 = {cyc[0]: cyc for cyc in _cycles(g2)}

    for k in range(q):
        out_rep = c1.boundary_order[c1.p + k]
        out_mark = c1.markings[c1.p + k]
        in_rep = c2.boundary_order[k]
        in_mark = c2.markings[k]

        circle = _rotate_to(by_rep2[in_rep], in_mark)   # c2 circle, forward
        m = len(circle)

        # ghost bundles: rotation at a circle vertex reads (back, fwd,
        # ghosts...), so rotating to start at the forward half exposes the
        # ghosts between it and the closing back half
        bundles = []
        for f_half in circle:
            rot = _rotate_to(g2.vertices()[vertex_of2[f_half]], f_half)
            bundles.append([ghost_map[h] for h in rot[1:-1]])

        # occurrence sequence of the outgoing cycle from its marking,
        # traversed against the boundary orientation (= along the incoming
        # circles of c1)
        out_cycle = _rotate_to(by_rep1[out_rep], out_mark)
        occurrences = [out_cycle[0]] + list(reversed(out_cycle[1:]))

        if schedule is None:
            positions = [0] * m
        else:
            if len(schedule) != q:
                raise InvalidSchedule("one position list per outgoing cycle")
            positions = list(schedule[k])
            if len(positions) != m:
                raise InvalidSchedule(
                    f"cycle {k}: {m} vertices expected, got {len(positions)}"
                )
            if any(
                not (0 <= x < len(occurrences)) for x in positions
            ) or any(a > b for a, b in zip(positions, positions[1:])):
                raise InvalidSchedule(
                    f"cycle {k}: positions must be non-decreasing occurrence "
                    f"indices below {len(occurrences)}"
                )

        groups: dict[int, list[int]] = {}
        for j, pos in enumerate(positions):
            groups.setdefault(pos, []).append(j)

        for pos in sorted(groups):
            js = groups[pos]
            occ = occurrences[pos]
            if labels[occ] == GHOST:
                # snap onto the source vertex of the oriented ghost edge
                target = next(
                    tok for tok, rot in rotations.items() if occ in rot
                )
                rot = rotations[target]
                at = rot.index(occ)
                insert = []
                for j in js:
                    insert.extend(bundles[j])
                rotations[target] = rot[: at + 1] + insert + rot[at + 1:]
                continue

            # subdivide the circular edge of occ: occ points against the
            # incoming direction, pairing(occ) along it
            r = occ
            y = pairing[r]
            chain = []
            for j in js:
                d_half, e_half = next(counter), next(counter)
                labels[d_half] = labels[e_half] = CIRCULAR
                rotations[("new", k, j)] = [d_half, e_half] + bundles[j]
                chain.append((d_half, e_half))
            prev = y
            for d_half, e_half in chain:
                pairing[prev] = d_half
                pairing[d_half] = prev
                prev = e_half
            pairing[prev] = r
            pairing[r] = prev

    # compact to dense arrays
    all_halves = sorted(pairing)
    new_id = {h: i for i, h in enumerate(all_halves)}
    pairing_list = [0] * len(all_halves)
    for h in all_halves:
        pairing_list[new_id[h]] = new_id[pairing[h]]
    label_list = [labels[h] for h in all_halves]
    vertex_lists = [[new_id[h] for h in rot] for rot in rotations.values()]

    try:
        graph = fg.validate(pairing_list, vertex_lists)
    except ChordLabError as exc:
        raise GlueValidationFailed(f"glued graph invalid: {exc}") from exc

    cycle_of = _cycle_of_map(graph)
    by_rep = {cyc[0]: cyc for cyc in _cycles(graph)}

    order, marks = [], []
    for i in range(c1.p):
        h = new_id[c1.markings[i]]
        order.append(cycle_of[h])
        marks.append(h)
    for j in range(c2.q):
        rep = c2.boundary_order[c2.p + j]
        cyc2 = _rotate_to(by_rep2[rep], c2.markings[c2.p + j])
        anchor = next(ghost_map[h] for h in cyc2 if c2.labels[h] == GHOST)
        h = new_id[anchor]
        rep_new = cycle_of[h]
        order.append(rep_new)
        cyc = _rotate_to(by_rep[rep_new], h)
        marks.append(next(x for x in cyc if label_list[x] == CIRCULAR))

    if len(set(order)) != len(order) or len(order) != len(_cycles(graph)):
        raise GlueValidationFailed("boundary cycles of the glued graph do not "
                                   "match the expected incoming/outgoing split")

    try:
        result, top = validate_chord(graph, label_list, c1.p, order, marks)
    except ChordLabError as exc:
        raise GlueValidationFailed(str(exc)) from exc

    t1, t2 = c1.top_type(), c2.top_type()
    expected = TopType(t1.genus + t2.genus + q - 1, t1.p, t2.q)
    if top != expected:
        raise GlueValidationFailed(f"glued type {top}, expected {expected}")
    return result
