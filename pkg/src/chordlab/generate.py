"""Generators: random fat graphs, random chord diagrams, gluable pairs,
and exhaustive enumeration of all chord-diagram classes of a type.

The exhaustive enumerator is independent of the move machinery (it builds
candidates from circle compositions, labeled ghost forests and rotation
choices), so it can serve as an oracle for move-graph searches.
"""

from __future__ import annotations

import itertools
import random

from . import chord as ch
from . import fatgraph as fg
from .chord import CIRCULAR, GHOST, ChordDiagram
from .errors import ChordLabError
from .fatgraph import TopType

__all__ = [
    "random_fatgraph",
    "random_diagram",
    "random_gluable_pair",
    "enumerate_classes",
]


# ---------------------------------------------------------------------------
# random fat graphs
# ---------------------------------------------------------------------------

def _random_composition(rng: random.Random, total: int, min_part: int) -> list[int]:
    """Random composition of total into parts >= min_part (greedy)."""
    parts = []
    left = total
    while left >= 2 * min_part:
        hi = left - min_part
        parts.append(rng.randint(min_part, hi))
        left -= parts[-1]
    if left:
        if left >= min_part:
            parts.append(left)
        elif parts:
            parts[-1] += left
    return parts


def random_fatgraph(rng: random.Random, max_edges: int = 12) -> fg.FatGraph:
    """A uniform-ish random connected fat graph with valence >= 3."""
    while True:
        n_edges = rng.randint(2, max_edges)
        n = 2 * n_edges
        halves = list(range(n))
        rng.shuffle(halves)
        sizes = _random_composition(rng, n, 3)
        vertex_lists, at = [], 0
        for s in sizes:
            vertex_lists.append(halves[at: at + s])
            at += s
        matching = list(range(n))
        rng.shuffle(matching)
        pairing = [0] * n
        for i in range(0, n, 2):
            a, b = matching[i], matching[i + 1]
            pairing[a], pairing[b] = b, a
        try:
            return fg.validate(pairing, vertex_lists)
        except ChordLabError:
            continue


# ---------------------------------------------------------------------------
# random chord diagrams and gluable pairs
# ---------------------------------------------------------------------------

def random_diagram(
    rng: random.Random, g: int, p: int, q: int, steps: int | None = None
) -> ChordDiagram:
    """A random diagram of the given type: a random collapse/expansion walk
    starting at the base-point diagram."""
    c = ch.canonical_gamma0(g, p, q)
    if steps is None:
        steps = rng.randint(0, 4)
    for _ in range(steps):
        options: list[ChordDiagram] = []
        for e in c.graph.edges():
            if not ch.is_essential(c, e):
                va = c.graph.vertex_of()[e]
                vb = c.graph.vertex_of()[c.graph.pairing[e]]
                if va != vb:
                    options.append(ch.collapse_edge(c, e))
        options.extend(ch.expansions(c))
        if not options:
            break
        c = options[rng.randrange(len(options))]
    return c


_SMALL_TYPES = [
    (g, p, q)
    for g in range(3)
    for p in range(1, 4)
    for q in range(1, 4)
    if (g, p, q) != (0, 1, 1)
]


def random_gluable_pair(rng: random.Random) -> tuple[ChordDiagram, ChordDiagram]:
    """Two random diagrams with matching arity (q of the first = p of the
    second), both small enough to glue quickly."""
    g1, p1, q1 = _SMALL_TYPES[rng.randrange(len(_SMALL_TYPES))]
    matches = [t for t in _SMALL_TYPES if t[1] == q1]
    g2, p2, q2 = matches[rng.randrange(len(matches))]
    c1 = random_diagram(rng, g1, p1, q1, steps=rng.randint(0, 2))
    c2 = random_diagram(rng, g2, p2, q2, steps=rng.randint(0, 2))
    return c1, c2


# ---------------------------------------------------------------------------
# exhaustive enumeration of one type within an edge bound
# ---------------------------------------------------------------------------

def _compositions(total: int, parts: int):
    """All ordered compositions of total into `parts` positive parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _ghost_forests(n_circ: int, n_int: int, n_edges: int):
    """All simple forests with n_edges edges on vertices 0..n_circ+n_int-1
    (the last n_int internal) such that every circular vertex has degree >= 1,
    every internal vertex degree >= 3, and no component is all-internal."""
    nv = n_circ + n_int
    pairs = [(a, b) for a in range(nv) for b in range(a + 1, nv)]
    deg = [0] * nv
    parent = list(range(nv))
    has_circ = [v < n_circ for v in range(nv)]

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    out = []

    def need(i):
        # minimum edges still required by unmet degree lower bounds
        lack = sum(max(0, 1 - deg[v]) for v in range(n_circ))
        lack3 = sum(max(0, 3 - deg[v]) for v in range(n_circ, nv))
        return (lack + lack3 + 1) // 2

    def rec(i, chosen):
        left = n_edges - len(chosen)
        if left == 0:
            if all(deg[v] >= 1 for v in range(n_circ)) and all(
                deg[v] >= 3 for v in range(n_circ, nv)
            ) and all(has_circ[find(v)] for v in range(nv)):
                out.append(tuple(chosen))
            return
        if i >= len(pairs) or len(pairs) - i < left or need(i) > left:
            return
        a, b = pairs[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            # include pairs[i]
            old_parent, old_flag = parent[ra], has_circ[rb]
            parent[ra] = rb
            has_circ[rb] = has_circ[rb] or has_circ[ra]
            deg[a] += 1
            deg[b] += 1
            chosen.append((a, b))
            rec(i + 1, chosen)
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
            parent[ra] = old_parent
            has_circ[rb] = old_flag
        rec(i + 1, chosen)

    rec(0, [])
    return out


def _diagram_candidates(g, p, q, comp, forest, n_int):
    """Build every rotation assignment for one circle composition + forest."""
    n_circ = sum(comp)
    nv = n_circ + n_int

    # half-edge layout: circle halves first, then ghost halves per forest edge
    fwd = [2 * i for i in range(n_circ)]
    bwd = [2 * i + 1 for i in range(n_circ)]
    base = 2 * n_circ
    stubs: list[list[int]] = [[] for _ in range(nv)]
    pairing = [0] * (base + 2 * len(forest))
    labels = [CIRCULAR] * base + [GHOST] * (2 * len(forest))
    for j, (a, b) in enumerate(forest):
        x, y = base + 2 * j, base + 2 * j + 1
        pairing[x], pairing[y] = y, x
        stubs[a].append(x)
        stubs[b].append(y)

    # circle i occupies vertices block_start..block_start+k-1; edge j of the
    # circle joins vertex j to vertex j+1 (mod k), forward half at j
    vertex_circ: list[tuple[int, int]] = []
    at = 0
    circle_reps = []
    for k in comp:
        for j in range(k):
            v = at + j
            f, b = fwd[v], bwd[at + (j + 1) % k]
            pairing[f], pairing[b] = b, f
            vertex_circ.append((bwd[v], fwd[v]))
        circle_reps.append(min(fwd[at + j] for j in range(k)))
        at += k

    per_vertex = []
    for v in range(nv):
        if v < n_circ:
            per_vertex.append([list(s) for s in itertools.permutations(stubs[v])])
        else:
            first, rest = stubs[v][0], stubs[v][1:]
            per_vertex.append(
                [[first] + list(s) for s in itertools.permutations(rest)]
            )

    for choice in itertools.product(*per_vertex):
        vertex_lists = []
        for v in range(nv):
            if v < n_circ:
                b, f = vertex_circ[v]
                vertex_lists.append([b, f] + choice[v])
            else:
                vertex_lists.append(list(choice[v]))
        try:
            graph = fg.validate(list(pairing), vertex_lists)
        except ChordLabError:
            continue
        cycles = fg.boundary_cycles(graph)
        if len(cycles) != p + q:
            continue
        reps = {cyc[0] for cyc in cycles}
        # the vertex-j forward half leads the circle's boundary cycle
        in_order = []
        ok = True
        for r in circle_reps:
            if r not in reps:
                ok = False
                break
            in_order.append(r)
        if not ok:
            continue
        rest_reps = sorted(reps - set(in_order))
        for perm in itertools.permutations(rest_reps):
            try:
                d, top = ch.validate_chord(
                    graph, labels, p, in_order + list(perm)
                )
            except ChordLabError:
                continue
            if top == TopType(g, p, q):
                yield d


def enumerate_classes(
    top: TopType, edge_bound: int
) -> dict[bytes, ChordDiagram]:
    """All isomorphism classes of chord diagrams of the given type with at
    most edge_bound edges, keyed by unmarked diagram code.

    For a type (g;p,q), every diagram satisfies E = V + (2g+p+q-2) where V is
    the total vertex count, and the ghost forest has exactly
    V_circ - (2g+p+q-2) components; these identities drive the enumeration.
    """
    g, p, q = top.genus, top.p, top.q
    const = 2 * g + p + q - 2
    classes: dict[bytes, ChordDiagram] = {}
    for n_circ in range(max(p, const + 1), edge_bound - const + 1):
        sigma = n_circ - const
        for n_int in range(0, edge_bound - const - n_circ + 1):
            n_ghost = n_circ + n_int - sigma
            if 2 * n_ghost < n_circ + 3 * n_int:
                continue
            for comp in _compositions(n_circ, p):
                for forest in _ghost_forests(n_circ, n_int, n_ghost):
                    for d in _diagram_candidates(g, p, q, comp, forest, n_int):
                        code = ch.diagram_code(d)
                        if code not in classes:
                            classes[code] = ch.canonical_form(d)
    return classes
