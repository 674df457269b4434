"""The collapse/expansion move graph on isomorphism classes of chord diagrams.

Classes are keyed by the unmarked diagram code and represented by their
canonically relabeled diagram, so every move in a recorded path refers to
half-edge ids of the canonical representative at that step; replaying a path
means alternating apply_move and canonical_form.

explore() verifies, at desk scale, that all classes of a type within an edge
bound form a single move-connected component, cross-checking the breadth-first
search against an independent exhaustive enumeration of the classes.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass

from . import chord as ch
from . import generate
from .chord import ChordDiagram
from .errors import BoundTooSmall, ChordLabError, SearchExhausted
from .fatgraph import TopType

__all__ = [
    "MoveGraphReport",
    "Move",
    "apply_move",
    "neighbors",
    "explore",
    "path_to_canonical",
]

# A move is ("collapse", edge) or ("expand", arc1, arc2, label); half-edge ids
# refer to the diagram the move is applied to.
Move = tuple


def apply_move(c: ChordDiagram, move: Move) -> ChordDiagram:
    if move[0] == "collapse":
        return ch.collapse_edge(c, move[1])
    if move[0] == "expand":
        d = ch.apply_expansion(c, move[1], move[2], move[3])
        if d is None:
            raise ChordLabError(f"recorded expansion {move} no longer applies")
        return d
    raise ChordLabError(f"unknown move {move!r}")


def _collapse_with_inverse(c: ChordDiagram, e: int):
    """Collapse e and derive the inverse expansion in the canonical labeling
    of the result."""
    graph = c.graph
    a = graph.edge_of(e)
    b = graph.pairing[a]
    vertex_of = graph.vertex_of()
    verts = graph.vertices()
    rot_a = list(verts[vertex_of[a]])
    rot_b = list(verts[vertex_of[b]])
    arc1 = rot_a[rot_a.index(a) + 1:] + rot_a[: rot_a.index(a)]
    arc2 = rot_b[rot_b.index(b) + 1:] + rot_b[: rot_b.index(b)]

    child = ch.collapse_edge(c, a)
    canon, label = ch.canonical_form_with_map(child)

    def new_id(h):
        return label[h - (h > a) - (h > b)]

    inverse = (
        "expand",
        tuple(new_id(h) for h in arc1),
        tuple(new_id(h) for h in arc2),
        c.labels[a],
    )
    return canon, inverse


def neighbors_with_moves(c: ChordDiagram, max_edges: int | None = None):
    """All move-graph neighbors of c (itself assumed canonical).

    Returns a code-sorted, deduplicated list of
    (code, canonical representative, forward move on c, inverse move on the
    representative).
    """
    found: dict[bytes, tuple] = {}
    vertex_of = c.graph.vertex_of()
    for e in c.graph.edges():
        if vertex_of[e] == vertex_of[c.graph.pairing[e]]:
            continue
        if ch.is_essential(c, e):
            continue
        canon, inverse = _collapse_with_inverse(c, e)
        code = ch.diagram_code(canon)
        if code not in found:
            found[code] = (code, canon, ("collapse", e), inverse)
    if max_edges is None or c.graph.n_edges < max_edges:
        for _orbit, arc1, arc2, lbl in ch._expansion_candidates(c):
            d = ch.apply_expansion(c, arc1, arc2, lbl)
            if d is None:
                continue
            canon, label = ch.canonical_form_with_map(d)
            code = ch.diagram_code(canon)
            if code not in found:
                n = d.graph.n_half_edges
                inverse = ("collapse", min(label[n - 2], label[n - 1]))
                found[code] = (code, canon, ("expand", arc1, arc2, lbl), inverse)
    return [found[k] for k in sorted(found)]


def neighbors(c: ChordDiagram) -> list[ChordDiagram]:
    """Deduplicated move-graph neighbors: single-edge collapses plus
    single-vertex expansions."""
    canon = ch.canonical_form(c)
    return [rep for _code, rep, _fwd, _inv in neighbors_with_moves(canon)]


@dataclass
class MoveGraphReport:
    top_type: TopType
    edge_bound: int
    class_count: int
    component_count: int
    witness_paths: dict[bytes, list[Move]]   # class code -> moves to Γ₀'s class
    unreached: list[bytes]

    def to_json_dict(self) -> dict:
        return {
            "type": str(self.top_type),
            "bound": self.edge_bound,
            "classes": self.class_count,
            "components": self.component_count,
            "unreached": [code.decode("ascii") for code in self.unreached],
            "witness_lengths": {
                code.decode("ascii"): len(path)
                for code, path in sorted(self.witness_paths.items())
            },
        }


def _expand_one(args):
    rep, max_edges = args
    return neighbors_with_moves(rep, max_edges)


def _bfs(start: ChordDiagram, max_edges: int, jobs: int = 1):
    """Breadth-first search over classes; returns code -> (rep, parent, inv)."""
    start_code = ch.diagram_code(start)
    info: dict[bytes, tuple] = {start_code: (start, None, None)}
    frontier = [start_code]
    pool = None
    if jobs > 1:
        pool = concurrent.futures.ProcessPoolExecutor(max_workers=jobs)
    try:
        while frontier:
            reps = [(info[code][0], max_edges) for code in frontier]
            if pool is not None:
                results = list(pool.map(_expand_one, reps, chunksize=4))
            else:
                results = [_expand_one(r) for r in reps]
            next_frontier = []
            for parent_code, neigh in zip(frontier, results):
                for code, rep, _fwd, inv in neigh:
                    if code not in info:
                        info[code] = (rep, parent_code, inv)
                        next_frontier.append(code)
            frontier = sorted(next_frontier)
    finally:
        if pool is not None:
            pool.shutdown()
    return info


def explore(top: TopType, edge_bound: int, jobs: int = 1) -> MoveGraphReport:
    """Search the move graph of one type, bounded by edge count.

    Starts at the base-point diagram, discovers classes by breadth-first
    search, independently enumerates every class of the type within the
    bound, and reports the classes the search did not reach.  Witness paths
    (move sequences back to the base point) are replay-verified.
    """
    g0 = ch.canonical_form(ch.canonical_gamma0(top.genus, top.p, top.q))
    if edge_bound < g0.graph.n_edges:
        raise BoundTooSmall(
            f"bound {edge_bound} below the {g0.graph.n_edges}-edge base point"
        )
    g0_code = ch.diagram_code(g0)

    info = _bfs(g0, edge_bound, jobs=jobs)
    universe = generate.enumerate_classes(top, edge_bound)
    stray = set(info) - set(universe)
    if stray:
        raise ChordLabError(
            f"search produced {len(stray)} classes outside the enumeration"
        )
    unreached = sorted(set(universe) - set(info))

    # unreached classes can only border other unreached classes (the move
    # graph is undirected), so count their components separately
    component_count = 1
    pending = set(unreached)
    while pending:
        component_count += 1
        seed = min(pending)
        stack = [seed]
        pending.discard(seed)
        while stack:
            code = stack.pop()
            for ncode, _rep, _fwd, _inv in neighbors_with_moves(
                universe[code], edge_bound
            ):
                if ncode in pending:
                    pending.discard(ncode)
                    stack.append(ncode)

    witness: dict[bytes, list[Move]] = {}

    def path_of(code):
        if code not in witness:
            _rep, parent, inv = info[code]
            witness[code] = [] if parent is None else [inv] + path_of(parent)
        return witness[code]

    for code in sorted(info):
        path = path_of(code)
        d = info[code][0]
        for move in path:
            d = ch.canonical_form(apply_move(d, move))
        if ch.diagram_code(d) != g0_code:
            raise ChordLabError(f"witness path for {code!r} does not replay")

    return MoveGraphReport(
        top_type=top,
        edge_bound=edge_bound,
        class_count=len(universe),
        component_count=component_count,
        witness_paths=witness,
        unreached=unreached,
    )


def path_to_canonical(c: ChordDiagram, slack: int = 4) -> list[Move]:
    """A replay-verified move sequence from c to the base-point diagram of
    its type, found by bidirectional search with edge ceiling
    edges(c) + slack.

    The returned moves are applied to canonical representatives: replay as
    d = canonical_form(apply_move(d, move)) starting from canonical_form(c).
    """
    top = c.top_type()
    start = ch.canonical_form(c)
    goal = ch.canonical_form(ch.canonical_gamma0(top.genus, top.p, top.q))
    start_code, goal_code = ch.diagram_code(start), ch.diagram_code(goal)
    ceiling = max(start.graph.n_edges, goal.graph.n_edges) + slack

    # side A grows from c recording forward moves (parent rep -> child);
    # side B grows from the base point recording inverse moves (child rep ->
    # parent), so a meeting class yields a full path without re-searching
    a_info: dict[bytes, tuple] = {start_code: (start, None, None)}
    b_info: dict[bytes, tuple] = {goal_code: (goal, None, None)}
    a_frontier, b_frontier = [start_code], [goal_code]

    def meet_code():
        common = set(a_info) & set(b_info)
        return min(common) if common else None

    meet = meet_code()
    while meet is None and (a_frontier or b_frontier):
        grow_a = bool(a_frontier) and (
            not b_frontier or len(a_frontier) <= len(b_frontier)
        )
        side, frontier = (
            (a_info, a_frontier) if grow_a else (b_info, b_frontier)
        )
        nxt = []
        for code in frontier:
            rep = side[code][0]
            for ncode, nrep, fwd, inv in neighbors_with_moves(rep, ceiling):
                if ncode not in side:
                    side[ncode] = (nrep, code, fwd if grow_a else inv)
                    nxt.append(ncode)
        if grow_a:
            a_frontier = sorted(nxt)
        else:
            b_frontier = sorted(nxt)
        meet = meet_code()

    if meet is None:
        raise SearchExhausted(
            f"no path within edge ceiling {ceiling}",
            frontier_size=len(a_frontier) + len(b_frontier),
        )

    # forward moves from the start down to the meeting class
    path = []
    code = meet
    while a_info[code][1] is not None:
        path.append(a_info[code][2])
        code = a_info[code][1]
    path.reverse()
    # inverse moves from the meeting class back to the base point
    code = meet
    while b_info[code][1] is not None:
        path.append(b_info[code][2])
        code = b_info[code][1]

    d = start
    for move in path:
        d = ch.canonical_form(apply_move(d, move))
    if ch.diagram_code(d) != goal_code:
        raise ChordLabError("path replay does not reach the base point")
    return path
