"""Move graph: neighbors, exhaustive exploration, path extraction."""

import json
import random

import pytest

from chordlab import chord as ch
from chordlab import generate, moves
from chordlab.errors import BoundTooSmall, SearchExhausted, UnrepresentableType
from chordlab.fatgraph import TopType


class TestNeighbors:
    def test_rigid_diagram_has_no_neighbors(self):
        # the one class of type (0;1,2): every edge essential, all vertices
        # trivalent
        d = ch.canonical_gamma0(0, 1, 2)
        assert moves.neighbors(d) == []

    def test_symmetry(self):
        d = ch.canonical_form(ch.canonical_gamma0(1, 1, 2))
        code = ch.diagram_code(d)
        for n in moves.neighbors(d):
            back_codes = {ch.diagram_code(x) for x in moves.neighbors(n)}
            assert code in back_codes

    def test_deduplicated(self):
        d = ch.canonical_gamma0(1, 1, 1)
        out = moves.neighbors(d)
        codes = [ch.diagram_code(x) for x in out]
        assert len(codes) == len(set(codes))

    def test_apply_move_round_trip(self):
        d = ch.canonical_form(ch.canonical_gamma0(0, 2, 2))
        for code, rep, fwd, inv in moves.neighbors_with_moves(d):
            stepped = ch.canonical_form(moves.apply_move(d, fwd))
            assert ch.diagram_code(stepped) == code
            back = ch.canonical_form(moves.apply_move(rep, inv))
            assert ch.diagram_code(back) == ch.diagram_code(d)


class TestExplore:
    @pytest.mark.parametrize("top", [(0, 1, 2), (0, 2, 1), (1, 1, 1)])
    def test_small_types_connected(self, top):
        g0 = ch.canonical_gamma0(*top)
        report = moves.explore(TopType(*top), g0.graph.n_edges + 4)
        assert report.component_count == 1
        assert report.unreached == []
        assert report.class_count >= 1

    def test_agrees_with_direct_enumeration(self):
        top = TopType(0, 2, 2)
        bound = ch.canonical_gamma0(0, 2, 2).graph.n_edges + 3
        report = moves.explore(top, bound)
        universe = generate.enumerate_classes(top, bound)
        assert report.class_count == len(universe)
        assert set(report.witness_paths) | set(report.unreached) == set(universe)

    def test_witness_paths_replay(self):
        top = TopType(1, 1, 1)
        bound = ch.canonical_gamma0(1, 1, 1).graph.n_edges + 4
        report = moves.explore(top, bound)
        g0_code = ch.diagram_code(ch.canonical_form(ch.canonical_gamma0(1, 1, 1)))
        universe = generate.enumerate_classes(top, bound)
        for code, path in report.witness_paths.items():
            d = universe[code]
            for move in path:
                d = ch.canonical_form(moves.apply_move(d, move))
            assert ch.diagram_code(d) == g0_code

    def test_deterministic_across_workers(self):
        top = TopType(0, 2, 2)
        r1 = moves.explore(top, 8, jobs=1)
        r2 = moves.explore(top, 8, jobs=2)
        assert json.dumps(r1.to_json_dict(), sort_keys=True) == json.dumps(
            r2.to_json_dict(), sort_keys=True)

    def test_bound_too_small(self):
        with pytest.raises(BoundTooSmall):
            moves.explore(TopType(1, 1, 1), 3)

    def test_unrepresentable_type(self):
        with pytest.raises(UnrepresentableType):
            moves.explore(TopType(0, 1, 1), 10)


class TestPathToCanonical:
    def test_base_point_gives_empty_path(self):
        assert moves.path_to_canonical(ch.canonical_gamma0(1, 1, 1)) == []

    def test_round_trip_from_expansion(self):
        d = ch.canonical_gamma0(1, 1, 2)
        for x in ch.expansions(d)[:4]:
            path = moves.path_to_canonical(x)
            assert len(path) >= 1

    def test_random_diagrams(self):
        rng = random.Random(9)
        for _ in range(5):
            d = generate.random_diagram(rng, 1, 1, 2, steps=rng.randint(1, 3))
            replay = ch.canonical_form(d)
            for move in moves.path_to_canonical(d):
                replay = ch.canonical_form(moves.apply_move(replay, move))
            goal = ch.canonical_form(ch.canonical_gamma0(1, 1, 2))
            assert ch.diagram_code(replay) == ch.diagram_code(goal)

    def test_search_exhausted_reports_frontier(self):
        exc = SearchExhausted("no path", frontier_size=7)
        assert exc.frontier_size == 7
