"""Text formats: canonical serialization, round trips, error locations, fuzz."""

import random
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from chordlab import chord as ch
from chordlab import formats, generate, tqft


FIXTURES = [
    "glue_left_0_1_2.chord",
    "glue_right_0_2_2.chord",
    "pd2.frob",
    "st2.frob",
]


def _fixture_text(name):
    return resources.files("chordlab.data").joinpath(name).read_text()


class TestRoundTrip:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixtures(self, name):
        text = _fixture_text(name)
        value = formats.parse(text)
        assert formats.serialize(value) == text
        assert formats.parse(formats.serialize(value)) == value

    def test_random_fatgraphs(self):
        rng = random.Random(1)
        for _ in range(60):
            G = generate.random_fatgraph(rng, max_edges=8)
            assert formats.parse(formats.serialize(G)) == G

    def test_random_diagrams(self):
        rng = random.Random(2)
        for _ in range(40):
            g, p, q = generate._SMALL_TYPES[rng.randrange(
                len(generate._SMALL_TYPES))]
            d = generate.random_diagram(rng, g, p, q)
            parsed = formats.parse(formats.serialize(d))
            assert parsed == d
            assert ch.diagram_code(parsed) == ch.diagram_code(d)

    def test_algebras(self):
        for maker in (tqft.pd2, tqft.st2, tqft.zero_coproduct_algebra):
            for field_ in (tqft.Rationals(), tqft.PrimeField(3)):
                A = maker(field_)
                assert formats.parse(formats.serialize(A)) == A

    def test_serialization_is_canonical(self):
        d = ch.canonical_gamma0(1, 2, 1)
        assert formats.serialize(d) == formats.serialize(
            formats.parse(formats.serialize(d)))


class TestErrors:
    def test_fixed_point_reported_with_line(self):
        with pytest.raises(formats.ValidationError) as err:
            formats.parse("fatgraph v1\npair 0 0\nvertex 0 0\n")
        assert err.value.line == 2

    def test_bad_header(self):
        with pytest.raises(formats.SyntaxError) as err:
            formats.parse("something else\n")
        assert err.value.line == 1

    def test_unknown_record(self):
        with pytest.raises(formats.SyntaxError) as err:
            formats.parse("chord v1\nwhatever 1 2\n")
        assert err.value.line == 2

    def test_missing_edge_label(self):
        text = (
            "chord v1\npair 0 1\npair 2 3\npair 4 5\n"
            "vertex 0 4 3\nvertex 1 2 5\n"
            "edge 0 C\nedge 2 C\nincoming 1\norder 0 1 3\n"
        )
        with pytest.raises(formats.ValidationError):
            formats.parse(text)

    def test_frob_without_field(self):
        with pytest.raises(formats.SyntaxError):
            formats.parse("frob v1\nbasis e\nunit 1\n")

    def test_frob_bad_prime(self):
        with pytest.raises(formats.ValidationError):
            formats.parse("frob v1\nfield Fp 6\nbasis e\nunit 1\n")

    def test_pd2_file_passes_axioms(self):
        A = formats.parse(_fixture_text("pd2.frob"))
        assert tqft.check_axioms(A).all_pass


_TOKENS = [
    "fatgraph", "chord", "frob", "v1", "pair", "vertex", "edge", "incoming",
    "order", "mark", "field", "Q", "Fp", "basis", "ambient", "unit", "m",
    "Delta", "->", "C", "G", "0", "1", "2", "7", "-3", "x", "1/2", "#", "\n",
]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(_TOKENS), max_size=30), st.booleans())
def test_fuzz_parser_never_crashes(tokens, join_lines):
    text = (" " if join_lines else "\n").join(tokens)
    try:
        formats.parse(text)
    except (formats.SyntaxError, formats.ValidationError):
        pass


@settings(max_examples=150, deadline=None)
@given(st.text(max_size=200))
def test_fuzz_arbitrary_text(text):
    try:
        formats.parse(text)
    except (formats.SyntaxError, formats.ValidationError):
        pass
