"""CLI: subcommands, exit codes, JSON output, DOT emission."""

import json
import random

import pytest

from chordlab import chord as ch
from chordlab import cli, formats, generate
from chordlab.cli import emit_dot, main


@pytest.fixture
def gamma_file(tmp_path):
    def write(g, p, q, name=None):
        path = tmp_path / (name or f"g{g}{p}{q}.chord")
        path.write_text(formats.serialize(ch.canonical_gamma0(g, p, q)))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasicCommands:
    def test_type(self, capsys, gamma_file):
        code, out, _ = run(capsys, "type", gamma_file(1, 3, 3))
        assert code == 0
        assert out.strip() == "(1;3,3)"

    def test_type_json(self, capsys, gamma_file):
        code, out, _ = run(capsys, "type", gamma_file(0, 2, 1), "--json")
        assert code == 0
        assert json.loads(out) == {"type": "(0;2,1)"}

    def test_validate(self, capsys, gamma_file):
        code, out, _ = run(capsys, "validate", gamma_file(0, 1, 2))
        assert code == 0
        assert "(0;1,2)" in out

    def test_boundaries_cover_half_edges(self, capsys, gamma_file):
        path = gamma_file(1, 1, 1)
        code, out, _ = run(capsys, "boundaries", path, "--json")
        cycles = json.loads(out)["cycles"]
        d = formats.parse(open(path).read())
        assert sorted(h for cyc in cycles for h in cyc) == list(
            range(d.graph.n_half_edges))

    def test_code_and_iso(self, capsys, gamma_file, tmp_path):
        a = gamma_file(0, 2, 2, "a.chord")
        # a relabeled copy: canonical form of an expansion collapsed back
        d = ch.canonical_gamma0(0, 2, 2)
        x = ch.expansions(d)[0]
        back = ch.collapse_edge(x, x.graph.n_half_edges - 2)
        b = tmp_path / "b.chord"
        b.write_text(formats.serialize(back))
        code, out, _ = run(capsys, "iso", a, str(b))
        assert code == 0
        assert out.strip() == "isomorphic"
        code, out1, _ = run(capsys, "code", a)
        code, out2, _ = run(capsys, "code", str(b))
        assert out1 == out2

    def test_glue_figure_instance(self, capsys, gamma_file, tmp_path):
        a = gamma_file(0, 1, 2)
        b = gamma_file(0, 2, 2)
        out_path = tmp_path / "glued.chord"
        code, _, _ = run(capsys, "glue", a, b, "-o", str(out_path))
        assert code == 0
        glued = formats.parse(out_path.read_text())
        assert str(glued.top_type()) == "(1;1,2)"

    def test_gamma0_command(self, capsys, tmp_path):
        out_path = tmp_path / "g.chord"
        code, _, _ = run(capsys, "gamma0", "1", "1", "2", "-o", str(out_path))
        assert code == 0
        assert formats.parse(out_path.read_text()).top_type().genus == 1


class TestExitCodes:
    def test_domain_error_is_one(self, capsys, tmp_path):
        bad = tmp_path / "bad.fatgraph"
        bad.write_text("fatgraph v1\npair 0 0\nvertex 0 0\n")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 1
        assert "chordlab:" in err

    def test_missing_file_is_one(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent/x")
        assert code == 1

    def test_usage_error_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["type"])
        assert exc.value.code == 2

    def test_color_disabled_by_env(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("CHORDLAB_COLOR", "never")
        bad = tmp_path / "bad.fatgraph"
        bad.write_text("fatgraph v1\npair 0 0\nvertex 0 0\n")
        _, _, err = run(capsys, "validate", str(bad))
        assert "\x1b[" not in err


class TestConnect:
    def test_connect_json_and_report(self, capsys, tmp_path):
        report_path = tmp_path / "report.json"
        code, out, _ = run(capsys, "connect", "--type", "1,1,1",
                           "--max-edges", "8", "--json",
                           "--report", str(report_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["components"] == 1
        on_disk = json.loads(report_path.read_text())
        assert on_disk["classes"] == payload["classes"]


class TestTqftCommands:
    def test_op_json(self, capsys):
        code, out, _ = run(capsys, "tqft", "op", "--algebra", "pd2",
                           "--p", "1", "--q", "1", "--g", "1", "--json")
        assert code == 0
        assert json.loads(out)["matrix"] == [["0", "0"], ["2", "0"]]

    def test_verify_exit_zero(self, capsys):
        code, out, _ = run(capsys, "tqft", "verify", "--algebra", "st2",
                           "--field", "F2", "--range", "2,2,2,1,1")
        assert code == 0

    def test_counit(self, capsys):
        code, out, _ = run(capsys, "tqft", "counit", "--algebra", "st2")
        assert code == 0
        assert "no counit" in out

    def test_axioms(self, capsys):
        code, out, _ = run(capsys, "tqft", "axioms", "--algebra", "pd2",
                           "--json")
        assert code == 0
        assert json.loads(out)["all_pass"]


class TestDot:
    def test_counts_match(self, capsys):
        d = ch.canonical_gamma0(1, 2, 2)
        dot = emit_dot(d)
        assert dot.count("label=\"v") == d.graph.n_vertices
        assert dot.count(" -- ") == d.graph.n_edges

    def test_styles_and_clusters(self):
        d = ch.canonical_gamma0(0, 1, 2)
        dot = emit_dot(d)
        assert dot.count("subgraph cluster_in") == 1
        assert "style=bold" in dot      # ghost edges
        assert "style=solid" in dot     # circular edges

    def test_canon_flag_normalizes(self):
        d = ch.canonical_gamma0(0, 2, 2)
        x = ch.expansions(d)[0]
        relabeled = ch.collapse_edge(x, x.graph.n_half_edges - 2)
        assert emit_dot(d) != emit_dot(relabeled) or d == relabeled
        assert emit_dot(d, canon=True) == emit_dot(relabeled, canon=True)

    def test_deterministic(self):
        rng = random.Random(4)
        d = generate.random_diagram(rng, 1, 1, 2)
        assert emit_dot(d) == emit_dot(d)

    def test_dot_command(self, capsys, tmp_path):
        path = tmp_path / "d.chord"
        path.write_text(formats.serialize(ch.canonical_gamma0(0, 1, 2)))
        code, out, _ = run(capsys, "dot", str(path), "--canon")
        assert code == 0
        assert out.startswith("graph chord {")
