import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import graphs, maps
from xhomotopy import census
from xhomotopy import io as gio
from xhomotopy.cli import main
from xhomotopy.graph import Graph, family


I0 = {"vertices": ["0"], "edges": [["0", "0"]]}
K2 = {"vertices": ["1", "2"], "edges": [["1", "2"]]}
P3 = {"vertices": ["1", "2", "3"], "edges": [["1", "2"], ["2", "3"]]}
EDGE_IN_PATH = {"domain": K2, "codomain": P3, "assignment": {"1": "1", "2": "2"}}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParse:
    def test_looped_vertex(self):
        G = gio.parse_graph(I0)
        assert G == family("I", 0)

    def test_unknown_vertex_named(self):
        with pytest.raises(gio.DocumentError, match=r"edges\[0\].*'9'"):
            gio.parse_graph({"vertices": ["0"], "edges": [["0", "9"]]})

    def test_missing_field(self):
        with pytest.raises(gio.DocumentError, match="vertices"):
            gio.parse_graph({"edges": []})

    def test_duplicate_vertex(self):
        with pytest.raises(gio.DocumentError, match="duplicate"):
            gio.parse_graph({"vertices": ["a", "a"]})

    def test_non_string_vertex(self):
        with pytest.raises(gio.DocumentError, match=r"vertices\[1\]"):
            gio.parse_graph({"vertices": ["a", 3]})

    def test_map_breaking_edge_is_named(self):
        doc = {"domain": K2, "codomain": P3, "assignment": {"1": "1", "2": "3"}}
        with pytest.raises(gio.DocumentError) as exc:
            gio.parse_map(doc)
        assert "1" in str(exc.value) and "2" in str(exc.value)

    def test_partial_assignment(self):
        doc = {"domain": K2, "codomain": P3, "assignment": {"1": "1"}}
        with pytest.raises(gio.DocumentError):
            gio.parse_map(doc)

    def test_bad_json(self):
        with pytest.raises(gio.DocumentError):
            gio.load_document("{not json")

    def test_missing_file(self, tmp_path):
        with pytest.raises(gio.DocumentError):
            gio.load_document(str(tmp_path / "nope.json"))

    def test_file_references_relative_to_document(self, tmp_path):
        sub = tmp_path / "g"
        sub.mkdir()
        (sub / "k2.json").write_text(json.dumps(K2))
        (sub / "p3.json").write_text(json.dumps(P3))
        (tmp_path / "m.json").write_text(
            json.dumps({"domain": "g/k2.json", "codomain": "g/p3.json", "assignment": {"1": "1", "2": "2"}})
        )
        doc, base = gio.load_document(str(tmp_path / "m.json"))
        f = gio.parse_map(doc, base)
        assert f.codomain == family("P", 3)


class TestRoundTrip:
    def test_census_graphs(self):
        for G in census.graphs_up_to(4):
            assert gio.parse_graph(json.loads(gio.dumps(gio.serialize_graph(G)))) == G

    @given(graphs(max_size=4), graphs(max_size=4), st.data())
    def test_maps(self, A, B, data):
        f = data.draw(maps(A, B))
        if f is None:
            return
        assert gio.parse_map(json.loads(gio.dumps(gio.serialize_map(f)))) == f

    def test_labels_survive(self):
        G = Graph(["x10", "x2", "a"], [("x10", "x2"), ("a", "a")])
        assert gio.parse_graph(gio.serialize_graph(G)) == G


class TestCli:
    def test_core(self, capsys):
        code, out, _ = run(capsys, "core", json.dumps({"vertices": ["0", "1"], "edges": [["0", "0"], ["0", "1"]]}))
        assert code == 0
        assert json.loads(out)["core"]["vertices"] == ["0"]

    def test_false_verdict(self, capsys):
        code, out, _ = run(capsys, "hep", json.dumps(EDGE_IN_PATH))
        assert code == 1
        doc = json.loads(out)
        assert doc["verdict"] is False and doc["classification"] == "NoHEP"

    def test_true_verdict(self, capsys):
        ident = {"domain": P3, "codomain": P3, "assignment": {v: v for v in P3["vertices"]}}
        code, out, _ = run(capsys, "equiv", json.dumps(ident))
        assert code == 0 and json.loads(out)["verdict"] is True

    def test_bad_input(self, capsys):
        doc = {"domain": K2, "codomain": P3, "assignment": {"1": "1", "2": "3"}}
        code, _, err = run(capsys, "equiv", json.dumps(doc))
        assert code == 2 and "error" in err

    def test_precondition(self, capsys):
        c6 = {"vertices": [str(k) for k in range(6)], "edges": [[str(k), str((k + 1) % 6)] for k in range(6)]}
        c3 = {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"], ["2", "0"]]}
        p = {"domain": c6, "codomain": c3, "assignment": {str(k): str(k % 3) for k in range(6)}}
        code, _, _ = run(capsys, "section", json.dumps(p))
        assert code == 2

    def test_guard(self, capsys):
        ident = {"domain": P3, "codomain": P3, "assignment": {v: v for v in P3["vertices"]}}
        code, _, err = run(capsys, "equiv", json.dumps(ident), "--cap", "2")
        assert code == 3 and "error" in err

    def test_cap_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("XHOMOTOPY_CAP", "2")
        ident = {"domain": P3, "codomain": P3, "assignment": {v: v for v in P3["vertices"]}}
        code, _, _ = run(capsys, "equiv", json.dumps(ident), "--cap", "1000")
        assert code == 0

    def test_pushout_and_out_file(self, capsys, tmp_path):
        out = tmp_path / "po.json"
        ident = {"domain": K2, "codomain": K2, "assignment": {"1": "1", "2": "2"}}
        code, _, _ = run(capsys, "pushout", json.dumps(ident), json.dumps(EDGE_IN_PATH), "--out", out)
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["object"]["vertices"]) == 3

    def test_quotient(self, capsys):
        code, out, _ = run(capsys, "quotient", json.dumps(P3), json.dumps([["1", "3"], ["2"]]))
        assert code == 0
        assert sorted(json.loads(out)["graph"]["vertices"]) == ["[1,3]", "[2]"]

    def test_lift(self, capsys):
        k2_id = {"domain": K2, "codomain": K2, "assignment": {"1": "1", "2": "2"}}
        p3_id = {"domain": P3, "codomain": P3, "assignment": {v: v for v in P3["vertices"]}}
        square = {"left": EDGE_IN_PATH, "top": EDGE_IN_PATH, "bottom": p3_id, "right": p3_id}
        code, out, _ = run(capsys, "lift", json.dumps(square))
        assert code == 0 and json.loads(out)["lift"]["assignment"] == {"1": "1", "2": "2", "3": "3"}
        square = {"left": EDGE_IN_PATH, "top": k2_id, "bottom": p3_id, "right": EDGE_IN_PATH}
        code, _, _ = run(capsys, "lift", json.dumps(square))
        assert code == 1

    def test_classify_f_with_oracle(self, capsys):
        code, out, _ = run(capsys, "classify-f", json.dumps(EDGE_IN_PATH), "--rlp-cap", "2", "--witness")
        doc = json.loads(out)
        assert code == 1 and doc["rlp_against_unfolds"] is False and "failing_square" in doc

    def test_file_argument(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(P3))
        code, out, _ = run(capsys, "core", path)
        assert code == 0 and len(json.loads(out)["core"]["vertices"]) == 2
