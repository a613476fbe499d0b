import json

import pytest

from latticestick.cli import main
from latticestick.fixtures import DEMOS
from latticestick.io import (
    DocumentError,
    embedding_from_document,
    spec_from_document,
)


def run(*argv):
    return main(list(argv))


def demo_paths(tmp_path, name):
    inp = tmp_path / f"{name}.json"
    out = tmp_path / f"{name}.emb.json"
    assert run("demo", "--name", name, "--output", str(inp)) == 0
    return inp, out


class TestDemo:
    def test_known_names(self, tmp_path):
        for name in ("unknot", "trefoil", "figure8", "theta-planar", "bouquet3", "theta-composite"):
            path = tmp_path / f"{name}.json"
            assert run("demo", "--name", name, "--output", str(path)) == 0
            spec_from_document(json.loads(path.read_text()))

    def test_unknown_name(self, tmp_path):
        assert run("demo", "--name", "granny", "--output", str(tmp_path / "x.json")) == 2


class TestBuild:
    def test_unknot_roundtrip(self, tmp_path, capsys):
        inp, out = demo_paths(tmp_path, "unknot")
        assert run("build", "--input", str(inp), "--output", str(out)) == 0
        printed = capsys.readouterr().out
        assert "total=4" in printed
        doc = json.loads(out.read_text())
        assert doc["counts"]["total"] == 4
        emb, counts = embedding_from_document(doc)
        assert counts.total == 4

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run("build", "--input", str(bad), "--output", str(tmp_path / "o.json")) == 2

    def test_unknown_key_rejected(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"components": [], "extra": 1}))
        assert run("build", "--input", str(bad), "--output", str(tmp_path / "o.json")) == 2

    def test_degree_seven_rejected(self, tmp_path, capsys):
        doc = {
            "components": [
                {
                    "id": "t7",
                    "binding_points": [
                        {"index": 1, "vertex": "v1"},
                        {"index": 2, "vertex": "v2"},
                    ],
                    "arcs": [{"page": p, "from": 1, "to": 2} for p in range(1, 8)],
                }
            ]
        }
        inp = tmp_path / "t7.json"
        inp.write_text(json.dumps(doc))
        assert run("build", "--input", str(inp), "--output", str(tmp_path / "o.json")) == 1
        assert "degree" in capsys.readouterr().err


class TestValidate:
    def test_build_then_validate(self, tmp_path):
        for name in DEMOS:
            inp, out = demo_paths(tmp_path, name)
            assert run("build", "--input", str(inp), "--output", str(out)) == 0
            assert run("validate", "--embedding", str(out), "--input", str(inp)) == 0

    def test_corrupted_stick(self, tmp_path):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        doc = json.loads(out.read_text())
        # drop one stick (and its polyline leg): schema-valid, graph broken
        doc["sticks"] = doc["sticks"][:1]
        doc["edges"][0]["polyline"] = doc["edges"][0]["polyline"][:2]
        axis = doc["sticks"][0]["axis"]
        doc["counts"] = {"x": 0, "y": 0, "z": 0, "total": 1}
        doc["counts"][axis] = 1
        out.write_text(json.dumps(doc))
        assert run("validate", "--embedding", str(out), "--input", str(inp)) == 1

    def test_wrong_input_pairing(self, tmp_path):
        inp_u, out_u = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp_u), "--output", str(out_u))
        inp_t, _ = demo_paths(tmp_path, "theta-planar")
        assert run("validate", "--embedding", str(out_u), "--input", str(inp_t)) == 1

    def test_schema_error_is_syntactic(self, tmp_path):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        doc = json.loads(out.read_text())
        del doc["counts"]
        out.write_text(json.dumps(doc))
        assert run("validate", "--embedding", str(out), "--input", str(inp)) == 2


class TestBound:
    def test_trefoil_bounds(self, tmp_path, capsys):
        inp, _ = demo_paths(tmp_path, "trefoil")
        assert run("bound", "--input", str(inp), "--crossings", "3") == 0
        outp = capsys.readouterr().out
        assert "construction bound: 13" in outp
        assert "crossing bound: 13" in outp

    def test_theta_bound(self, tmp_path, capsys):
        inp, _ = demo_paths(tmp_path, "theta-planar")
        assert run("bound", "--input", str(inp)) == 0
        outp = capsys.readouterr().out
        assert "construction bound: 8" in outp
        assert "crossing bound" not in outp
        assert "[ok]" in outp


class TestInvariant:
    def test_trefoil_determinant(self, tmp_path, capsys):
        inp, out = demo_paths(tmp_path, "trefoil")
        run("build", "--input", str(inp), "--output", str(out))
        assert run("invariant", "--embedding", str(out), "--component", "t") == 0
        assert "determinant: 3" in capsys.readouterr().out

    def test_unknot_trivial(self, tmp_path, capsys):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        assert run("invariant", "--embedding", str(out), "--component", "u") == 0
        assert "determinant: 1" in capsys.readouterr().out

    def test_theta_not_a_cycle(self, tmp_path):
        inp, out = demo_paths(tmp_path, "theta-planar")
        run("build", "--input", str(inp), "--output", str(out))
        assert run("invariant", "--embedding", str(out), "--component", "th") == 1


class TestExport:
    def test_rectangle_obj(self, tmp_path):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        obj = tmp_path / "u.obj"
        assert run("export", "--embedding", str(out), "--format", "obj", "--output", str(obj)) == 0
        text = obj.read_text()
        v_lines = [l for l in text.splitlines() if l.startswith("v ")]
        l_lines = [l for l in text.splitlines() if l.startswith("l ")]
        assert len(v_lines) == 4 and len(l_lines) == 4
        assert text.endswith("\n")

    def test_byte_stable(self, tmp_path):
        inp, out = demo_paths(tmp_path, "trefoil")
        run("build", "--input", str(inp), "--output", str(out))
        a, b = tmp_path / "a.obj", tmp_path / "b.obj"
        run("export", "--embedding", str(out), "--format", "obj", "--output", str(a))
        run("export", "--embedding", str(out), "--format", "obj", "--output", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_format(self, tmp_path):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        assert run("export", "--embedding", str(out), "--format", "stl", "--output", str(tmp_path / "x")) == 2


class TestDocuments:
    def test_sticks_polyline_consistency_enforced(self, tmp_path):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        doc = json.loads(out.read_text())
        doc["sticks"][0], doc["sticks"][1] = doc["sticks"][1], doc["sticks"][0]
        embedding_from_document(doc)  # order does not matter
        doc["sticks"] = doc["sticks"][1:]
        doc["counts"]["total"] -= 1
        axis = doc["sticks"][0]["axis"]
        doc["counts"][axis] -= 0  # counts now inconsistent with polylines
        with pytest.raises(DocumentError):
            embedding_from_document(doc)

    def test_diagonal_stick_rejected(self, tmp_path):
        inp, out = demo_paths(tmp_path, "unknot")
        run("build", "--input", str(inp), "--output", str(out))
        doc = json.loads(out.read_text())
        doc["sticks"][0]["end"] = [v + 1 for v in doc["sticks"][0]["start"]]
        out.write_text(json.dumps(doc))
        assert run("validate", "--embedding", str(out), "--input", str(inp)) == 2

    def test_arc_from_to_any_order(self):
        doc = {
            "components": [
                {
                    "id": "u",
                    "binding_points": [{"index": 1, "vertex": "v"}, {"index": 2}],
                    "arcs": [
                        {"page": 1, "from": 2, "to": 1},
                        {"page": 2, "from": 1, "to": 2},
                    ],
                }
            ]
        }
        spec = spec_from_document(doc)
        assert spec.components[0].presentation.arcs[0].lo == 1
