import io
import json
import subprocess
import sys

import pytest

from elecred.cli import load_text, main


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_pipeline_bullseye_depth(capsys, monkeypatch):
    _, g, _ = run(capsys, monkeypatch, ["gen", "bullseye", "4"])
    assert g.startswith("# elecred graph")
    _, m, _ = run(capsys, monkeypatch, ["medial"], g)
    assert m.startswith("# elecred curve")
    code, d, _ = run(capsys, monkeypatch, ["depth"], m)
    assert code == 0 and d.strip() == "8"


def test_defect_of_trefoil(capsys, monkeypatch):
    _, t, _ = run(capsys, monkeypatch, ["gen", "torus", "2", "3"])
    code, out, _ = run(capsys, monkeypatch, ["defect"], t)
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, monkeypatch, ["--json", "oracle", "--quantity", "H"], t)
    data = json.loads(out)
    assert data["value"] == 2 and len(data["witness"]) == 2


def test_reduce_alpha(capsys, monkeypatch):
    _, a, _ = run(capsys, monkeypatch, ["gen", "alpha", "3"])
    code, out, _ = run(capsys, monkeypatch, ["reduce"], a)
    assert code == 0 and out.strip() == "0 moves, already reduced"
    _, w, _ = run(capsys, monkeypatch, ["winding"], a)
    assert w.strip() == "3"


def test_reduce_writes_trace(capsys, monkeypatch, tmp_path):
    _, t, _ = run(capsys, monkeypatch, ["gen", "torus", "3", "4"])
    tr = tmp_path / "t.trace"
    fin = tmp_path / "f.crv"
    code, out, _ = run(capsys, monkeypatch, ["reduce", "--trace", str(tr), "-o", str(fin)], t)
    assert code == 0
    assert out.strip().endswith("10 moves")
    assert len(tr.read_text().splitlines()) == 10
    assert load_text(fin.read_text()).is_circle


def test_moves_and_apply(capsys, monkeypatch):
    _, t, _ = run(capsys, monkeypatch, ["gen", "torus", "2", "3"])
    _, mv, _ = run(capsys, monkeypatch, ["moves"], t)
    first = next(line.split() for line in mv.splitlines() if line.startswith("M21"))
    code, res, _ = run(capsys, monkeypatch, ["apply", *first], t)
    assert code == 0
    assert load_text(res).num_vertices == 2


def test_apply_reads_file(capsys, monkeypatch, tmp_path):
    f = tmp_path / "t.crv"
    run(capsys, monkeypatch, ["gen", "torus", "2", "3", "-o", str(f)])
    code, res, _ = run(capsys, monkeypatch, ["apply", "-i", str(f), "M21", "1"])
    assert code == 0 and load_text(res).num_vertices == 2


def test_graph_moves(capsys, monkeypatch):
    _, g, _ = run(capsys, monkeypatch, ["gen", "bullseye", "2"])
    _, mv, _ = run(capsys, monkeypatch, ["moves"], g)
    assert mv.split() == ["LoopDelete", "1", "PlanarNonFacial"] or "LoopDelete" in mv


def test_signs_and_interleaving(capsys, monkeypatch):
    _, t, _ = run(capsys, monkeypatch, ["gen", "torus", "2", "3"])
    _, s, _ = run(capsys, monkeypatch, ["signs"], t)
    assert s.startswith("gauss")
    assert len(s.splitlines()) == 4
    _, m, _ = run(capsys, monkeypatch, ["interleaving"], t)
    assert len(m.splitlines()) == 3


def test_tangle_tight(capsys, monkeypatch):
    _, t, _ = run(capsys, monkeypatch, ["gen", "torus", "2", "3"])
    code, out, _ = run(capsys, monkeypatch, ["tangle", "tight", "--interior", "0"], t)
    assert code == 0 and out.strip() in ("tight", "not tight")


def test_embeddings_count(capsys, monkeypatch):
    _, g, _ = run(capsys, monkeypatch, ["gen", "bullseye", "2"])
    code, out, _ = run(capsys, monkeypatch, ["--json", "embeddings", "--budget", "2"], g)
    assert code == 0 and json.loads(out)["count"] >= 1


def test_certify(capsys, monkeypatch):
    _, t, _ = run(capsys, monkeypatch, ["gen", "torus", "2", "3"])
    code, out, _ = run(capsys, monkeypatch, ["certify"], t)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_domain_error_exit_code(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["gen", "torus", "2", "4"])
    assert code == 1
    assert "BadParam" in err


def test_parse_error_exit_code(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["defect"], "sigma 0 x\n")
    assert code == 1 and "ParseError" in err


def test_json_error(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["--json", "gen", "alpha", "0"])
    assert code == 1 and json.loads(out)["error"] == "BadParam"


def test_usage_errors(capsys, monkeypatch):
    with pytest.raises(SystemExit) as e:
        run(capsys, monkeypatch, ["gen", "torus", "2"])
    assert e.value.code == 2
    _, g, _ = run(capsys, monkeypatch, ["gen", "bullseye", "2"])
    with pytest.raises(SystemExit) as e:
        run(capsys, monkeypatch, ["defect"], g)
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        run(capsys, monkeypatch, ["defect"], "")
    assert e.value.code == 2


def test_json_output_roundtrip(capsys, monkeypatch):
    _, j, _ = run(capsys, monkeypatch, ["--json", "gen", "torus", "2", "5"])
    data = json.loads(j)
    assert data["type"] == "curve"
    _, d, _ = run(capsys, monkeypatch, ["defect"], j)
    assert d.strip() == "4"


def test_verify_suite_subset(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["verify-suite", "--only", "9"])
    assert code == 0
    assert out.splitlines()[0].split()[:2] == ["[PASS]", "9"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "elecred", "gen", "alpha", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("# elecred curve")
