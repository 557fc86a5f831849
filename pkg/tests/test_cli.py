import json
import os
import subprocess
import sys

import pytest

from drinfeld import cache
from drinfeld.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_profile_json(capsys):
    code, out, _ = run_cli(["carlitz", "profile", "--q", "3", "--varpi", "T"],
                           capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["linear"] == "T" and payload["ok"]
    assert payload["format"] == 1


def test_trace_command(capsys):
    code, out, _ = run_cli(["carlitz", "trace", "--q", "3", "--varpi", "T"],
                           capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["traces"] == ["0", "0", "eps"]
    assert payload["generates_unit_ideal"]


def test_graph_m1(capsys):
    code, out, _ = run_cli(["hecke", "graph", "--q", "3", "--varpi", "T",
                            "--m", "1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert sorted(n["j"] for n in payload["nodes"]) == ["0", "1", "2"]
    ss = [n for n in payload["nodes"] if not n["ordinary"]]
    assert len(ss) == 1 and ss[0]["j"] == "0"
    ss_edges = [e for e in payload["edges"] if e["src"] == "0"]
    assert len(ss_edges) == 1 and ss_edges[0]["u"] == "t"


def test_graph_dot(capsys):
    code, out, _ = run_cli(["hecke", "graph", "--q", "3", "--varpi", "T",
                            "--m", "1", "--dot"], capsys)
    assert code == 0
    assert out.startswith("digraph") and '"0" -> "0"' in out


def test_matrix_command(capsys):
    code, out, _ = run_cli(["hecke", "matrix", "--q", "3", "--varpi", "T",
                            "--m", "2", "--k", "0", "--op", "U"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert len(payload["index"]) == 8
    assert payload["norm_exponent"] == 0
    assert not payload["semilinear"]


def test_serre_tate_command(capsys):
    code, out, _ = run_cli(["serre-tate", "check", "--q", "3", "--varpi", "T",
                            "--m", "2", "--nilpotency", "2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] and payload["torsion_points"] == 3
    assert payload["perturbations"] == 27


def test_iwasawa_specialize_command(capsys):
    code, out, _ = run_cli(["iwasawa", "specialize", "--q", "3", "--varpi",
                            "T", "--m", "2", "--k", "2", "--u", "T+1"],
                           capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["specialize"] == "2*T+1"
    assert payload["routes_agree"]


def test_iwasawa_filtration_command(capsys):
    code, out, _ = run_cli(["iwasawa", "filtration", "--gens", "3", "--r",
                            "2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["killed_by_maximal_ideal"]
    assert payload["quotient_dimension"] == 6


def test_projector_run(tmp_path, capsys):
    tower = {"format": 1, "q": 3, "varpi": "T", "depth": 2,
             "matrix": [["1", "1"], ["0", "T"]]}
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(tower))
    code, out, _ = run_cli(["projector", "run", "--tower", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"]
    assert payload["projector"][-1] == [["1", "T+1"], ["0", "0"]]


def test_malformed_varpi_is_usage_error(capsys):
    code, _, err = run_cli(["carlitz", "profile", "--q", "3", "--varpi",
                            "T^2+2"], capsys)
    assert code == 2
    assert "reducible" in err


def test_parse_error_is_usage_error(capsys):
    code, _, err = run_cli(["carlitz", "profile", "--q", "3", "--varpi",
                            "T^"], capsys)
    assert code == 2


def test_deterministic_output(capsys):
    args = ["hecke", "graph", "--q", "3", "--varpi", "T", "--m", "2"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2


def test_cache_roundtrip(tmp_path, capsys):
    cache_dir = str(tmp_path / "cache")
    args = ["hecke", "graph", "--q", "3", "--varpi", "T", "--m", "1",
            "--cache", cache_dir]
    code, out1, _ = run_cli(args, capsys)
    assert code == 0
    files = os.listdir(cache_dir)
    assert len(files) == 1
    code, out2, _ = run_cli(args, capsys)  # second run loads from cache
    assert code == 0 and out1 == out2


def test_cache_corruption_rejected(tmp_path):
    cfg = {"q": 3, "varpi": "T", "m": 1}
    path = str(tmp_path / "rec.json")
    cache.save_record(path, cfg, {"nodes": [1, 2, 3]})
    assert cache.load_record(path, cfg) == {"nodes": [1, 2, 3]}
    with open(path) as fh:
        record = json.load(fh)
    record["body"]["nodes"].append(4)
    with open(path, "w") as fh:
        json.dump(record, fh)
    with pytest.raises(cache.CacheError, match="hash"):
        cache.load_record(path, cfg)


def test_cache_stale_format_rejected(tmp_path):
    cfg = {"q": 3}
    path = str(tmp_path / "rec.json")
    cache.save_record(path, cfg, [1])
    with open(path) as fh:
        record = json.load(fh)
    record["header"]["format"] = 0
    with open(path, "w") as fh:
        json.dump(record, fh)
    with pytest.raises(cache.CacheError, match="format"):
        cache.load_record(path, cfg)


def test_suite_small_config(capsys):
    code, out, _ = run_cli(["suite", "--q", "3", "--varpi", "T", "--m", "1"],
                           capsys)
    assert code == 0
    assert "== result: pass" in out
    assert out.count("[pass]") >= 15


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "drinfeld", "carlitz", "profile", "--q", "2",
         "--varpi", "T^2+T+1"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"]


def test_projector_run_explicit_levels(tmp_path, capsys):
    tower = {"format": 1, "q": 3, "varpi": "T",
             "levels": [{"precision": 1, "matrix": [["1", "1"], ["0", "0"]]},
                        {"precision": 2, "matrix": [["1", "1"], ["0", "T"]]}]}
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(tower))
    code, out, _ = run_cli(["projector", "run", "--tower", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] and payload["precisions"] == [1, 2]


def test_projector_run_rejects_incompatible_levels(tmp_path, capsys):
    tower = {"format": 1, "q": 3, "varpi": "T",
             "levels": [{"precision": 1, "matrix": [["1", "0"], ["0", "1"]]},
                        {"precision": 2, "matrix": [["1", "1"], ["0", "T"]]}]}
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(tower))
    code, _, err = run_cli(["projector", "run", "--tower", str(path)], capsys)
    assert code == 2 and "commute" in err
