import json
import subprocess
import sys

import pytest

from treemorph.cli import main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_full_workflow(tmp_path, capsys):
    g = tmp_path / "g.json"
    code, _ = run(["gen", "12", "--seed", "3", "--shape", "caterpillar", "--out", str(g)], capsys)
    assert code == 0 and json.loads(g.read_text())["n"] == 12

    code, out = run(["decompose", str(g)], capsys)
    doc = json.loads(out.out)
    assert code == 0 and {"long_paths", "rpw", "short_edge_sets"} <= set(doc)

    t = tmp_path / "t.json"
    code, out = run(["morph", str(g), "--alg", "edges", "--out", str(t)], capsys)
    assert code == 0 and "steps" in out.out and "wall time" in out.out

    code, out = run(["verify", str(t), "--samples", "4"], capsys)
    assert code == 0 and json.loads(out.out)["ok"] is True

    code, out = run(["stats", str(t), "--samples", "2"], capsys)
    assert code == 0 and "step bound" in out.out

    code, out = run(["export", str(t), "--format", "obj-frames", "--frames-per-step", "1", "--out",
                     str(tmp_path / "frames")], capsys)
    assert code == 0 and len(list((tmp_path / "frames").iterdir())) > 1


def test_morph_between_two_files(tmp_path, capsys):
    a, b, t = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "t.json"
    a.write_text(json.dumps({"n": 3, "edges": [[0, 1], [0, 2]], "positions": [[0, 0], [1, 0], [0, 1]]}))
    b.write_text(json.dumps({"n": 3, "edges": [[0, 1], [0, 2]], "positions": [[5, 5], [5, 3], [7, 5]]}))
    assert run(["morph", str(a), str(b), "--out", str(t)], capsys)[0] == 0
    code, out = run(["verify", str(t), "--samples", "4"], capsys)
    assert code == 0


def test_violating_trace_exits_one(tmp_path, capsys):
    doc = {"algorithm": "custom", "initial": {"n": 3, "edges": [[0, 1], [0, 2]],
                                              "positions": [[0, 0, 0], [2, 0, 0], [0, 2, 0]]},
           "steps": [{"kind": "translate", "positions": [[0, 0, 0], [0, 2, 0], [2, 0, 0]]}]}
    t = tmp_path / "t.json"
    t.write_text(json.dumps(doc))
    assert run(["verify", str(t), "--samples", "1"], capsys)[0] == 1
    assert run(["verify", str(t), "--samples", "2", "--strict"], capsys)[0] == 1


@pytest.mark.parametrize("argv", [
    ["gen", "0"],
    ["decompose", "/nonexistent.json"],
    ["verify", "/nonexistent.json"],
])
def test_input_errors_exit_two(argv, capsys):
    code, out = run(argv, capsys)
    assert code == 2 and out.err.startswith("error:")


def test_crossing_input_exits_two(tmp_path, capsys):
    g = tmp_path / "x.json"
    g.write_text(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]], "positions": [[0, 0], [2, 2], [2, 0], [0, 2]]}))
    code, out = run(["morph", str(g), "--out", str(tmp_path / "t.json")], capsys)
    assert code == 2 and "crossing" in out.err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "treemorph", "gen", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["n"] == 3
