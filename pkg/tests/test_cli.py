import json

import pytest

from oddchrom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


K7_EDGES = "p edge 7 21\n" + "".join(f"e {u} {v}\n" for u in range(1, 8) for v in range(u + 1, 8))
C4 = "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n"


def test_solve_k7_and_c4(capsys, tmp_path):
    code, out = run(capsys, "solve", write(tmp_path, "k7.txt", K7_EDGES), "--oracle")
    report = json.loads(out)
    assert code == 0 and report["chiOdd"] == 7 and report["oracle"]["agrees"]
    code, out = run(capsys, "solve", write(tmp_path, "c4.txt", C4))
    assert code == 0 and json.loads(out)["chiOdd"] == 4


def test_solve_empty_file_is_input_error(capsys, tmp_path):
    code, out = run(capsys, "solve", write(tmp_path, "e.txt", ""))
    assert code == 2 and "error" in json.loads(out)


def test_solve_beyond_max_k(capsys, tmp_path):
    code, out = run(capsys, "solve", write(tmp_path, "k7.txt", K7_EDGES), "--max-k", "5")
    assert code == 0 and json.loads(out)["chiOdd"] is None


def test_verify_exit_codes(capsys, tmp_path):
    k7 = write(tmp_path, "k7.txt", K7_EDGES)
    rainbow = write(tmp_path, "r.txt", "".join(f"{v} {v + 1}\n" for v in range(7)))
    assert run(capsys, "verify", k7, rainbow, "--k", "7")[0] == 0
    c4 = write(tmp_path, "c4.txt", C4)
    bad = write(tmp_path, "b.txt", "0 1\n1 2\n2 1\n3 2\n")
    code, out = run(capsys, "verify", c4, bad, "--k", "8")
    assert code == 1
    assert sum(v["kind"] == "no-odd-color" for v in json.loads(out)["violations"]) == 4
    unknown = write(tmp_path, "u.txt", "9 1\n")
    assert run(capsys, "verify", c4, unknown)[0] == 2


def test_audit_outputs(capsys, tmp_path):
    grid = str(tmp_path / "g.rot")
    run(capsys, "gen", "torus-grid", "3", "4", "--out", grid)
    code, out = run(capsys, "audit", grid)
    report = json.loads(out)
    assert code == 0 and report["conservation"]
    assert {e["finalEighths"] for e in report["elements"]} == {0}
    k7 = str(tmp_path / "k7.rot")
    run(capsys, "gen", "k7-torus", "--out", k7)
    report = json.loads(run(capsys, "audit", k7)[1])
    assert report["conservation"] and report["negatives"]
    tri = write(tmp_path, "t.rot", "V 3\nR 0: 1 2\nR 1: 2 0\nR 2: 0 1\n")
    report = json.loads(run(capsys, "audit", tri)[1])
    assert report["genus"] == 0 and report["totalInitialEighths"] == -64


def test_reduce_outputs(capsys, tmp_path):
    grid = str(tmp_path / "g.rot")
    run(capsys, "gen", "torus-grid", "3", "4", "--out", grid)
    code, out = run(capsys, "reduce", grid)
    assert code == 0 and len(json.loads(out)["coloring"]) == 12
    plant = str(tmp_path / "p.rot")
    run(capsys, "gen", "plant", "three-vertex", "--seed", "2", "--out", plant)
    trace = json.loads(run(capsys, "reduce", plant)[1])["trace"]
    assert trace[0]["tag"] == "ThreeVertex"
    k7 = str(tmp_path / "k7.rot")
    run(capsys, "gen", "k7-torus", "--out", k7)
    code, out = run(capsys, "reduce", k7)
    assert code == 2 and "adjacent triangles" in json.loads(out)["message"]


def test_gen_and_lemmas(capsys, tmp_path, monkeypatch):
    code, out = run(capsys, "gen", "torus-grid", "3", "4")
    assert code == 0 and "V 12" in out
    fp = str(tmp_path / "fp.rot")
    run(capsys, "gen", "plant", "five-path", "--seed", "7", "--out", fp)
    from oddchrom.formats import parse_rotation_system
    from oddchrom.reduction import find_configuration

    assert find_configuration(parse_rotation_system(open(fp).read())).tag == "FivePath"
    assert run(capsys, "gen", "torus-grid", "2", "2")[0] == 2
    monkeypatch.setenv("ODDCHROM_SEED", "5")
    a = run(capsys, "gen", "random-toroidal", "10")[1]
    b = run(capsys, "gen", "random-toroidal", "10", "--seed", "5")[1]
    assert a == b
    p4 = write(tmp_path, "p4.txt", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    code, out = run(capsys, "lemmas", p4)
    assert code == 0 and "AdjacentTwoVertices" in {v["tag"] for v in json.loads(out)}
    grid = str(tmp_path / "g.rot")
    run(capsys, "gen", "torus-grid", "3", "4", "--out", grid)
    assert {v["tag"] for v in json.loads(run(capsys, "lemmas", grid)[1])} == {"AdjacentFourVertices"}


def test_json_is_sorted(capsys, tmp_path):
    out = run(capsys, "solve", write(tmp_path, "c4.txt", C4))[1]
    keys = list(json.loads(out))
    assert keys == sorted(keys)


def test_missing_file(capsys):
    assert run(capsys, "audit", "/nonexistent/x.rot")[0] == 2


def test_bad_subcommand_arguments():
    with pytest.raises(SystemExit) as info:
        main(["gen", "hexagon"])
    assert info.value.code == 2
