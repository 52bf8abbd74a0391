import json

import pytest

from opsusp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tmap(capsys):
    code, out, _ = run(capsys, "tmap", "--alpha", "2,1,3", "--sigma", "3,1,2", "--cycles")
    assert code == 0
    assert out.splitlines() == ["4,5,6,1,2,3", "(1 4)(2 5)(3 6)"]


def test_tmap_bad_sigma(capsys):
    code, _, err = run(capsys, "tmap", "--alpha", "1,1", "--sigma", "1,1")
    assert code == 2 and "error" in err


def test_bar_homology(capsys):
    code, out, _ = run(capsys, "bar", "homology", "--n", "2", "--range", "0..2")
    assert code == 0
    assert out.splitlines() == ["H_0(S2; trivial) = Z", "H_1(S2; trivial) = Z/2",
                                "H_2(S2; trivial) = 0"]


def test_bar_bad_range(capsys):
    assert run(capsys, "bar", "homology", "--n", "2", "--range", "2..0")[0] == 2
    assert run(capsys, "bar", "homology", "--n", "2", "--range", "x")[0] == 2


def test_homology_of_dumped_interval(capsys, tmp_path):
    path = tmp_path / "interval.json"
    assert run(capsys, "coalg", "dump", "--name", "interval", "--max-rank", "2",
               "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "homology", "--in", str(path))
    assert code == 0 and out.splitlines() == ["H_0 = Z", "H_1 = 0"]


def test_operad_build_and_check(capsys, tmp_path):
    path = tmp_path / "s0.json"
    assert run(capsys, "operad", "build", "--name", "s0", "--max-rank", "3", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "check-axioms", "--in", str(path))
    assert code == 0 and out.startswith("PASS")
    code, _, _ = run(capsys, "operad", "check-axioms", "--name", "bar", "--max-rank", "2")
    assert code == 0


def test_failing_check_exits_one(capsys, tmp_path):
    data = json.loads(main_output(capsys, "operad", "build", "--name", "susp", "--max-rank", "3"))
    for e in data["compositions"]:
        if e["a"] == "s2" and e["i"] == 1 and e["b"] == "s2":
            e["value"] = [[v[0], -v[1]] for v in e["value"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check-axioms", "--in", str(path))
    assert code == 1 and out.startswith("FAIL")


def main_output(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return out


@pytest.mark.parametrize("argv", [
    ["check-axioms"],
    ["check-axioms", "--in", "/nonexistent.json"],
    ["operad", "build", "--name", "nope"],
    ["frobnicate"],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_json_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(capsys, "homology", "--in", str(path))[0] == 2
    path.write_text("{}")
    assert run(capsys, "stable", "verify", "--in", str(path))[0] == 2


def test_coalg_check_and_suspend(capsys, tmp_path):
    assert run(capsys, "coalg", "check", "--name", "circle", "--max-rank", "2")[0] == 0
    path = tmp_path / "s.json"
    assert run(capsys, "coalg", "suspend", "--name", "sphere0", "--max-rank", "2", "--reduced",
               "--out", str(path))[0] == 0
    data = json.loads(path.read_text())
    assert data["name"] == "SS⁰⁺"
    code, out, _ = run(capsys, "homology", "--in", str(path), "--range", "1..1")
    assert code == 0 and out.strip() == "H_1 = Z"


def test_susp_commands(capsys):
    out = json.loads(main_output(capsys, "susp", "vmap", "--max-rank", "2", "--max-degree", "1"))
    values = {r["key"]: r["value"] for r in out["values"]}
    assert values["12*[21]"] == [["s2⊗21*[]", 1]]
    assert values["12*[]"] == []
    code, out, _ = run(capsys, "susp", "check-theorem", "--coalgebra", "sphere0", "--identity")
    assert code == 0 and out.startswith("PASS")


@pytest.mark.parametrize("kind,code", [("identity", 0), ("cone", 0), ("mixed", 0), ("zero", 1)])
def test_stable_examples_verify(capsys, tmp_path, kind, code):
    path = tmp_path / f"{kind}.json"
    assert run(capsys, "stable", "example", "--kind", kind, "--max-rank", "2",
               "--out", str(path))[0] == 0
    got, out, _ = run(capsys, "stable", "verify", "--in", str(path))
    assert got == code
    if kind == "zero":
        assert "homology differs in degree 1" in out


def test_stable_align_is_idempotent(capsys, tmp_path):
    src = tmp_path / "mixed.json"
    once, twice = tmp_path / "once.json", tmp_path / "twice.json"
    run(capsys, "stable", "example", "--kind", "mixed", "--max-rank", "2", "--out", str(src))
    assert run(capsys, "stable", "align", "--in", str(src), "--out", str(once))[0] == 0
    assert run(capsys, "stable", "align", "--in", str(once), "--out", str(twice))[0] == 0
    assert once.read_bytes() == twice.read_bytes()
    assert {o["level"] for o in json.loads(once.read_text())["objects"]} == {1}


def test_stable_align_refuses_zero(capsys, tmp_path):
    src = tmp_path / "zero.json"
    run(capsys, "stable", "example", "--kind", "zero", "--max-rank", "2", "--out", str(src))
    assert run(capsys, "stable", "align", "--in", str(src))[0] == 2


def test_manifest(capsys, tmp_path):
    (tmp_path / "m.json").write_text(json.dumps(
        {"command": "bar homology", "n": 3, "range": "0..1", "coefficients": "sign",
         "out": "h.json", "deterministic": True}))
    assert run(capsys, "run", "--manifest", str(tmp_path / "m.json"))[0] == 0
    data = json.loads((tmp_path / "h.json").read_text())
    assert [(g["d"], g["free_rank"], g["torsion"]) for g in data] == [(0, 0, [2]), (1, 0, [3])]
    (tmp_path / "n.json").write_text(json.dumps({"command": "run", "manifest": "m.json"}))
    assert run(capsys, "run", "--manifest", str(tmp_path / "n.json"))[0] == 2
    (tmp_path / "e.json").write_text("[]")
    assert run(capsys, "run", "--manifest", str(tmp_path / "e.json"))[0] == 2


@pytest.mark.parametrize("argv", [
    ["operad", "build", "--name", "bar", "--max-rank", "2"],
    ["coalg", "dump", "--name", "interval", "--max-rank", "2"],
    ["susp", "vmap", "--max-rank", "2"],
])
def test_outputs_are_deterministic(capsys, argv):
    assert main_output(capsys, *argv) == main_output(capsys, *argv)


def test_dump_reload_round_trip(capsys, tmp_path):
    first = tmp_path / "a.json"
    run(capsys, "coalg", "dump", "--name", "circle", "--max-rank", "2", "--out", str(first))
    second = tmp_path / "b.json"
    run(capsys, "coalg", "dump", "--in", str(first), "--out", str(second))
    assert first.read_bytes() == second.read_bytes()


def test_basis_cap(capsys, monkeypatch):
    monkeypatch.setenv("OPSUSP_MAX_BASIS", "10")
    code, _, err = run(capsys, "bar", "dump", "--n", "3", "--max-degree", "2")
    assert code == 2 and "OPSUSP_MAX_BASIS" in err
