import pytest

from pdcross.cli import BUDGET, NEGATIVE, OK, USAGE, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    results = [ln for ln in out.splitlines() if ln.startswith("result ")]
    assert results, out
    fields = dict(t.split("=", 1) for t in results[-1].split()[1:])
    return code, fields, out


@pytest.fixture(scope="module")
def gen_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    assert main(["gen", "all", "--out", str(d)]) == OK
    return d


def test_check_and_extend(capsys, gen_dir, tmp_path):
    code, f, _ = run(capsys, "check", gen_dir / "fig3-instance.pdg")
    assert code == OK and f["valid"] == "true"
    code, f, _ = run(capsys, "extend", gen_dir / "fig3-instance.pdg")
    assert code == NEGATIVE and f["extendable"] == "false"
    out = tmp_path / "ext.pdg"
    code, f, _ = run(capsys, "extend", gen_dir / "fig3-flipped.pdg", "--out", out)
    assert code == OK and out.exists()


def test_solve(capsys, gen_dir, tmp_path):
    w, s = tmp_path / "w.pdg", tmp_path / "w.svg"
    code, f, _ = run(capsys, "solve", gen_dir / "k5.pdg", "--witness", w, "--svg", s)
    assert code == OK and f["qstar"] == "1" and w.exists() and s.exists()
    code, f, _ = run(capsys, "solve", gen_dir / "fig3-instance.pdg", "--max-q", 0)
    assert code == NEGATIVE and f["status"] == "infeasible-within-budget"
    code, f, out = run(capsys, "solve", gen_dir / "fig6-flip.pdg", "--reduction", "--max-q", 2, "--trace")
    assert code == OK and f["qstar"] == "1"
    assert "reduce case=" in out


def test_reduce_flip_framing(capsys, gen_dir, tmp_path):
    region = "x1,x2,x3,z1,z2,z3"
    cycle = "c12,c23,c34,c45,c56,c61"
    code, f, out = run(capsys, "reduce", gen_dir / "fig6-flip.pdg", "--region", region, "--cycle", cycle,
                       "--out", tmp_path / "r.pdg")
    assert code == OK and f["case"] == "triangle-e"
    assert "reduce case=e" in out
    code, f, _ = run(capsys, "flip", gen_dir / "fig6-flip.pdg", "--region", region, "--cycle", cycle)
    assert code == OK and f["verdict"] == "unflippable"
    code, f, _ = run(capsys, "framing", gen_dir / "fig4-framing.pdg", "--out", tmp_path / "f.txt")
    assert code == OK and f["planar"] == "true" and f["three_connected"] == "true"


def test_catalog_and_svg(capsys, gen_dir, tmp_path):
    code, f, _ = run(capsys, "catalog")
    assert code == OK and int(f["entries"]) > 0
    code, f, _ = run(capsys, "catalog", gen_dir / "k5.pdg")
    assert code == NEGATIVE
    code, f, _ = run(capsys, "emit-svg", gen_dir / "k5.pdg", "--out", tmp_path / "k5.svg", "--solve")
    assert code == OK and (tmp_path / "k5.svg").read_text().startswith("<")


def test_exit_codes(capsys, gen_dir, tmp_path):
    assert main(["nonsense"]) == USAGE
    bad = tmp_path / "bad.pdg"
    bad.write_text("vertex a\nedge e a missing\n")
    assert main(["check", str(bad)]) == USAGE
    assert main(["check", str(tmp_path / "absent.pdg")]) == USAGE
    code, f, _ = run(capsys, "extend", gen_dir / "fig3-instance.pdg", "--budget-nodes", 1)
    assert code == BUDGET and f["status"] == "budget-exceeded"
