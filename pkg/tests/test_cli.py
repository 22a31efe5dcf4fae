import json
import subprocess
import sys

import pytest

from longcycles.cli import check_payload, run
from longcycles.conditions import ConditionReport
from longcycles.families import complete_bipartite, d5
from longcycles.formats import format_edgelist, parse_edgelist
from longcycles.insertion import Bypass, LongCycleResult
from longcycles.oracle import CycleSpectrum, spectrum
from longcycles.verifier import VerificationReport


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_d5(capsys):
    code, out, _ = call(capsys, "gen", "d5", "--format", "edgelist")
    assert code == 0
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert body[0] == "n 5 8"
    assert len(body) == 9
    assert parse_edgelist(out) == d5()


def test_gen_dot_and_file(capsys, tmp_path):
    target = tmp_path / "k.dot"
    code, out, _ = call(capsys, "gen", "kpq", "2", "3", "--format", "dot", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().count("->") == 12


def test_gen_errors(capsys):
    code, _, err = call(capsys, "gen", "petersen")
    assert code == 1 and "unknown family" in err
    code, _, err = call(capsys, "gen", "kpq", "3")
    assert code == 1 and "takes 2" in err
    code, _, err = call(capsys, "gen", "cycle", "x")
    assert code == 1


def test_cycles_k5_on_k33(capsys, tmp_path):
    f = tmp_path / "k33.txt"
    f.write_text(format_edgelist(complete_bipartite(3, 3)))
    code, out, _ = call(capsys, "cycles", str(f), "--k", "5")
    assert (code, out) == (0, "none\n")
    code, out, _ = call(capsys, "cycles", str(f), "--k", "4")
    assert code == 0 and len(out.split()) == 4


def test_cycles_spectrum(capsys):
    code, out, _ = call(capsys, "cycles", "kpq:3:3", "--witnesses")
    data = json.loads(out)
    assert data["present"] == [2, 4, 6]
    assert data["hamiltonian"] and not data["pancyclic"]
    assert CycleSpectrum.from_dict(data) == spectrum(complete_bipartite(3, 3))
    code, out, _ = call(capsys, "cycles", "kpq:3:3")
    assert "witnesses" not in json.loads(out)
    assert CycleSpectrum.from_dict(json.loads(out)).present == {2, 4, 6}


def test_cycles_bad_length(capsys):
    code, _, err = call(capsys, "cycles", "d5", "--k", "9")
    assert code == 1 and "outside" in err


def test_check(capsys):
    code, out, _ = call(capsys, "check", "d5")
    data = json.loads(out)
    assert code == 0 and data["strong"] and data["locally_semicomplete"]
    assert data == check_payload(d5())
    reports = [ConditionReport.from_dict(r) for r in data["conditions"]]
    assert [r.condition.value for r in reports] == ["Meyniel", "Star", "StarStar", "TheoremC"]


def test_malformed_file(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("n 3\n1 2\n2 q\n")
    code, _, err = call(capsys, "check", str(f))
    assert code == 1 and "line 3, column 3" in err


def test_missing_file(capsys):
    code, _, err = call(capsys, "check", "nope.txt")
    assert code == 1 and "no such file" in err


def test_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(format_edgelist(d5())))
    code, out, _ = call(capsys, "cycles", "-", "--k", "3")
    assert (code, out) == (0, "none\n")


def test_extend(capsys):
    code, out, _ = call(capsys, "extend", "complete:5")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "HamiltonianCycle" and data["length"] == 5
    assert LongCycleResult.from_dict(data).to_dict() == data
    code, out, _ = call(capsys, "extend", "kpq:3:3")
    assert json.loads(out)["kind"] == "Extremal"


def test_bypass(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("n 6\n1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n6 3\n")
    code, out, _ = call(capsys, "bypass", str(f), "--cycle", "1,2,3,4,5")
    data = json.loads(out)
    assert Bypass.from_dict(data) == Bypass(1, 3, (6,), 2)
    code, _, err = call(capsys, "bypass", str(f), "--cycle", "1,3")
    assert code == 1 and "absent" in err
    code, _, err = call(capsys, "bypass", str(f), "--cycle", "a,b")
    assert code == 1


def test_verify(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, err = call(capsys, "verify", "--theorem", "2", "--n", "4", "--mode", "exhaustive")
    data = json.loads(out)
    assert code == 0 and data["counterexamples"] == []
    assert VerificationReport.from_dict(data).to_dict() == data
    code, out, err = call(capsys, "verify", "--theorem", "c", "--n", "4", "--out", str(out_file),
                          "--fixtures", str(tmp_path / "fx"))
    assert code == 0 and out == ""
    assert len(json.loads(out_file.read_text())["candidates"]) == 33
    assert len(list((tmp_path / "fx").iterdir())) == 33


def test_verify_sampled_seed_default(capsys):
    argv = ["verify", "--theorem", "1", "--n", "6", "--mode", "sampled", "--samples", "50"]
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv, "--seed", "0")
    assert first == second
    _, timed, _ = call(capsys, *argv, "--timing")
    assert "elapsed" in json.loads(timed)


def test_verify_counterexample_exit(capsys, monkeypatch):
    import longcycles.cli as cli
    from longcycles.verifier import Theorem, Witness

    fake = VerificationReport(Theorem.T1, 4, cli.Mode.EXHAUSTIVE, hypothesis_satisfying=1)
    fake.counterexamples = [Witness(0, 4, (), "Other")]
    monkeypatch.setattr(cli, "verify", lambda *a, **k: fake)
    code, _, _ = call(capsys, "verify", "--theorem", "1", "--n", "4")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["gen", "d5", "--colour"], ["verify", "--n", "4"], ["verify", "--theorem", "3", "--n", "4"]],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 1


def test_file_pipeline_matches_in_process(tmp_path):
    g = tmp_path / "d6.txt"
    gen = subprocess.run(
        [sys.executable, "-m", "longcycles", "gen", "d6", "--out", str(g)], capture_output=True, text=True
    )
    assert gen.returncode == 0
    checked = subprocess.run(
        [sys.executable, "-m", "longcycles", "check", str(g)], capture_output=True, text=True
    )
    cycles = subprocess.run(
        [sys.executable, "-m", "longcycles", "cycles", str(g), "--witnesses"], capture_output=True, text=True
    )
    D = parse_edgelist(g.read_text())
    assert checked.stdout == json.dumps(check_payload(D), indent=2) + "\n"
    s = spectrum(D)
    direct = s.to_dict() | {"pancyclic": s.is_pancyclic, "hamiltonian": s.is_hamiltonian}
    assert cycles.stdout == json.dumps(direct, indent=2) + "\n"
