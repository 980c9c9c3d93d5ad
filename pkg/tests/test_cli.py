"""CLI surface: envelopes, determinism, exit codes, README examples."""

import json
import re
from pathlib import Path

from lecturehall.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, (json.loads(out) if out else None)


def test_series_ones_envelope(capsys):
    code, doc = run_json(capsys, "series", "--n", "2", "--grading", "ones", "--terms", "6")
    assert code == 0
    assert doc["schema"] == 1 and doc["exact"] is True
    assert doc["result"]["coefficients"] == ["1", "1", "1", "2", "2", "2", "3"]
    assert doc["result"]["matches_bme"] is True


def test_series_deg_and_ceiling(capsys):
    code, doc = run_json(capsys, "series", "--n", "3", "--grading", "deg", "--terms", "3")
    assert code == 0 and doc["result"]["coefficients"] == ["1", "4", "9", "16"]
    code, doc = run_json(capsys, "series", "--n", "2", "--grading", "ceiling", "--terms", "3")
    assert code == 0 and doc["result"]["coefficients"] == ["1", "3", "5", "7"]


def test_hilbert_basis_command(capsys):
    code, doc = run_json(capsys, "hilbert-basis", "--n", "3")
    assert code == 0
    vectors = [e["vector"] for e in doc["result"]["elements"]]
    assert vectors == [[0, 0, 1], [0, 1, 2], [0, 2, 3], [1, 2, 3]]


def test_hilbert_basis_bruteforce_flag(capsys):
    code, doc = run_json(capsys, "hilbert-basis", "--n", "4", "--verify-bruteforce", "--tmax", "3")
    assert code == 0 and doc["result"]["bruteforce_matches"] is True


def test_triangulate_check_all(capsys, tmp_path):
    out_file = tmp_path / "t4.json"
    code, doc = run_json(capsys, "triangulate", "--n", "4", "--check", "all",
                         "--out", str(out_file))
    assert code == 0
    r = doc["result"]
    assert r["facets"] == 6
    assert r["unimodular"] and r["flag"] and r["covering"] and r["regular"]
    saved = json.loads(out_file.read_text())
    assert saved["schema"] == 1 and len(saved["facets"]) == 6 and "lifting" in saved


def test_eulerian_command(capsys):
    code, doc = run_json(capsys, "eulerian", "--n", "4")
    assert code == 0 and doc["result"]["coefficients"] == ["1", "11", "11", "1"]


def test_reflexive_command(capsys):
    code, doc = run_json(capsys, "reflexive", "--n", "4")
    assert code == 0 and doc["result"]["reflexive"] is True
    assert all(f["rhs"] == "1" for f in doc["result"]["facets"])


def test_decompose_command(capsys):
    code, doc = run_json(capsys, "decompose", "--n", "3", "--point", "0,2,4")
    assert code == 0
    assert doc["result"]["parts"] == [[0, 2, 3], [0, 0, 1]]
    assert doc["result"]["degree"] == 2


def test_braid_command(capsys):
    code, doc = run_json(capsys, "braid", "--k", "3")
    assert code == 0
    r = doc["result"]
    assert r["facets"] == 6 and r["nonedges"] == "9" == r["sperner"]
    assert r["matches_reference_properties"] is True


def test_conjecture_command(capsys):
    code, doc = run_json(capsys, "conjecture", "--n", "3")
    assert code == 0
    assert doc["result"]["clauses"]["descent_shelling"] == "holds"
    assert "wall_clock" not in doc["result"]


def test_hstar_command(capsys):
    code, doc = run_json(capsys, "hstar", "--object", "Rn", "--n", "4")
    assert code == 0
    assert doc["result"]["hstar"] == ["1", "4", "1"]
    assert doc["result"]["palindromic"] is True and doc["result"]["matches_eulerian"] is True


def test_plain_format(capsys):
    code, out = run_cli(capsys, "--format", "plain", "eulerian", "--n", "3")
    assert code == 0 and "coefficients: [1, 4, 1]" in out


def test_byte_identical_reruns(capsys):
    _, first = run_cli(capsys, "conjecture", "--n", "4")
    _, second = run_cli(capsys, "conjecture", "--n", "4")
    assert first == second
    _, third = run_cli(capsys, "series", "--n", "3", "--grading", "ones", "--terms", "8")
    _, fourth = run_cli(capsys, "series", "--n", "3", "--grading", "ones", "--terms", "8")
    assert third == fourth


def test_exit_code_domain_error(capsys):
    assert main(["series", "--n", "0", "--grading", "ones", "--terms", "3"]) == 2
    assert main(["decompose", "--n", "3", "--point", "1,1,1"]) == 2
    assert main(["decompose", "--n", "3", "--point", "x,y"]) == 2


def test_exit_code_budget_error(capsys):
    assert main(["eulerian", "--n", "12"]) == 3
    assert main(["series", "--n", "2", "--grading", "ones", "--terms", "25"]) == 3


def test_unsafe_large_lifts_guard(capsys):
    assert main(["series", "--n", "2", "--grading", "ones", "--terms", "25",
                 "--unsafe-large"]) == 0
    capsys.readouterr()


def test_exit_code_usage(capsys):
    assert main(["series", "--n", "2", "--grading", "ones"]) == 64  # missing --terms
    assert main(["no-such-command"]) == 64
    assert main(["series", "--n", "2", "--grading", "ones", "--terms", "3",
                 "--no-such-flag"]) == 64


def test_readme_commands_execute(capsys):
    """Every CLI invocation shown in the README must run successfully."""
    readme = Path(__file__).resolve().parent.parent / "README.md"
    commands = re.findall(r"^\$ lhc (.+)$", readme.read_text(), flags=re.M)
    assert commands, "README should document CLI invocations"
    for line in commands:
        argv = line.split()
        code, out = run_cli(capsys, *argv)
        assert code == 0, f"README command failed: lhc {line}"
        if "--format" not in argv:
            json.loads(out)
