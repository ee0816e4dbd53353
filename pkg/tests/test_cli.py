import json
import subprocess
import sys
from importlib.resources import files

import pytest

from w0 import cli
from w0.geometry import INTEGRAL_CAPTION

CORPUS = files("w0") / "corpus"


def doc(name):
    return str(CORPUS / f"{name}.json")


def run_json(capsys, *argv):
    status = cli.main([*argv, "--format", "json"])
    return status, json.loads(capsys.readouterr().out)


class TestExitStatus:
    @pytest.mark.parametrize("argv", [
        ["w0", doc("nodal_cubic")],
        ["cohomology", doc("rp2")],
        ["validate", doc("banana")],
        ["dual-complex", doc("tetrahedron")],
        ["pair", doc("cstar_pair")],
        ["w0", doc("cstar_pair")],
        ["resolution", doc("cusp_4")],
        ["betti-bound", doc("two_nodes")],
        ["les", doc("cstar_pair")],
        ["bound-check", doc("nodal_cubic_bounds")],
        ["bound-check", doc("nodal_cubic"), "--h", "1,1"],
        ["product", doc("banana"), doc("i3")],
        ["kunneth", doc("banana"), doc("banana")],
    ])
    def test_ok(self, argv, capsys):
        assert cli.main(argv) == cli.OK

    @pytest.mark.parametrize("argv", [
        ["validate", doc("broken_face")],
        ["cohomology", doc("undefined_component")],
        ["w0", "/nonexistent/file.json"],
        ["pair", doc("banana")],
        ["les", doc("nodal_cubic")],
        ["kunneth", doc("banana")],
        ["bound-check", doc("nodal_cubic")],
        ["bound-check", doc("nodal_cubic"), "--h", "1"],
        ["no-such-command", doc("banana")],
        ["cohomology", doc("banana"), "--ring", "r"],
    ])
    def test_input_errors(self, argv, capsys):
        assert cli.main(argv) == cli.INPUT_ERROR

    @pytest.mark.parametrize("argv", [
        ["bound-check", doc("inconsistent_bounds")],
        ["bound-check", doc("nodal_cubic"), "--h", "1,0"],
        ["bound-check", doc("nodal_cubic_bounds"), "--kh", "1,3"],
    ])
    def test_verification_failures(self, argv, capsys):
        assert cli.main(argv) == cli.VERIFY_FAILED

    def test_batch_takes_worst_status(self, capsys):
        assert cli.main(["validate", doc("banana"), doc("broken_face")]) == cli.INPUT_ERROR

    def test_max_dim_guard(self, monkeypatch, capsys):
        monkeypatch.setenv("W0_MAX_DIM", "1")
        assert cli.main(["cohomology", doc("tetrahedron")]) == cli.INPUT_ERROR
        assert "W0_MAX_DIM" in capsys.readouterr().out
        monkeypatch.setenv("W0_MAX_DIM", "lots")
        assert cli.main(["cohomology", doc("banana")]) == cli.INPUT_ERROR

    def test_help(self, capsys):
        assert cli.main(["--help"]) == cli.OK


class TestOutput:
    def test_text_groups_and_caption(self, capsys):
        cli.main(["w0", doc("nodal_cubic")])
        out = capsys.readouterr().out.splitlines()
        assert out[0] == f"# w0 {doc('nodal_cubic')}"
        assert f"[{INTEGRAL_CAPTION}]" in out
        assert "KH^0 = Z" in out and "KH^1 = Z" in out

    def test_rational_has_no_caption(self, capsys):
        cli.main(["cohomology", doc("rp2"), "--ring", "q"])
        out = capsys.readouterr().out
        assert "H^2 = 0" in out and INTEGRAL_CAPTION not in out

    def test_torsion_rendering(self, capsys):
        cli.main(["cohomology", doc("rp2")])
        assert "H^2 = Z/2" in capsys.readouterr().out.splitlines()

    @pytest.mark.parametrize("argv", [
        ["cohomology", doc("rp2")],
        ["w0", doc("two_nodes")],
        ["pair", doc("cstar_pair")],
        ["betti-bound", doc("cusp_4")],
        ["les", doc("cstar_pair")],
        ["bound-check", doc("inconsistent_bounds")],
        ["kunneth", doc("banana"), doc("i4")],
    ])
    def test_text_and_json_agree(self, argv, capsys):
        status_text = cli.main(argv)
        text = capsys.readouterr().out.splitlines()
        status_json, payload = run_json(capsys, *argv)
        assert status_text == status_json == payload["status"]
        for g in payload.get("groups", []):
            assert f"{g['name']} = {g['text']}" in text
        if "verdicts" in payload:
            verdict = [line for line in text if line.startswith("verdict: ")]
            assert verdict == ["verdict: " + ("PASS" if payload["passed"] else "FAIL")]
            assert sum(line.endswith("PASS") or line.endswith("FAIL") for line in text) == len(payload["verdicts"]) + 1

    def test_json_groups(self, capsys):
        status, payload = run_json(capsys, "cohomology", doc("rp2"))
        assert status == 0
        assert payload["groups"][2] == {"name": "H^2", "free_rank": 0, "torsion": [2], "text": "Z/2"}

    def test_error_in_json_and_stderr(self, capsys):
        status = cli.main(["validate", doc("broken_face"), "--format", "json"])
        captured = capsys.readouterr()
        payload = json.loads(captured.out)
        assert status == payload["status"] == 1
        assert "(n=2, σ=0, i=0, j=1)" in payload["error"]
        assert "broken_face" in captured.err

    def test_undefined_component_path(self, capsys):
        cli.main(["validate", doc("undefined_component")])
        assert "$.strata['A,C']" in capsys.readouterr().out

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "out.json"
        assert cli.main(["w0", doc("i5"), "--format", "json", "--output", str(target)]) == 0
        assert capsys.readouterr().out == ""
        payload = json.loads(target.read_text(encoding="utf-8"))
        assert [g["text"] for g in payload["groups"]] == ["Z", "Z"]

    def test_non_complete_note(self, tmp_path, capsys):
        document = json.loads((CORPUS / "banana.json").read_text(encoding="utf-8"))
        document["complete"] = False
        path = tmp_path / "open_banana.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        assert cli.main(["w0", str(path)]) == 0
        assert "non-complete" in capsys.readouterr().out
        cli.main(["w0", doc("banana")])
        assert "non-complete" not in capsys.readouterr().out

    def test_dual_complex_document(self, capsys):
        _, payload = run_json(capsys, "dual-complex", doc("banana"))
        assert payload["document"]["levels"] == [2, 2]

    def test_literal_resolution(self, capsys):
        _, padded = run_json(capsys, "w0", doc("a2_chain"))
        _, literal = run_json(capsys, "w0", doc("a2_chain"), "--literal")
        assert [g["text"] for g in padded["groups"]][:2] == ["Z", "0"]
        assert [g["text"] for g in literal["groups"]][:2] == ["Z", "Z"]

    def test_jobs_match_serial(self, capsys):
        files_ = [doc(n) for n in ("i3", "i4", "rp2", "tetrahedron")]
        _, serial = run_json(capsys, "cohomology", *files_)
        _, parallel = run_json(capsys, "cohomology", *files_, "--jobs", "2")
        assert serial == parallel


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "w0", "bound-check", doc("inconsistent_bounds")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 2
    assert "verdict: FAIL" in proc.stdout
