import json
import subprocess
import sys
from dataclasses import replace

import pytest

from arrlab.catalog import FS_LATTICE, MACLANE_LATTICE, NINE_THREE_LATTICES, catalog, get
from arrlab.cli import cmd_verify_paper, build_parser, main
from arrlab.geometry import Arrangement
from shared_lattices import HIRZEBRUCH_FAIL


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


class TestCatalog:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0 and len(out.strip().splitlines()) == 11

    def test_show_fs(self, capsys):
        code, out, _ = run(capsys, "catalog", "show", "fs+")
        data = json.loads(out)
        assert code == 0
        assert data["arrangement"]["field_d"] == 5 and len(data["arrangement"]["lines"]) == 9

    def test_show_text(self, capsys):
        code, out, _ = run(capsys, "catalog", "show", "maclane-", "--format", "text")
        assert code == 0 and "maclane-" in out

    def test_unknown(self, capsys):
        assert run(capsys, "catalog", "show", "nosuch")[0] == 1
        assert run(capsys, "catalog", "show")[0] == 1


class TestIncidence:
    def test_fs_profile(self, capsys, tmp_path):
        f = write(tmp_path, "fs.json", get("fs+").arrangement.to_json())
        code, out, _ = run(capsys, "incidence", f)
        data = json.loads(out)
        assert code == 0
        assert data["profile"] == {"4": 1, "3": 8, "2": 6}
        assert data["hirzebruch"] == "pass"

    def test_two_lines(self, capsys, tmp_path):
        f = write(tmp_path, "two.json", Arrangement([[1, 0, 0], [0, 1, 0]]).to_json())
        code, out, _ = run(capsys, "incidence", f)
        assert code == 0 and json.loads(out)["lattice"]["multiples"] == []

    def test_malformed(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        assert run(capsys, "incidence", str(p))[0] == 1
        assert run(capsys, "incidence", str(tmp_path / "missing.json"))[0] == 1


class TestIso:
    def test_conjugate_maclanes(self, capsys, tmp_path):
        a = write(tmp_path, "a.json", get("maclane+").arrangement.to_json())
        b = write(tmp_path, "b.json", get("maclane-").arrangement.to_json())
        code, out, _ = run(capsys, "iso", a, b)
        assert code == 0 and len(out.split()) == 8

    def test_none(self, capsys, tmp_path):
        a = write(tmp_path, "a.json", FS_LATTICE.to_json())
        b = write(tmp_path, "b.json", MACLANE_LATTICE.to_json())
        code, out, _ = run(capsys, "iso", a, b)
        assert code == 3 and out.strip() == "none"

    def test_self_identity(self, capsys, tmp_path):
        a = write(tmp_path, "a.json", FS_LATTICE.to_json())
        code, out, _ = run(capsys, "iso", a, a)
        assert code == 0 and out.split() == [str(i) for i in range(1, 10)]


class TestClassifyModuli:
    @pytest.mark.parametrize(
        "lattice,tag",
        [(FS_LATTICE, "FalkSturmfels"), (get("a_pm_i+").expected_lattice, "APlusMinusI"),
         (NINE_THREE_LATTICES["b"], "IrreducibleModuli")],
    )
    def test_classify(self, capsys, tmp_path, lattice, tag):
        f = write(tmp_path, "l.json", lattice.to_json())
        code, out, _ = run(capsys, "classify", f)
        assert code == 0 and json.loads(out)["class"] == tag

    def test_classify_outside(self, capsys, tmp_path):
        f = write(tmp_path, "l.json", HIRZEBRUCH_FAIL.to_json())
        code, out, _ = run(capsys, "classify", f)
        assert code == 2 and json.loads(out)["trace"]

    def test_classify_catalog_entry_file(self, capsys, tmp_path):
        _, shown, _ = run(capsys, "catalog", "show", "fs-")
        f = tmp_path / "fs.json"
        f.write_text(shown)
        code, out, _ = run(capsys, "classify", str(f))
        assert code == 0 and json.loads(out)["class"] == "FalkSturmfels"

    def test_classify_wrong_size(self, capsys, tmp_path):
        f = write(tmp_path, "l.json", MACLANE_LATTICE.to_json())
        assert run(capsys, "classify", f)[0] == 1

    def test_invalid_lattice(self, capsys, tmp_path):
        f = write(tmp_path, "l.json", {"n": 4, "multiples": [[1, 2, 3], [1, 2, 4]]})
        assert run(capsys, "classify", f)[0] == 1

    def test_moduli(self, capsys, tmp_path):
        f = write(tmp_path, "l.json", MACLANE_LATTICE.to_json())
        code, out, _ = run(capsys, "moduli", f)
        data = json.loads(out)
        assert code == 0 and data["point_count"] == 2 and data["splitting_field_d"] == -3

    def test_moduli_nine_three(self, capsys, tmp_path):
        f = write(tmp_path, "l.json", NINE_THREE_LATTICES["a"].to_json())
        code, out, _ = run(capsys, "moduli", f)
        assert code == 0 and json.loads(out)["status"] == "irreducible_family"

    def test_moduli_infeasible(self, capsys, tmp_path):
        fano = {"n": 7, "multiples": [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]}
        f = write(tmp_path, "l.json", fano)
        assert run(capsys, "moduli", f)[0] == 3

    def test_moduli_no_frame(self, capsys, tmp_path):
        f = write(tmp_path, "l.json", {"n": 5, "multiples": [[1, 2, 3, 4, 5]]})
        assert run(capsys, "moduli", f)[0] == 1


class TestVerifyPaper:
    def test_skip_slow(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--skip", "slow", "--format", "json")
        data = json.loads(out)
        assert code == 0
        statuses = {r["name"]: r["status"] for r in data}
        assert statuses["census.nine_three"] == "skipped"
        assert all(s in ("pass", "skipped") for s in statuses.values())
        assert all(r["citation"] for r in data)

    def test_byte_stable(self, capsys):
        first = run(capsys, "verify-paper", "--skip", "slow", "--no-timing")[1]
        second = run(capsys, "verify-paper", "--skip", "slow", "--no-timing")[1]
        assert first == second

    def test_tampered_catalog_fails_with_citation(self, capsys):
        cat = dict(catalog())
        fs = cat["fs+"]
        lines = list(fs.arrangement.lines)
        lines[8] = type(lines[8])([1, 1, 1])
        cat["fs+"] = replace(fs, arrangement=Arrangement(lines, 5))
        args = build_parser().parse_args(["verify-paper", "--skip", "slow"])
        code = cmd_verify_paper(args, cat)
        out = capsys.readouterr().out
        assert code == 2
        assert "[FAIL" in out and "Falk-Sturmfels" in out


def test_catalog_output_is_deterministic(capsys):
    a = run(capsys, "catalog", "show", "a_pm_i-")[1]
    b = run(capsys, "catalog", "show", "a_pm_i-")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arrlab", "catalog", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "fs+" in proc.stdout


def test_bad_arguments(capsys):
    assert run(capsys, "nosuch")[0] == 1
