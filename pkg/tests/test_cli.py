from __future__ import annotations

import json

import pytest

from rackcollapse import SCHEMA
from rackcollapse.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_group_build_sz2(capsys):
    code, doc, _ = _run(capsys, "group", "build", "--family", "sz", "--h", "0")
    assert code == 0
    assert doc["schema"] == SCHEMA and doc["command"] == "group"
    assert doc["group"]["order"] == 20 and doc["group"]["degree"] == 5
    assert doc["config"]["seed"] == 0 and "budgets" in doc["config"]


def test_classes_ree(capsys):
    code, doc, _ = _run(capsys, "classes", "--family", "ree-g2-3")
    assert code == 0
    assert sum(c["size"] for c in doc["classes"]) == 1512


def test_classify_order4_gives_F(capsys, tmp_path):
    code, doc, _ = _run(capsys, "classify", "--family", "sz", "--h", "1", "--class-order", "4",
                        "--kinds", "F")
    assert code == 0
    assert len(doc["classes"]) == 2
    for cls in doc["classes"]:
        kinds = [c["kind"] for c in cls["certificates"]]
        assert "F" in kinds and all(c["verified"] for c in cls["certificates"])
    path = tmp_path / "certs.json"
    path.write_text(json.dumps(doc))
    code, res, _ = _run(capsys, "rack", "verify-cert", str(path))
    assert code == 0
    assert len(res["results"]) == 2 and all(r["verified"] for r in res["results"])


def test_verify_cert_rejects_tampered(capsys, tmp_path):
    code, doc, _ = _run(capsys, "classify", "--family", "sz", "--h", "0", "--kinds", "D")
    certs = [c for cls in doc["classes"] for c in cls["certificates"]]
    assert certs == []  # every class of the order-20 group is kthulhu
    code, doc, _ = _run(capsys, "classify", "--family", "psl2", "--q", "8", "--class-order", "7",
                        "--class-index", "3", "--kinds", "C")
    cert = doc["classes"][0]["certificates"][0]
    bad = dict(cert, witnesses=[cert["witnesses"][0], cert["witnesses"][0]])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, res, _ = _run(capsys, "rack", "verify-cert", str(path))
    assert code == 1 and res["results"][0]["verified"] is False


def test_verify_paper(capsys):
    code, doc, _ = _run(capsys, "verify-paper", "--h-max", "1")
    assert code == 0
    assert doc["passed"] >= 20 and doc["failed"] == []
    names = [c["name"] for c in doc["checks"]]
    assert len(set(names)) == len(names)


@pytest.mark.parametrize("fam,extra,mode,unknown", [
    ("sz", ["--h", "1"], "auto", 0),
    ("sz", ["--h", "1"], "explicit", 0),
    ("ree-g2-3", [], "auto", 4),
    ("ree-g2-3", [], "explicit", 0),
])
def test_braiding_commands(capsys, fam, extra, mode, unknown):
    code, doc, _ = _run(capsys, "braiding", "--family", fam, *extra, "--abelian", mode)
    assert code == 0
    assert doc["unknown"] == unknown
    assert sum(c["verdict"]["outcome"] == "Infinite" for c in doc["characters"]) \
        == len(doc["characters"]) - unknown


def test_rack_axioms(capsys):
    code, doc, _ = _run(capsys, "rack", "axioms", "--family", "sz", "--h", "0")
    assert code == 0 and len(doc["classes"]) == 5
    assert all(c["ok"] and c["mode"] == "exhaustive" for c in doc["classes"])


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["group", "build"],
    ["group", "build", "--family", "sz"],
    ["classify", "--family", "sz", "--h", "0", "--class-order", "9"],
    ["braiding", "--family", "psl2", "--q", "8"],
    ["rack", "verify-cert", "/nonexistent/file.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    capsys.readouterr()


def test_same_seed_byte_identical(capsys):
    argv = ["--seed", "5", "classify", "--family", "psl2", "--q", "8", "--class-order", "7",
            "--kinds", "C"]
    _, _, first = _run(capsys, *argv)
    _, _, second = _run(capsys, *argv)
    assert first == second
    argv = ["rack", "axioms", "--family", "psl2", "--q", "8", "--seed", "5"]
    assert _run(capsys, *argv)[2] == _run(capsys, *argv)[2]


def test_output_file(capsys, tmp_path):
    out = tmp_path / "g.json"
    code = run(["group", "build", "--family", "ree-g2-3", "--output", str(out), "--pretty"])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text())["group"]["order"] == 1512
