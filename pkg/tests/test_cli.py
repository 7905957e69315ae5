"""Command-line verbs, output and exit codes."""
from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from cellular_dga import builders, front_model
from cellular_dga.cli import EXIT_CAP, EXIT_INVALID, EXIT_NO_AUG, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture
def saucer(tmp_path):
    path = tmp_path / "saucer.json"
    assert run("gen", "saucer", "-o", path)[0] == EXIT_OK
    return path


@pytest.fixture
def torus(tmp_path):
    path, loops = tmp_path / "torus.json", tmp_path / "loops.json"
    assert run("gen", "torus", "-o", path, "--loops-out", loops)[0] == EXIT_OK
    return path, loops


def test_validate_ok(saucer):
    assert run("validate", saucer) == (EXIT_OK, "ok\n")


def test_validate_bad_cusp_pair(tmp_path):
    doc = front_model.save(builders.flying_saucer())
    doc["cells"]["c2"][0]["sheets"][0]["maslov"] = 2
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, text = run("validate", path)
    assert code == EXIT_INVALID and "cusp maslov step" in text


def test_malformed_json_is_invalid(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n  \"schema\": \n}")
    assert run("validate", path)[0] == EXIT_INVALID


def test_dga_print(saucer):
    code, text = run("dga", saucer, "--print")
    assert code == EXIT_OK
    assert text == "generators 1\nd^2 = 0: yes\ndegree -1: yes\nd c[D](1,2) = 0\n"


def test_augs_list_and_count(saucer):
    assert run("augs", saucer, "--rho", 1, "--list") == (EXIT_OK, "0: (all zero)\n1: c[D](1,2)\n")
    assert run("augs", saucer, "--rho", 0, "--count", "--brute-force") == (EXIT_OK, "1\n")


def test_augs_exists_exit_codes(tmp_path):
    graph, fc = tmp_path / "tet.json", tmp_path / "tz_tet.json"
    assert run("graph", "tetrahedron", "-o", graph)[0] == EXIT_OK
    assert run("gen", "tz", "--graph", graph, "-o", fc)[0] == EXIT_OK
    assert run("augs", fc, "--rho", 1, "--exists") == (EXIT_NO_AUG, "no\n")
    conormal = tmp_path / "conormal.json"
    run("gen", "conormal", "-o", conormal)
    assert run("augs", conormal, "--rho", 1, "--exists") == (EXIT_OK, "yes\n")


def test_cap_exceeded(torus):
    fc, _ = torus
    assert run("augs", fc, "--rho", 1, "--list", "--cap", 3)[0] == EXIT_CAP
    assert run("augs", fc, "--rho", 1, "--count", "--brute-force", "--cap", 2)[0] == EXIT_CAP


def test_usage_errors(saucer):
    assert run("augs", saucer, "--list")[0] == EXIT_USAGE
    assert run("augs", saucer, "--rho", 1)[0] == EXIT_USAGE
    assert run("gen", "tz", "-o", saucer)[0] == EXIT_USAGE
    assert run("homology", saucer, "--rho", 1, "--aug", 9, "--vertex", "v")[0] == EXIT_USAGE
    assert run("validate", saucer.parent / "missing.json")[0] == EXIT_USAGE


def test_homology_verb(torus):
    fc, _ = torus
    code, text = run("homology", fc, "--rho", 1, "--aug", 0, "--vertex", "w")
    assert code == EXIT_OK and "total 2" in text


def test_monodromy_verb(torus):
    fc, loops = torus
    code, text = run("monodromy", fc, "--rho", 1, "--aug", 0, "--loop", loops)
    assert code == EXIT_OK
    assert "loop transverse at w" in text and "trivial: no" in text


def test_bad_loop_file(torus, tmp_path):
    fc, _ = torus
    bad = tmp_path / "bad_loop.json"
    bad.write_text(json.dumps({"schema": "loop/1", "basepoint": "w", "moves": [{"move": "jump"}]}))
    assert run("monodromy", fc, "--rho", 1, "--aug", 0, "--loop", bad)[0] == EXIT_INVALID


def test_obstruct_json(torus):
    fc, loops = torus
    code, text = run("obstruct", fc, "--rho", 1, "--loops", loops, "--json")
    doc = json.loads(text)
    assert code == EXIT_OK and doc["obstructs_trivial_bundle"] and doc["augmentation_count"] == 16


def test_output_is_deterministic(torus):
    fc, loops = torus
    assert run("obstruct", fc, "--rho", 0, "--loops", loops) == run("obstruct", fc, "--rho", 0, "--loops", loops)
    assert run("augs", fc, "--rho", 1, "--list") == run("augs", fc, "--rho", 1, "--list")


def test_gen_files_are_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("gen", "tz_local", "-o", a)
    run("gen", "tz_local", "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(saucer):
    proc = subprocess.run([sys.executable, "-m", "cellular_dga", "validate", str(saucer)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ok\n"
