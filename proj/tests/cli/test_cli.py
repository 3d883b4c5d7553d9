import json
import math
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("POLYAUTO_CLI", "polyauto")
MAPS = Path(os.environ.get("POLYAUTO_MAPS_DIR", Path(__file__).resolve().parents[2] / "maps"))


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


def ok_json(*args):
    r = run(*args)
    assert r.returncode == 0, r.stderr
    return json.loads(r.stdout)


def test_classify_hand_point():
    j = ok_json("classify", "--map", MAPS / "H1.json", "--point", "0,0,10", "--R", 9)
    assert j["class"] == "Escaping"
    assert j["escape_index"] == 0
    assert j["region"]["tag"] == "VRplus"


def test_green_hand_value():
    j = ok_json("green", "--map", MAPS / "H1.json", "--point", "0,0,10", "--R", 9, "--depth", 2)
    assert j["G"] == pytest.approx(math.log(9990) / 4, rel=1e-15)


def test_orbit_csv():
    r = run("orbit", "--map", MAPS / "S1.json", "--point", "0,0,10", "--depth", 3)
    assert r.returncode == 0
    rows = r.stdout.strip().splitlines()
    assert rows[0].startswith("n,region,log_norm")
    assert len(rows) >= 2


def test_boettcher_and_thresholds():
    j = ok_json("boettcher", "--map", MAPS / "H1.json", "--point", "0,0,10", "--R", 9, "--depth", 2)
    assert j["phi"][0] == pytest.approx(9990 ** 0.25, rel=1e-13)
    t = ok_json("thresholds", "--map", MAPS / "H1.json")
    assert t["R"] >= t["R0_plus"] > 0


def test_rigidity_exit_codes():
    r = run("rigidity", "--map", MAPS / "H1.json", "--map2", MAPS / "H1.json")
    assert r.returncode == 0, r.stdout + r.stderr
    assert json.loads(r.stdout)["commutation"]["verdict"] == "ExactEqual"
    r = run("rigidity", "--map", MAPS / "S1.json", "--map2", MAPS / "controls" / "S1q.json")
    assert r.returncode == 1
    j = json.loads(r.stdout)
    assert j["commutation"]["candidates"] == 1728
    assert j["commutation"]["matches"] == 0


def test_verify_exit_codes(tmp_path):
    r = run("verify", "--map", MAPS / "S1.json", "--samples", 20, "--out", tmp_path / "s1")
    assert r.returncode == 0, r.stdout
    assert json.loads((tmp_path / "s1.json").read_text())["pass"]
    r = run("verify", "--map", MAPS / "controls" / "H1_corrupt.json", "--samples", 20)
    assert r.returncode == 1
    assert "FAIL" in r.stdout


@pytest.mark.parametrize(
    "args",
    [
        ["green", "--map", MAPS / "H1.json", "--point", "0,0"],
        ["green", "--map", MAPS / "controls" / "shift_a0.json", "--point", "0,0,1"],
        ["green", "--map", MAPS / "controls" / "skew_delta0.json", "--point", "0,0,1"],
        ["classify", "--map", MAPS / "missing.json", "--point", "0,0,1"],
        ["render", "--map", MAPS / "H1.json", "--slice", "q.re:0:1:2"],
        ["green", "--map", MAPS / "H1.json", "--point", "0,0,1", "--direction", "sideways"],
        ["nonsense"],
    ],
)
def test_input_errors_exit_2(args):
    r = run(*args)
    assert r.returncode == 2, r.stdout + r.stderr


def test_render_is_byte_identical(tmp_path):
    outs = []
    for i, threads in enumerate([1, 8, 1]):
        prefix = tmp_path / f"r{i}"
        r = run("render", "--map", MAPS / "H3.json", "--slice", "y.re:-2:2:32,y.im:-2:2:24@0.3,0.2,0",
                "--threads", threads, "--out", prefix)
        assert r.returncode == 0, r.stderr
        outs.append(((prefix.with_suffix(".pgm")).read_bytes(), (prefix.with_suffix(".csv")).read_bytes()))
    assert outs[0][0].startswith(b"P5\n32 24\n65535\n")
    assert outs[0] == outs[1] == outs[2]


def test_verify_is_byte_identical(tmp_path):
    texts = []
    for i, threads in enumerate([1, 8, 8]):
        prefix = tmp_path / f"v{i}"
        r = run("verify", "--map", MAPS / "H3.json", "--map", MAPS / "F1.json", "--samples", 30, "--seed", 7,
                "--threads", threads, "--out", prefix)
        assert r.returncode == 0, r.stdout
        texts.append((prefix.with_suffix(".json")).read_bytes())
    assert texts[0] == texts[1] == texts[2]
