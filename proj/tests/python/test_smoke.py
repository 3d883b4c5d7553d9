import math
import os
from pathlib import Path

import pytest

import polyauto

MAPS = Path(os.environ.get("POLYAUTO_MAPS_DIR", Path(__file__).resolve().parents[2] / "maps"))


def load(name):
    return polyauto.load_map(str(MAPS / f"{name}.json"))


def test_load_and_apply_round_trip():
    h = load("H1")
    assert h.family == "skew-affine"
    assert h.dimension == 3
    p = [0.5, 1 + 0.5j, 20]
    back = h.apply(h.apply(p), "inverse")
    assert max(abs(a - b) for a, b in zip(back, p)) < 1e-12


def test_hand_example_image():
    h = load("H1")
    assert h.apply([0.5, 1, 20]) == [1, 20, 399]


def test_green_hand_values():
    g = polyauto.green(load("H1"), [0, 0, 10], depth=2, R=9)
    assert g["class"] == "Escaping"
    assert g["values"][1] == pytest.approx(math.log(100) / 2, rel=1e-15)
    assert g["values"][2] == pytest.approx(math.log(9990) / 4, rel=1e-15)


def test_green_of_bounded_point_is_zero():
    g = polyauto.green(load("H1"), [0, 0, 0])
    assert g["class"] == "Bounded"
    assert g["value"] == 0.0


def test_classify_and_boettcher():
    cls, idx = polyauto.classify(load("S1"), [0, 0, 10], R=5, N=50)
    assert (cls, idx) == ("Escaping", 0)
    b = polyauto.boettcher(load("H1"), [0, 0, 10], depth=2, R=9)
    assert b["branch_ok"]
    assert math.exp(b["log_phi"].real) == pytest.approx(9990 ** 0.25, rel=1e-13)


def test_arity_and_schema_errors():
    with pytest.raises(polyauto.ArityMismatch):
        polyauto.green(load("H1"), [0, 0])
    with pytest.raises(polyauto.InputError):
        polyauto.map_from_json('{"family":"shift","k":3,"nu":1,"a":0,"p":[0,0,1]}')
    with pytest.raises(ValueError):
        load("does_not_exist")


def test_render_is_deterministic_across_threads():
    h = load("H3")
    a = polyauto.render(h, "y.re:-2:2:16,y.im:-2:2:12@0.3,0.2,0", threads=1)
    b = polyauto.render(h, "y.re:-2:2:16,y.im:-2:2:12@0.3,0.2,0", threads=8)
    assert (a["width"], a["height"]) == (16, 12)
    assert a["pgm"].startswith(b"P5\n16 12\n65535\n")
    assert a["pgm"] == b["pgm"] and a["csv"] == b["csv"]


def test_verify_report():
    rep = polyauto.verify([MAPS / "S1.json"], samples=20)
    assert rep["pass"]
    assert rep["total"] == len(rep["checks"]) > 0
    bad = polyauto.verify([MAPS / "controls" / "H1_corrupt.json"], samples=20)
    assert not bad["pass"]
