import math

import pytest

import zerofree


def test_thresholds():
    r = zerofree.thresholds(3.0, 0.8, 11, "pos")
    assert abs(r["bound"] - 41.6) < 0.1
    s = zerofree.setcover_thresholds(5, 1.0)
    assert abs(s["bound"] - 1.45399) < 1e-3


def test_certify():
    c = zerofree.certify("bounded", beta=3.0, gamma=0.8, delta=11, lambda0=41.0, k=0.01)
    assert c["verdict"] == "pass"
    assert c["min_margin"] > 0
    f = zerofree.certify("setcover", delta=5, mu=1.0, eta0=1.5)
    assert f["verdict"] == "fail"
    assert any(w["check"] == "H" for w in f["failure_witnesses"])


def test_errors():
    with pytest.raises(zerofree.Error):
        zerofree.certify("rect", beta=2.0, gamma=0.5, delta=4, lambda0=1.0)
    with pytest.raises(ValueError):
        zerofree.thresholds(-1.0, 0.0, 3)


def test_partition_and_roots():
    k3 = [(0, 1), (1, 2), (0, 2)]
    assert zerofree.partition_2spin(1.0, 0.0, 3, k3, 1.0) == pytest.approx(4.0)
    coeffs = zerofree.polynomial_2spin(1.0, 0.0, 3, k3)
    assert coeffs[:2] == [1.0, 3.0]
    (r,) = zerofree.roots(coeffs[:2])
    assert r == pytest.approx(-1.0 / 3.0)
    assert zerofree.partition_setcover(1, [[0]], -1.0, 2.0) == pytest.approx(1.0)


def test_scan_and_approx():
    rep = zerofree.zero_scan(1.0, 0.0, 3, 3.0, margin=1e-3, family="random:n=8,count=20")
    assert rep["verdict"] == "pass"
    a = zerofree.approx([1.0, 3.0], 0.1, 30)
    assert a["relative_error"] < 1e-10
    b = zerofree.approx([1.0, 3.0], 3.15, 40, apex=4.0 / 27.0, angle_deg=115.0)
    assert b["relative_error"] < 1e-3
    assert math.isfinite(b["value"][0])
