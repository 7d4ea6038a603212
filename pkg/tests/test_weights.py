from __future__ import annotations

import math

import pytest

from steinercut import INFINITY, MAX_FINITE, ExtWeight


def test_basic_arithmetic():
    assert ExtWeight(2) + ExtWeight(3) == ExtWeight(5)
    assert ExtWeight(0) + 7 == ExtWeight(7)
    assert 7 + ExtWeight(0) == ExtWeight(7)


def test_saturation():
    assert ExtWeight.INFINITY + 5 == ExtWeight.INFINITY
    assert 5 + ExtWeight.INFINITY == INFINITY
    assert INFINITY + INFINITY == INFINITY
    assert INFINITY.is_infinite


def test_total_order():
    vals = [INFINITY, ExtWeight(3), ExtWeight(0), ExtWeight(3), ExtWeight(10)]
    s = sorted(vals)
    assert s[0] == ExtWeight(0)
    assert s[-1] == INFINITY
    assert ExtWeight(2) < ExtWeight(3) <= ExtWeight(3) < INFINITY
    assert not (INFINITY < INFINITY)


def test_float_round_trip():
    for v in [0, 1, 17, MAX_FINITE]:
        w = ExtWeight(v)
        assert ExtWeight.from_float(w.to_float()) == w
    assert ExtWeight.from_float(math.inf) == INFINITY
    assert math.isinf(INFINITY.to_float())


def test_rejects_bad_values():
    with pytest.raises((TypeError, ValueError)):
        ExtWeight(-1)
    with pytest.raises((TypeError, ValueError)):
        ExtWeight(1.5)
    with pytest.raises((TypeError, ValueError)):
        ExtWeight(True)
    with pytest.raises((TypeError, ValueError)):
        ExtWeight.from_float(float("nan"))
    with pytest.raises(OverflowError):
        ExtWeight(MAX_FINITE + 1).to_float()


def test_equality_across_types():
    assert ExtWeight(4) == 4
    assert ExtWeight(4) == 4.0
    assert ExtWeight(4) != 5
    assert INFINITY == float("inf")
    assert hash(ExtWeight(4)) == hash(ExtWeight(4))


def test_str_repr():
    assert str(ExtWeight(12)) == "12"
    assert str(INFINITY) == "inf"
    assert int(ExtWeight(12)) == 12
    with pytest.raises((OverflowError, ValueError)):
        int(INFINITY)
