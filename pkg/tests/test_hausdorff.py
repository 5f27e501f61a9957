import math

import mpmath
import pytest

from qrjulia.hausdorff import (CSV_HEADER, boxdim_sequence, cover_report, cover_sum,
                               dim_estimate, limit_value, neg_log_2s)
from qrjulia.qrmap import params_new


def mp_cover(K, delta, n):
    with mpmath.workdps(50):
        K, delta = mpmath.mpf(K), mpmath.mpf(delta)
        t0 = 4 * mpmath.e
        alpha = delta / 4
        inner = K ** -n * (-mpmath.log(2 * t0) - n * mpmath.log(alpha)) + (K - K ** -n) / (K - 1)
        return inner, inner ** (-mpmath.log(2) / mpmath.log(K))


def test_frozen_values(p):
    inner, s = mp_cover("1.5", "0.05", 12)
    assert float(inner) == pytest.approx(3.366136562, rel=1e-9)
    sd, sc = cover_sum(p, 12)
    assert sd == pytest.approx(float(s), rel=1e-12)
    assert sc == pytest.approx(0.125563193793, rel=1e-10)
    inner, s = mp_cover("1.5", "0.05", 40)
    assert float(inner) == pytest.approx(3.0000153926, rel=1e-10)
    assert cover_sum(p, 40)[1] == pytest.approx(float(s), rel=1e-12)


@pytest.mark.parametrize("K", [1.2, 1.5, 1.8])
def test_direct_equals_closed(K):
    q = params_new(K, 0.05)
    for n in range(1, 41):
        sd, sc = cover_sum(q, n)
        assert abs(sd - sc) <= 1e-10 * abs(sc)


def test_limit_value():
    with mpmath.workdps(30):
        oracle = mpmath.mpf(3) ** (-mpmath.log(2) / mpmath.log(mpmath.mpf("1.5")))
    assert limit_value(params_new(1.5, 0.05)) == pytest.approx(float(oracle), rel=1e-14)
    assert limit_value(params_new(1.5, 0.05)) == pytest.approx(0.152881814200, rel=1e-10)
    assert limit_value(params_new(4 / 3, 0.03)) == pytest.approx(0.0354310571, rel=1e-8)
    assert limit_value(params_new(1.5, 0.01)) == limit_value(params_new(1.5, 0.05))


@pytest.mark.parametrize("K", [1.2, 1.5, 1.8])
def test_cover_sum_near_limit_at_40(K):
    q = params_new(K, 0.05)
    lim = limit_value(q)
    assert abs(cover_sum(q, 40)[1] - lim) <= 1e-3 * lim


def test_domain_errors(p):
    with pytest.raises(ValueError):
        cover_sum(p, 0)
    with pytest.raises(ValueError):
        cover_sum(p, 65)
    with pytest.raises(ValueError):
        boxdim_sequence(p, 1)


def test_dimension_estimates(p):
    assert neg_log_2s(p, 12) == pytest.approx(436.743891746, rel=1e-11)
    assert dim_estimate(p, 12) == pytest.approx(0.0190449513, rel=1e-8)
    rows = boxdim_sequence(p, 30)
    assert 0 < rows[1][1] < 1
    d = [v for _, v in rows]
    assert all(d[n] < d[n - 1] for n in range(6, len(d)))
    assert dim_estimate(p, 24) < dim_estimate(p, 12) <= 0.05


def test_repeatable(p):
    assert cover_sum(p, 17) == cover_sum(p, 17)


def test_csv(p):
    text = cover_report(p, 3).to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 4
    assert lines[1].split(",")[0] == "1"
    assert float(lines[2].split(",")[3]) == cover_sum(p, 2)[1]
