import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qrjulia.coding import LocalPoint, center_of, shift_tau, to_complex
from qrjulia.qrmap import (CANTOR, XREG, YREG, ZANN_MINUS, ZANN_PLUS, ZQUAD, BoundaryPointError,
                           ParameterError, beltrami, beltrami_fd, beltrami_sweep, classify,
                           evaluate, evaluate_local, evaluate_z_array, gluing_check,
                           inequality_sweep, max_delta, params_new, preimages, seam_anchor)

E = mpmath.e


def test_params_validation():
    with pytest.raises(ParameterError):
        params_new(1.01, 0.05)
    with pytest.raises(ParameterError):
        params_new(2.5)
    with pytest.raises(ParameterError):
        params_new(1.5, 0.1)
    q = params_new(1.5)
    assert 0 < q.delta <= max_delta(1.5)
    with pytest.raises(ParameterError):
        params_new(1.5, 0.05, depth_cutoff=63, max_depth=64)


def test_constants(p):
    assert p.lam == pytest.approx(108.7312731384, rel=1e-12)
    assert p.t0 == pytest.approx(float(4 * E))
    assert p.alpha == 0.0125


def test_classify_examples(p):
    assert classify(2, p).tag == ZQUAD
    r = classify(1.03, p)
    assert (r.tag, r.word, r.level) == (YREG, (1,), 1)
    assert classify(1 + 0.075j, p).tag == ZANN_PLUS
    assert classify(-1.075, p).tag == ZANN_MINUS
    assert classify(1.0, p).tag == XREG
    assert classify(LocalPoint.from_offset((1,) * 24, 0.25), p).tag == CANTOR
    # points given deeper than the cutoff keep their own level
    r = classify(LocalPoint.center((1,) * 30), p)
    assert (r.tag, r.level) == (XREG, 30)


def test_evaluate_against_mpmath(p):
    with mpmath.workdps(30):
        lam = 2 * E / mpmath.mpf("0.05")
        assert evaluate(2, p) == pytest.approx(float(3 * lam), rel=1e-14)
        s1 = 4 * E * mpmath.mpf("0.0125") * mpmath.exp(-1) * mpmath.exp(-mpmath.mpf("1.5"))
        y = 4 * mpmath.exp(mpmath.log(mpmath.mpf("0.03") / s1) / mpmath.mpf("1.5"))
    v = evaluate(1.03, p)
    assert v.real == pytest.approx(float(y), rel=1e-12)
    assert v.real == pytest.approx(7.734910748290387, rel=1e-12)
    assert abs(v.imag) < 1e-15


def test_evaluate_on_annulus_against_formula(p):
    z = 1 + 0.07 * cmath.exp(0.4j)
    zeta = z - 1
    with mpmath.workdps(30):
        lam = 2 * E / mpmath.mpf("0.05")
        zm = mpmath.mpc(zeta.real, zeta.imag)
        want = lam * (zm ** 2 * abs(zm) / mpmath.mpf("0.05") + 2 * zm - zm ** 2)
    assert evaluate(z, p) == pytest.approx(complex(want), rel=1e-13)


def test_centers_map_along_tau(p):
    for u in [(1, -1, 1), (-1, -1, 1, 1), (1,) * 15]:
        out = evaluate_local(LocalPoint.center(u), p)
        assert out == LocalPoint.center(shift_tau(u))
    assert evaluate(center_of((1,), p.scales), p) == 0
    assert evaluate(0, p) == pytest.approx(-p.lam)


def test_seam_anchor(p):
    assert seam_anchor(p, samples=200) <= 1e-10


def test_vectorized_matches_scalar(p):
    rng = np.random.default_rng(3)
    z = rng.uniform(-3, 3, 2000) + 1j * rng.uniform(-3, 3, 2000)
    z = z[(np.abs(z - 1) >= p.delta) & (np.abs(z + 1) >= p.delta)]
    v = evaluate_z_array(z, p)
    for zi, vi in zip(z[:300], v[:300]):
        assert vi == pytest.approx(evaluate(complex(zi), p), rel=1e-14)


def test_beltrami_values(p):
    assert beltrami(2, p) == 0
    assert abs(beltrami(1.03, p)) == pytest.approx(0.2, abs=1e-15)
    assert beltrami(1.03, p) == pytest.approx(beltrami_fd(1.03, p), abs=1e-6)
    z = 1 + 0.075j
    assert beltrami(z, p) == pytest.approx(beltrami_fd(z, p), abs=1e-8)
    assert abs(beltrami(z, p)) == pytest.approx(0.028, abs=1e-3)
    assert beltrami(LocalPoint.from_offset((1, -1), 0.5j), p) == 0


def test_beltrami_rejects_boundaries(p):
    with pytest.raises(BoundaryPointError):
        beltrami(1 + p.delta, p)
    with pytest.raises(BoundaryPointError):
        beltrami(-1 + 2j * p.delta, p)
    with pytest.raises(BoundaryPointError):
        beltrami(LocalPoint((1, 1), 0.0, 1j), p)
    with pytest.raises(BoundaryPointError):
        beltrami(LocalPoint.from_offset((-1,) * 24, -0.25), p)


def test_beltrami_sweep(p):
    b = beltrami_sweep(p, samples=2000)
    assert b["annulus_max"] <= 0.05 / (1 - 0.35) + 1e-6
    assert b["y_min"] >= 0.2 - 1e-6 and b["y_max"] <= 0.2 + 1e-6
    assert max(b["x_max"], b["zquad_max"]) <= 1e-9
    assert b["fd_max_rel_error"] <= 1e-4


def test_preimage_examples(p):
    pts = preimages(-1, p)
    assert sum(i for _, i in pts) == 2
    xs = sorted(to_complex(z, p.scales).real for z, _ in pts)
    assert xs == pytest.approx([-0.9972108729981446, 0.9972108729981446], abs=1e-14)
    assert preimages(-p.lam, p) == [(0j, 2)]
    xs = sorted(complex(z).real for z, _ in preimages(3 * p.lam, p))
    assert xs == pytest.approx([-2, 2], rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.complex_numbers(max_magnitude=60, allow_nan=False, allow_infinity=False))
def test_preimages_total_index_and_forward_check(w):
    p = params_new(1.5, 0.05)
    try:
        pts = preimages(w, p)
    except BoundaryPointError:
        return
    assert sum(i for _, i in pts) == 2
    for z, _ in pts:
        assert to_complex(evaluate_local(z, p), p.scales) == pytest.approx(w, rel=1e-8, abs=1e-8)


def test_preimages_of_local_points(p):
    q = LocalPoint((1, -1, -1), 0.7, cmath.exp(1j))
    pts = preimages(q, p)
    assert len(pts) == 2
    for z, _ in pts:
        assert evaluate_local(z, p) == pytest.approx(q) or \
            abs(evaluate_local(z, p).log_rho - q.log_rho) < 1e-12


def test_gluing(p):
    worst, seams = gluing_check(p, samples=2000, per_seam=True)
    assert worst <= 1e-9
    assert set(seams) == {"z_delta", "z_2delta", "xy_s", "xy_t"}


def test_inequalities(p):
    r = inequality_sweep(p, samples=20_000)
    assert r["min_abs_f_on_Z"] >= 4
    assert r["min_growth_ratio"] >= 3
