"""Smoke tests for the python surface of the compiled module."""

import json
import math

import numpy as np
import pytest

import disclab


def test_bessel_values():
    assert disclab.bessel_j(0.0, 0.0).value == 1.0
    v = disclab.bessel_j(0.5, math.pi / 2)
    assert abs(v.value - 2.0 / math.pi) < 1e-9
    assert v.abs_error_bound < 1e-9
    assert abs(disclab.bessel_j(0.0, 2.404825557695773).value) < 1e-9

    tag, rho = disclab.classify_regime(100.0, 200.0)
    assert tag == "oscillatory"
    jb, jpb = disclab.vdc_bound(100.0, 400.0)
    assert jb == pytest.approx(0.05)


def test_bessel_vector_matches_scalar():
    js = disclab.bessel_j_integer_all(12, 7.5)
    for k in (0, 3, 12):
        assert js[k] == pytest.approx(disclab.bessel_j(float(k), 7.5).value, abs=1e-10)


def test_kernel_oracle_point():
    val = disclab.kernel_k(0.5, math.pi, math.pi)
    assert abs(val - 1.0 / math.pi) < 1e-8
    total = sum(disclab.kernel_split(2.0, j, 3.0, 5.0) for j in ("j1", "j2", "j3", "j4"))
    assert abs(total - disclab.kernel_k(2.0, 3.0, 5.0)) < 1e-10


def test_grid_profile_and_norms():
    g = disclab.make_grid("linear", 2.0, 257)
    prof = disclab.RadialProfile.sample(g, lambda r: 1.0 if r <= 1.0 else 0.0)
    value, warned = disclab.weighted_lp_norm(prof, 2.0, 1.0)
    assert value == pytest.approx(1.0 / math.sqrt(2.0), abs=5e-3)
    assert not warned


def test_disc_multiplier_idempotent():
    n, L = 64, 8.0
    x = (np.arange(n) * L / n) - L / 2
    xx, yy = np.meshgrid(x, x, indexing="ij")
    f = np.exp(-(xx**2 + yy**2)).astype(np.complex128)
    t1 = disclab.apply_multiplier("disc", f, L, R=0.9)
    t2 = disclab.apply_multiplier("disc", t1, L, R=0.9)
    assert np.max(np.abs(t2 - t1)) < 1e-12
    assert disclab.mixed_norm_grid(f, L, 2.0) > 0.0


def test_universal_kakeya_indicator():
    g = disclab.make_grid("linear", 4.0, 1025)
    prof = disclab.RadialProfile.sample(g, lambda r: 1.0 if r <= 1.0 else 0.0)
    v = disclab.universal_kakeya_radial(prof, 2.0, n_u=64, n_c=256)
    assert v == pytest.approx(2.0 / 3.0, abs=5e-3)


def test_weights_surface():
    char, trace = disclab.ap_characteristic(1.0, [1.0] * 256, 2.0)
    assert char == 1.0
    w = disclab.a1_construct(1.0, [1.0] * 64, 2.0)
    assert all(abs(v - 1.0) < 1e-12 for v in w)


def test_extension_zero_at_bessel_root():
    # grid chosen so the root of J_0 lands exactly on the middle node
    r0 = 2.404825557695773 / (2.0 * math.pi)
    g = disclab.make_grid("linear", 2.0 * r0, 257)
    prof = disclab.extension_profile([1.0 + 0.0j], 2, g)
    assert abs(prof.values[128]) < 1e-8


def test_tube_brush():
    spec = disclab.ShellSpec(2, 1.0, 1.0, 1.0, 1.0 / 64.0)
    tubes = disclab.generate_brush(spec)
    assert len(tubes) > 100
    (p, q) = tubes[0]
    assert math.hypot(p[0], p[1]) == pytest.approx(2.0, abs=1e-9)
    assert math.hypot(q[0], q[1]) == pytest.approx(1.0, abs=1e-9)


def test_run_suite_smoke(tmp_path):
    params = json.dumps({"vdc_nu_max": 16.0, "vdc_samples": 64.0, "prodj_nu_max": 64.0})
    raw = disclab.run_suite("bessel-check", seed=7, out_dir=str(tmp_path), params_json=params)
    rep = json.loads(raw)
    assert rep["suite"] == "bessel-check"
    assert {c["id"] for c in rep["checks"]} >= {"C01", "C06"}
