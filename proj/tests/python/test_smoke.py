"""End-to-end smoke tests of the python bindings."""

import math

import numpy as np
import pytest

import decon2d


def test_version():
    assert decon2d.__version__ == "0.1.0"


def test_kernel_constants():
    c = decon2d.biweight_constants()
    assert abs(c["mu2"] - 1.0 / 7.0) < 1e-9
    assert abs(c["rough_w"] - 5.0 / 7.0) < 1e-9
    assert abs(c["rough_dw"] - 15.0 / 7.0) < 1e-9


def test_models_and_inversion():
    assert set(decon2d.list_models()) == {"uniform", "example1", "example2", "beta33"}
    assert decon2d.model_pdf("example1", 1.0, 1.0) == pytest.approx(1.5625)
    assert decon2d.forward_g("uniform", 0.5, 0.5) == pytest.approx(0.25)

    probs = decon2d.quadrant_probs("uniform", 0.5, 0.5)
    assert probs == pytest.approx({"mm": 0.25, "mp": 0.25, "pm": 0.25, "pp": 0.25})

    # inversion series recover the model exactly
    assert decon2d.invert_f("example1", "pp", 1.0, 1.0) == pytest.approx(1.5625, abs=1e-8)
    total = sum(decon2d.invert_F("example1", tag, 0.9, 1.2) for tag in ("mm", "mp", "pm", "pp"))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_generators_are_deterministic():
    x1, y1 = decon2d.gen_example1(100, 7)
    x2, y2 = decon2d.gen_example1(100, 7)
    assert x1.shape == (100, 2) and y1.shape == (100, 2)
    np.testing.assert_array_equal(x1, x2)
    np.testing.assert_array_equal(y1, y2)
    # X = Y + Z with Z in the unit square
    z = x1 - y1
    assert (z >= 0.0).all() and (z < 1.0).all()

    xs, _ = decon2d.sample_convolved("example1", 50, 99)
    np.testing.assert_array_equal(xs, decon2d.gen_example1(50, 99)[0])


def test_estimator_worked_value():
    one = np.array([[1.0, 1.0]])
    for tag in ("mm", "mp", "pm", "pp"):
        v = decon2d.f_hat(one, tag, 0.5, 0.5, h1=0.6, h2=0.6, h_tilde=0.5, eps=0.1)
        assert v == pytest.approx(7.035183190681676, abs=1e-9)
    assert decon2d.F_hat(one, "mm", 2.0, 2.0, h_tilde=0.5, eps=0.1) == pytest.approx(3.515625)


def test_combined_estimate():
    x, _ = decon2d.gen_example1(400, 5)
    c = decon2d.f_combined(x, 1.0, 1.0, h1=0.3, h2=0.3)
    assert sum(c["weights"].values()) == pytest.approx(1.0, abs=1e-9)
    assert all(w >= 0.0 for w in c["weights"].values())
    assert 0.0 < c["value"] < 5.0

    w = decon2d.optimal_weights(0.5, 0.2, 0.2, 0.1)
    assert w["mm"] == pytest.approx(1.0 / 11.0)
    assert w["pp"] == pytest.approx(5.0 / 11.0)


def test_grid_evaluation():
    one = np.array([[1.0, 1.0]])
    nodes, values = decon2d.evaluate_grid(
        one, lo=0.0, hi=1.0, count_per_unit=2, h1=0.6, h2=0.6,
        h_tilde=0.5, eps=0.1, method="pp", mode="exact",
    )
    assert nodes.shape == (3,)
    assert values.shape == (3, 3)
    assert nodes[1] == pytest.approx(0.5)
    assert values[1, 1] == pytest.approx(7.035183190681676, abs=1e-9)

    with pytest.raises(ValueError):
        decon2d.evaluate_grid(one, lo=0.0, hi=1.05, count_per_unit=10,
                              h1=0.3, h2=0.3, h_tilde=0.4, eps=0.1)


def test_censoring_round_trip():
    rec = decon2d.gen_censored("beta33", 200, 17)
    assert rec.shape == (200, 3)
    assert ((rec[:, 2] >= 1) & (rec[:, 2] <= 4)).all()
    pts = decon2d.censor_transform(rec)
    assert pts.shape == (200, 2)
    offsets = {1: (1, 1), 2: (0, 1), 3: (0, 0), 4: (1, 0)}
    for k in range(200):
        o = offsets[int(rec[k, 2])]
        assert pts[k, 0] == pytest.approx(rec[k, 0] + o[0])
        assert pts[k, 1] == pytest.approx(rec[k, 1] + o[1])


def test_run_mc():
    reports = decon2d.run_mc(1, 100, 0.35, reps=20, points=[(1.0, 1.0)], seed=3)
    assert len(reports) == 1
    r = reports[0]
    assert r["estimator"] == "combined_estimated"
    assert r["true_value"] == pytest.approx(1.5625)
    assert r["predicted_bias"] == pytest.approx(
        0.5 * (1.0 / 7.0) * 2 * 0.35 ** 2 * (-100.0 / 9.0), abs=1e-9
    )
    assert math.isfinite(r["var_est"])
    assert set(r["per_tag_var"]) == {"mm", "mp", "pm", "pp"}

    freports = decon2d.run_mc_F(1, 100, reps=20, points=[(1.0, 1.0)], seed=3)
    assert [r["estimator"] for r in freports] == ["F_mm", "F_mp", "F_pm", "F_pp"]
    for r in freports:
        assert r["true_value"] == pytest.approx(0.25)
