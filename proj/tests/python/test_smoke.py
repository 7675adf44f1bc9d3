"""End-to-end smoke tests for the compiled extension.

Thorough numerical validation lives in the C++ test suite; these check that
the bindings expose working, deterministic entry points.
"""

import math

import numpy as np
import pytest

import pgmix


def small_model(b_rate=0.5, q_scale=None):
    # x = (1,2,4,3) with two balanced groups: M = [x Z] is full rank and the
    # alternating response makes the GE feasibility condition hold at e = 1.
    x = np.array([[1.0], [2.0], [4.0], [3.0]])
    z = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])
    y = np.array([0, 1, 0, 1], dtype=np.int32)
    q = None if q_scale is None else q_scale * np.eye(1)
    return pgmix.make_model(x, z, y, [2], a=[1.0], b=[b_rate], q=q)


def test_rng_streams_are_deterministic_and_distinct():
    a = pgmix.RngStream(7, stream=0)
    b = pgmix.RngStream(7, stream=0)
    assert [a.uniform() for _ in range(16)] == [b.uniform() for _ in range(16)]
    c = pgmix.RngStream(7, stream=1)
    assert a.uniform() != c.uniform()
    assert 0.0 < b.uniform() < 1.0
    assert b.gamma(3.0, 2.0) > 0.0


def test_pg_sampler_moments_and_closed_forms():
    rng = pgmix.RngStream(42, stream=0)
    draws = np.array([pgmix.sample_pg1(0.0, rng) for _ in range(20000)])
    assert draws.min() > 0.0
    assert abs(draws.mean() - 0.25) < 0.01
    assert abs(draws.var() - 1.0 / 24.0) < 0.01

    assert pgmix.pg_mean(1.0, 0.0) == 0.25
    assert pgmix.pg_mean(1.0, 2.0) == pytest.approx(math.tanh(1.0) / 4.0)
    tilted = np.array([pgmix.sample_pg1(2.0, rng) for _ in range(20000)])
    assert abs(tilted.mean() - pgmix.pg_mean(1.0, 2.0)) < 0.005

    total = pgmix.sample_pg_int(3, 1.0, rng)
    assert total > 0.0


def test_pg_density_is_a_density():
    xs = np.linspace(1e-4, 10.0, 20001)
    vals = np.array([pgmix.pg_density(x) for x in xs])
    mass = np.trapezoid(vals, xs)
    assert abs(mass - 1.0) < 1e-4
    assert pgmix.log_pg_density(0.5) == pytest.approx(
        math.log(pgmix.pg_density(0.5)), rel=1e-10
    )


def test_model_validation_and_chains():
    spec = small_model()
    assert spec.n == 4 and spec.p == 1 and spec.q == 2 and spec.r == 1
    assert pgmix.validate(spec) == []
    assert pgmix.blocking_violations(spec) == []

    out = pgmix.run_chain(spec, "BG", 500, burn_in=100, thin=1, seed=9)
    assert out["eta"].shape == (400, 3)
    assert out["tau"].shape == (400, 1)
    assert (out["tau"] > 0.0).all()
    assert out["seconds"] > 0.0

    again = pgmix.run_chain(spec, "BG", 500, burn_in=100, thin=1, seed=9)
    assert np.array_equal(out["eta"], again["eta"])
    assert np.array_equal(out["tau"], again["tau"])

    fg = pgmix.run_chain(spec, "FG", 500, burn_in=100, thin=1, seed=9)
    assert fg["eta"].shape == (400, 3)
    assert not np.array_equal(out["eta"], fg["eta"])  # independent streams

    with pytest.raises(ValueError):
        pgmix.run_chain(spec, "XX", 10)
    with pytest.raises(pgmix.PgmixError):
        pgmix.run_chain(spec, "BG", 10, burn_in=10)  # burn-in must be < m


def test_diagnostics_on_iid_draws():
    rng = np.random.default_rng(0)
    series = rng.standard_normal(10000)
    assert 0.8 < pgmix.ess(series) / 10000 < 1.2
    rho = pgmix.acf(series, 3)
    assert rho[0] == 1.0
    assert abs(rho[1]) < 0.05

    draws = rng.standard_normal((5000, 2))
    assert 0.8 < pgmix.mess(draws) / 5000 < 1.2
    assert pgmix.msj(draws) == pytest.approx(4.0, rel=0.1)


def test_check_ge_reports():
    rep = pgmix.check_ge(small_model())
    assert rep["applicable"]
    assert rep["overall"]
    assert rep["cond4_status"] == "feasible"
    assert np.allclose(rep["witness"], 1.0)

    improper = pgmix.check_ge(small_model(b_rate=0.0))
    assert not improper["cond1_pass"]
    assert not improper["overall"]

    proper = pgmix.check_ge(small_model(q_scale=0.5))
    assert not proper["applicable"]
    assert "not applicable" in proper["note"]
