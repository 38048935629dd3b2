import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsm_bargmann import parallel
from gsm_bargmann.clifford import Signature
from gsm_bargmann.config import RunConfig
from gsm_bargmann.quadrature import CapabilityError
from gsm_bargmann.report import CSV_FIELDS, CheckRecord, SuiteReport, merge_reports
from gsm_bargmann.sampling import sample_split_points, sample_xi
from gsm_bargmann.suites import SUITES, run_suite

# -- reports ----------------------------------------------------------------------


def test_check_record_pass_and_nan():
    assert CheckRecord("a", "x", 1e-9, 1e-8).passed
    assert not CheckRecord("a", "x", 1e-7, 1e-8).passed
    nan = CheckRecord("a", "x", float("nan"), 1.0)
    assert not nan.passed
    assert nan.as_dict()["deviation"] == "nan"


def test_report_schema_and_key_order():
    rep = SuiteReport("demo", {"p": 0})
    rep.add("first", "anchor one", 0.0, 1e-10)
    rep.add("second", "anchor two", 2.0, 1.0)
    doc = json.loads(rep.to_json())
    assert list(doc) == ["suite", "config", "checks", "pass", "elapsed_ms"]
    assert list(doc["checks"][0]) == ["name", "anchor", "deviation", "tol", "pass"]
    assert doc["pass"] is False and doc["elapsed_ms"] is None
    assert [c.name for c in rep.failures()] == ["second"]
    assert rep.to_json().endswith("}\n")


def test_report_csv():
    rep = SuiteReport("demo")
    rep.add("a, with comma", "anc", 0.5, 1.0)
    lines = rep.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    assert lines[1] == 'demo,"a, with comma",anc,0.5,1.0,true'


def test_merge_reports():
    a, b = SuiteReport("a"), SuiteReport("b")
    a.add("x", "", 0.0, 1.0)
    b.add("y", "", 2.0, 1.0)
    m = merge_reports("all", [a, b])
    assert [c.name for c in m.checks] == ["a: x", "b: y"]
    assert not m.passed


@given(st.lists(st.tuples(st.floats(0, 10, allow_nan=False), st.floats(0, 10, allow_nan=False)), max_size=8))
def test_report_passes_iff_all_checks_pass(pairs):
    rep = SuiteReport("p")
    for dev, tol in pairs:
        rep.add("c", "", dev, tol)
    assert rep.passed == all(d <= t for d, t in pairs)
    assert json.loads(rep.to_json())["pass"] == rep.passed


# -- config -----------------------------------------------------------------------


def test_run_config_defaults_and_validation():
    cfg = RunConfig()
    assert cfg.rule_orders().x_order == 24 and cfg.ck_controls().xi_order == 60
    assert cfg.tolerance(1e-6) == 1e-6
    assert RunConfig(tol=1e-3).tolerance(1e-6) == 1e-3
    assert cfg.with_signature(1, 2).p == 1
    assert cfg.as_dict()["generator"] == "PCG64"
    for bad in ({"q": 0}, {"p": -1}, {"x_order": 0}, {"tol": 0.0}, {"tol": -1.0}):
        with pytest.raises(ValueError):
            RunConfig(**bad)


def test_rng_streams_are_reproducible_and_distinct():
    cfg = RunConfig(seed=7)
    a = cfg.rng(1).random(4)
    assert np.array_equal(a, RunConfig(seed=7).rng(1).random(4))
    assert not np.array_equal(a, cfg.rng(2).random(4))
    assert not np.array_equal(a, RunConfig(seed=8).rng(1).random(4))


# -- sampling ---------------------------------------------------------------------


@given(st.integers(0, 2), st.integers(1, 3), st.integers(0, 2 ** 32 - 1))
def test_sampled_points_in_region(p, q, seed):
    sig = Signature(p, q)
    rng = np.random.default_rng(seed)
    x, y = sample_split_points(sig, 30, rng)
    assert x.shape == (30, p + 1) and y.shape == (30, q)
    assert np.all(np.linalg.norm(x, axis=1) <= 2 + 1e-12)
    r = np.linalg.norm(y, axis=1)
    assert np.all((r >= 0.1 - 1e-12) & (r <= 2 + 1e-12))
    xi = sample_xi(sig, 5, rng)
    assert xi.shape == (5, p + 1) and np.all(np.abs(xi) <= 1.5)


# -- parallel fan-out ----------------------------------------------------------------


def _work(a, b):
    # non-associative floating work so order changes would show up
    return np.cumsum(np.sin(a) * np.exp(b))[:, None] * np.ones((1, 3))


@pytest.mark.parametrize("workers", ["1", "2", "5"])
def test_map_chunks_independent_of_workers(monkeypatch, workers):
    a = np.linspace(0, 10, 1003)
    b = np.linspace(-1, 1, 1003)
    monkeypatch.setenv("GSM_NUM_WORKERS", "1")
    ref = parallel.map_chunks(_work, a, b, chunk=64)
    monkeypatch.setenv("GSM_NUM_WORKERS", workers)
    got = parallel.map_chunks(_work, a, b, chunk=64)
    assert got.tobytes() == ref.tobytes()
    assert got.shape == (1003, 3)


def test_map_chunks_empty_and_worker_parsing(monkeypatch):
    out = parallel.map_chunks(lambda a: a[:, None], np.zeros(0), chunk=8)
    assert out.shape == (0, 1)
    monkeypatch.setenv("GSM_NUM_WORKERS", "abc")
    assert parallel.num_workers() == 1
    monkeypatch.setenv("GSM_NUM_WORKERS", "0")
    assert parallel.num_workers() == 1
    monkeypatch.setenv("GSM_NUM_WORKERS", "3")
    assert parallel.num_workers() == 3


def test_fourier_route_bits_stable_across_workers(monkeypatch):
    from fractions import Fraction

    from gsm_bargmann.ck import ck_hermite_gaussian_batch
    from gsm_bargmann.functions import HermiteGaussian

    sig = Signature(0, 1)
    x, y = sample_split_points(sig, 5000, np.random.default_rng(0))
    f0 = HermiteGaussian.monomial_gaussian(sig, (2,), Fraction(1, 4))
    monkeypatch.setenv("GSM_NUM_WORKERS", "1")
    a = ck_hermite_gaussian_batch(f0, x, y, "fourier")
    monkeypatch.setenv("GSM_NUM_WORKERS", "4")
    b = ck_hermite_gaussian_batch(f0, x, y, "fourier")
    assert a.tobytes() == b.tobytes()


# -- suites -------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["clifford", "kernel", "quadrature", "schrodinger"])
def test_quick_suites_pass(name):
    rep = run_suite(name, RunConfig())
    assert rep.passed, [c for c in rep.checks if not c.passed]
    assert rep.elapsed_ms is None


def test_suite_timing_and_unknown():
    assert run_suite("quadrature", RunConfig(), timing=True).elapsed_ms >= 0
    with pytest.raises(ValueError):
        run_suite("nope", RunConfig())
    assert SUITES == ("clifford", "kernel", "ck", "quadrature", "isometry", "basis", "schrodinger")


def test_suite_capability_limits():
    with pytest.raises(CapabilityError):
        run_suite("clifford", RunConfig(p=3, q=4))
    with pytest.raises(CapabilityError):
        run_suite("quadrature", RunConfig(q=4))


def test_tol_override_can_fail_suite():
    rep = run_suite("quadrature", RunConfig(tol=1e-300))
    assert not rep.passed
    assert all(c.tol == 1e-300 for c in rep.checks)


def test_suite_check_deviations_finite():
    rep = run_suite("kernel", RunConfig(p=1, q=2))
    assert all(math.isfinite(c.deviation) for c in rep.checks)
