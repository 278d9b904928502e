import dataclasses
import io
import math
from functools import lru_cache

import numpy as np
import pytest

import oracles
from sincderiv import bench, jets
from sincderiv.bench import ErrorReport, SweepRow
from sincderiv.exceptions import DomainError, UsageError
from sincderiv.sincdiff import DecayProfile


@lru_cache(maxsize=None)
def sweep(fid, formula):
    return bench.run_sweep(fid, formula, 2)


def test_corpus_and_profiles():
    ids = [f.id for f in bench.corpus()]
    assert ids == ["example1", "example2"]
    e1, e2 = bench.EXAMPLE1, bench.EXAMPLE2
    assert (e1.profile_se.alpha, e1.profile_se.beta, e1.profile_se.d) == (0.5, 1.0, 1.57)
    assert (e1.profile_imp.alpha, e1.profile_imp.beta, e1.profile_imp.d) == (0.5, 1.0, 3.14)
    assert (e2.profile_se.alpha, e2.profile_se.beta, e2.profile_se.d) == (2.0, math.pi / 4, 1.57)
    assert (e2.profile_imp.alpha, e2.profile_imp.beta, e2.profile_imp.d) == (2.0, math.pi / 2, 2.07)
    assert str(e1.map_for("stenger")) == "SE2" and str(e1.map_for("improved")) == "IMP2"
    assert str(e2.map_for("stenger")) == "SE4" and str(e2.map_for("improved")) == "IMP4"
    with pytest.raises(UsageError):
        bench.get_function("example3")
    with pytest.raises(UsageError):
        e1.map_for("newton")


def test_example1_value_at_one():
    # sqrt(1/2) e^-1 (1 - e^-1)^2
    expected = math.sqrt(0.5) * math.exp(-1) * (1 - math.exp(-1)) ** 2
    assert bench.EXAMPLE1.eval(1.0) == pytest.approx(expected, rel=1e-15)
    assert bench.EXAMPLE1.eval(1.0) == pytest.approx(0.1039418281489375, rel=1e-14)


@pytest.mark.parametrize("t", [-1e10, -200.0, -3.0, 0.0, 0.5, 40.0, 1e10])
def test_example2_matches_mpmath_including_tails(t):
    assert bench.EXAMPLE2.eval(t) == pytest.approx(float(oracles.example2(t)), rel=1e-14, abs=0)


def test_example2_large_argument_underflows_cleanly():
    assert bench.EXAMPLE2.eval(2.0**50) == 0.0
    assert np.all(np.isfinite(bench.EXAMPLE2.eval(bench.evaluation_grid("example2"))))


def test_grids():
    g1, g2 = bench.evaluation_grid("example1"), bench.evaluation_grid("example2")
    assert len(g1) == 101 and len(g2) == 203
    assert g1.min() == 2.0**-50 and g1.max() == 2.0**50
    assert 0.0 in g2 and g2.min() == -(2.0**50)
    assert np.all(np.diff(g2) > 0)


def test_oracle_examples():
    assert bench.oracle_derivative("example2", 0, 0.0) == 0.125
    h = 1e-3
    fd = oracles.five_point(bench.EXAMPLE2.eval, 0.0, h, 2)
    assert bench.oracle_derivative("example2", 2, 0.0) == pytest.approx(fd, rel=1e-6)
    ref = float(oracles.central_difference(oracles.example1, 1.0, 1e-6, 1))
    assert bench.oracle_derivative("example1", 1, 1.0) == pytest.approx(ref, rel=1e-7)


@pytest.mark.parametrize("fid, mpfn", [("example1", oracles.example1), ("example2", oracles.example2)])
def test_oracle_matches_mpmath(fid, mpfn):
    for t in (0.01, 0.7, 3.0, 25.0) if fid == "example1" else (-30.0, -1.5, 0.0, 0.9, 12.0):
        got = bench.oracle_derivatives(fid, t, 4)
        ref = oracles.derivatives(mpfn, t, 4)
        scale = max(abs(v) for v in ref)
        np.testing.assert_allclose(got, ref, rtol=1e-11, atol=1e-14 * scale)


@pytest.mark.parametrize("fid", ["example1", "example2"])
@pytest.mark.parametrize("l", [1, 2])
def test_oracle_agrees_with_five_point_stencil(fid, l):
    fn = bench.get_function(fid)
    rng = np.random.default_rng(7 + l)
    ts = rng.uniform(0.05, 8.0, 100) if fid == "example1" else rng.uniform(-8.0, 8.0, 100)
    ts = ts[np.abs(ts) > 0.05]
    for t in ts:
        fd = oracles.five_point(fn.eval, t, 1e-3, l)
        exact = bench.oracle_derivative(fid, l, t)
        assert abs(exact - fd) <= 1e-6 * max(abs(exact), 1e-3 * abs(fn.eval(t)), 1e-12)


def test_oracle_errors():
    with pytest.raises(DomainError):
        bench.oracle_derivative("example1", 0, 0.0)
    with pytest.raises(UsageError):
        bench.oracle_derivatives("example1", 1.0, 5)


def test_zero_function_sweep_has_zero_errors():
    zero = dataclasses.replace(
        bench.EXAMPLE1,
        eval=lambda t: 0.0 * np.asarray(t, dtype=float),
        eval_jet=lambda t, K: jets.jet_constant(np.zeros_like(np.asarray(t, dtype=float)), t, K),
    )
    report = bench.run_sweep(zero, "improved", 2, [5, 10])
    assert all(e == 0.0 for row in report.rows for e in row.errors)


def test_sweep_shape_and_metadata():
    report = sweep("example1", "improved")
    assert len(report.rows) == len(bench.DEFAULT_N_LIST) == 20
    assert report.ns().tolist() == list(range(5, 101, 5))
    assert report.map_id == "IMP2" and report.grid_id == "example1"
    assert all(len(row.errors) == 3 for row in report.rows)


@pytest.mark.parametrize("fid", ["example1", "example2"])
@pytest.mark.parametrize("formula", bench.FORMULAS)
def test_root_exponential_decay_realized(fid, formula):
    report = sweep(fid, formula)
    errs = report.errors(0)
    above = errs[errs > bench.ROUNDOFF_FLOOR]
    assert errs[0] / above[-1] >= 1e3


def test_sweep_input_errors():
    with pytest.raises(UsageError):
        bench.run_sweep("example1", "improved", 2, [])
    with pytest.raises(UsageError):
        bench.run_sweep("example1", "improved", 2, [10, 5])
    with pytest.raises(UsageError):
        bench.run_sweep("example1", "improved", 5, [5])


def test_sweep_failure_reports_n():
    bad = dataclasses.replace(bench.EXAMPLE1, eval=lambda t: math.nan)
    with pytest.raises(bench.SweepError) as info:
        bench.run_sweep(bad, "improved", 0, [5])
    assert info.value.n == 5 and info.value.t is not None


# rate fits ------------------------------------------------------------------

def synthetic(errors_of_n, ns=range(5, 101, 5)):
    rows = tuple(SweepRow(n, 1.0, n, n, (errors_of_n(n),)) for n in ns)
    return ErrorReport("example1", "improved", 0, rows, "synthetic", DecayProfile(1, 1, 1))


def test_fit_rate_synthetic():
    assert bench.fit_rate(synthetic(lambda n: math.exp(-2 * math.sqrt(n))), 0) == pytest.approx(-2.0, abs=1e-9)
    assert bench.fit_rate(synthetic(lambda n: 7 * math.exp(-1.5 * math.sqrt(n))), 0) == pytest.approx(-1.5, abs=1e-9)


def test_fit_rate_ignores_floor_and_needs_points():
    report = synthetic(lambda n: max(math.exp(-3 * math.sqrt(n)), 1e-14))
    assert bench.fit_rate(report, 0) == pytest.approx(-3.0, abs=1e-9)
    with pytest.raises(bench.FitError):
        bench.fit_rate(synthetic(lambda n: 1e-15), 0)
    with pytest.raises(bench.FitError):
        bench.fit_rate(synthetic(lambda n: 1.0, ns=[10, 20]), 0)


def test_theoretical_slopes():
    assert bench.theoretical_slope(bench.EXAMPLE1.profile_se) == pytest.approx(-1.5704, abs=1e-4)
    assert bench.theoretical_slope(bench.EXAMPLE1.profile_imp) == pytest.approx(-2.2209, abs=1e-4)


# CSV ------------------------------------------------------------------------

def body(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_csv_header_only_for_empty_report():
    buf = io.StringIO()
    bench.write_csv(synthetic(lambda n: 1.0, ns=[]), buf)
    assert body(buf.getvalue()) == ["n,h,M,N,err_l0"]


def test_csv_three_rows():
    buf = io.StringIO()
    bench.write_csv(synthetic(lambda n: 1.0 / n, ns=[5, 10, 15]), buf)
    lines = body(buf.getvalue())
    assert len(lines) == 4
    assert lines[1].split(",")[0] == "5" and lines[1].split(",")[2] == "5"


def test_csv_metadata_and_roundtrip(tmp_path):
    report = sweep("example2", "stenger")
    path = tmp_path / "e2.csv"
    bench.write_csv(report, path)
    text = path.read_text()
    assert body(text)[0] == "n,h,M,N,err_l0,err_l1,err_l2"
    meta, header, rows = bench.read_csv(path)
    assert meta["function"] == "example2" and meta["formula"] == "stenger" and meta["m"] == "2"
    assert meta["map"] == "SE4" and meta["grid"] == "example2"
    assert "alpha=2.0" in meta["profile"] and "timestamp" in meta
    assert [r[0] for r in rows] == report.ns().tolist()
    for row, parsed in zip(report.rows, rows):
        assert parsed[1] == row.h and parsed[2] == row.M and parsed[3] == row.N
        assert tuple(parsed[4:]) == row.errors
    assert all(isinstance(r[2], int) for r in rows)


def test_csv_floats_use_17_significant_digits():
    buf = io.StringIO()
    bench.write_csv(synthetic(lambda n: 1.0 / 3.0, ns=[5]), buf)
    field = body(buf.getvalue())[1].split(",")[-1]
    mantissa = field.split("e")[0].replace(".", "").lstrip("-")
    assert len(mantissa) == 17 and float(field) == 1.0 / 3.0


def test_compare_csv(tmp_path):
    path = tmp_path / "cmp.csv"
    bench.write_compare_csv(sweep("example1", "stenger"), sweep("example1", "improved"), path)
    meta, header, rows = bench.read_csv(path)
    assert "err_l0_se" in header and "err_l0_imp" in header
    assert len(header) == 1 + 2 * 6 and len(rows) == 20


def test_compare_csv_rejects_mismatched_reports():
    a = synthetic(lambda n: 1.0, ns=[5, 10])
    b = synthetic(lambda n: 1.0, ns=[5, 15])
    with pytest.raises(UsageError):
        bench.write_compare_csv(a, b, io.StringIO())


def test_csv_io_error_names_path(tmp_path):
    target = tmp_path / "missing" / "x.csv"
    with pytest.raises(OSError) as info:
        bench.write_csv(synthetic(lambda n: 1.0, ns=[5]), target)
    assert str(target) in str(info.value)


def test_csv_is_bit_stable():
    first, second = io.StringIO(), io.StringIO()
    bench.write_csv(bench.run_sweep("example2", "improved", 1, [5, 10, 15]), first)
    bench.write_csv(bench.run_sweep("example2", "improved", 1, [5, 10, 15]), second)
    strip = lambda s: [l for l in s.getvalue().splitlines() if not l.startswith("# timestamp")]
    assert strip(first) == strip(second)
