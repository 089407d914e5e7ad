import math

import orjson
import pytest

from tomostar import verify
from tomostar.config import RunConfig, make_spec
from tomostar.errors import AccuracyError, ConfigError, DomainError
from tomostar.report import SuiteReport, aggregate, dumps, report_payload
from tomostar.tomo_transform import MeasureConvention


def failed(report):
    return [(c.name, c.inputs, c.got) for c in report.cases if not c.passed and not c.experimental]


@pytest.mark.parametrize("h", [0.5, 1.0])
@pytest.mark.parametrize("conv", list(MeasureConvention))
def test_tomogram_suite_passes(h, conv):
    report = verify.suite_tomogram_claims(h, conv, seed=1)
    assert report.passed, failed(report)
    crossing = [c for c in report.cases if c.name == "zero_crossing"]
    assert len(crossing) == 1 and crossing[0].abs_err <= 1e-8


def test_tomogram_suite_needs_positive_hbar():
    with pytest.raises(DomainError):
        verify.suite_tomogram_claims(0.0, MeasureConvention.STANDARD)


def test_kernel_suite_passes():
    report = verify.suite_kernel_oracles(seed=2)
    assert report.passed, failed(report)
    constant = report.recorded["quadratic_oracle_constant[standard,h=0.3]"]
    assert complex(constant) == pytest.approx(math.pi, rel=1e-6)
    assert float(report.recorded["k_deformed_oracle_constant[paper]"]) == pytest.approx(1 / math.pi)
    assert float(report.recorded["k_deformed_oracle_constant[standard]"]) == pytest.approx(1.0)
    spreads = [c for c in report.cases if c.name in ("quadratic_oracle_spread", "k_deformed_oracle_spread")]
    assert len(spreads) == 8
    assert all(c.abs_err <= 1e-8 for c in spreads)


def test_ratio_spread_is_taken_around_the_median():
    constant, spread = verify._ratio_spread([2.0, 2.0 + 2e-9, 2.0 - 1e-9, 2.0 + 1e-10])
    assert constant == pytest.approx(2.0 + 5e-11, rel=1e-15)
    assert spread == pytest.approx((2e-9 - 5e-11) / constant.real, rel=1e-6)
    constant, spread = verify._ratio_spread([1j * math.pi] * 3)
    assert constant == pytest.approx(1j * math.pi)
    assert spread == 0.0


def test_ratio_spread_needs_a_draw():
    with pytest.raises(DomainError):
        verify._ratio_spread([])


def test_classical_suite_passes():
    report = verify.suite_classical_limit(seed=3)
    assert report.passed, failed(report)
    assert not any(c.experimental for c in report.cases)


@pytest.mark.slow
def test_h1_suite_passes():
    report = verify.suite_h1_limit(seed=4)
    assert report.passed, failed(report)
    assert "limit" in report.recorded


@pytest.mark.slow
@pytest.mark.parametrize("conv", list(MeasureConvention))
def test_round_trip_suite_passes(conv):
    report = verify.suite_round_trip(1.0, conv, seed=6)
    assert report.passed, failed(report)
    trips = [c for c in report.cases if c.name == "round_trip"]
    assert len(trips) == 3
    assert all(c.rel_err <= 1e-3 for c in trips)


def test_round_trip_records_inverse_failures(monkeypatch):
    def unsettled(*args, **kwargs):
        raise AccuracyError("epsilon extrapolation did not settle")

    monkeypatch.setattr(verify, "quadratic_inverse", unsettled)
    report = verify.suite_round_trip(0.5, MeasureConvention.PAPER, seed=1)
    assert not report.passed
    assert [c.inputs for c in report.cases] == ["f0", "f1", "gauss(1,1)"]
    assert all(c.got.startswith("AccuracyError") for c in report.cases)


def test_round_trip_needs_positive_hbar():
    with pytest.raises(DomainError):
        verify.suite_round_trip(-1.0, MeasureConvention.STANDARD)


def test_round_trip_runs_by_default():
    assert verify.SUITES.index("roundtrip") == verify.SUITES.index("tomogram") + 1



def test_failing_case_is_recorded_not_raised(monkeypatch):
    def broken(*args, **kwargs):
        raise DomainError("broken quadrature")

    monkeypatch.setattr(verify, "quadratic_forward", broken)
    report = verify.suite_tomogram_claims(1.0, MeasureConvention.STANDARD, seed=1)
    assert not report.passed
    assert any("broken quadrature" in c.got for c in report.cases)
    # every case still leaves a record
    assert len(report.cases) == 36


def test_unexpected_errors_are_recorded(monkeypatch):
    def broken(*args, **kwargs):
        raise ZeroDivisionError("division by zero")

    monkeypatch.setattr(verify, "tomogram_fock", broken)
    report = verify.suite_tomogram_claims(1.0, MeasureConvention.PAPER, seed=1)
    assert not report.passed
    closed = [c for c in report.cases if c.name == "omega1_closed_form"]
    assert closed and all(c.got == "ZeroDivisionError: division by zero" for c in closed)


def test_reports_are_reproducible():
    a = verify.suite_tomogram_claims(0.5, MeasureConvention.PAPER, seed=9)
    b = verify.suite_tomogram_claims(0.5, MeasureConvention.PAPER, seed=9)
    assert a.model_dump(exclude={"elapsed"}) == b.model_dump(exclude={"elapsed"})


def test_run_suites_rejects_unknown_names():
    with pytest.raises(ConfigError):
        verify.run_suites(["tomogram", "moyal"], RunConfig())


def test_run_suites_keeps_the_fixed_order():
    reports = verify.run_suites(["classical", "tomogram"], RunConfig(hbar=0.5, seed=1))
    assert [r.suite_name for r in reports] == ["tomogram", "classical"]
    assert aggregate(reports)


# --------------------------
# Report serialization
# --------------------------
def test_report_add_and_fail():
    report = SuiteReport(suite_name="demo", seed=1)
    report.add("exact", "x=1", 2.0, 2.0 + 1e-12, 1e-12, 1e-10)
    report.add("loose", "x=2", 2.0, 3.0, 1.0, 1e-3)
    report.fail("raised", "x=3", DomainError("bad"))
    report.add("ignored", "x=4", 1.0, 5.0, 4.0, 1e-3, experimental=True)
    assert [c.passed for c in report.cases] == [True, False, False, False]
    assert report.max_rel_err == pytest.approx(0.5)
    assert not report.passed
    assert report.cases[2].got == "DomainError: bad"


def test_experimental_cases_do_not_gate():
    report = SuiteReport(suite_name="demo", seed=1)
    report.add("ok", "", 1.0, 1.0, 0.0, 1e-12)
    report.add("slow", "", 1.0, 2.0, 1.0, 1e-12, experimental=True)
    assert report.passed
    assert aggregate([report])


def test_payload_excludes_elapsed_by_default():
    report = SuiteReport(suite_name="demo", seed=1, elapsed=1.5)
    report.add("ok", "", 1.0, 1.0, 0.0, 1e-12)
    payload = orjson.loads(dumps(report_payload([report], "standard", 1)))
    assert "elapsed" not in payload["suites"][0]
    assert payload["all_passed"] is True
    timed = orjson.loads(dumps(report_payload([report], "standard", 1, timings=True)))
    assert timed["suites"][0]["elapsed"] == 1.5


def test_dumps_is_sorted_and_stable():
    a = dumps({"b": 1, "a": [1.0, 2.5]})
    assert a == dumps({"a": [1.0, 2.5], "b": 1})
    assert a.index(b'"a"') < a.index(b'"b"')
    assert a.endswith(b"\n")


def test_suite_records_seed():
    spec = make_spec(node_count=128)
    report = verify.suite_classical_limit(spec, seed=5)
    assert report.seed == 5
