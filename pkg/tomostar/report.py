"""
Suite reports and their JSON serialization.
"""

import math
from importlib.metadata import PackageNotFoundError, version

import orjson
from pydantic import BaseModel, Field


def package_version() -> str:
    try:
        return version("tomostar")
    except PackageNotFoundError:
        return "0.0.0"


def fmt(value) -> str:
    """17 significant digits, round-trip safe for doubles; complex as a+bj."""
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


class CaseResult(BaseModel):
    name: str
    inputs: str
    expected: str
    got: str
    abs_err: float
    rel_err: float
    tolerance: float
    passed: bool
    experimental: bool = False


class SuiteReport(BaseModel):
    suite_name: str
    seed: int
    cases: list[CaseResult] = Field(default_factory=list)
    max_rel_err: float = 0.0
    # constants recorded by the suite (oracle ratios, extrapolated limits)
    recorded: dict[str, str] = Field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases if not c.experimental)

    def add(
        self,
        name: str,
        inputs: str,
        expected,
        got,
        abs_err: float,
        tolerance: float,
        rel_err: float | None = None,
        passed: bool | None = None,
        experimental: bool = False,
    ) -> CaseResult:
        """Append a case; ``passed`` defaults to ``abs_err <= tolerance``."""
        if rel_err is None:
            scale = abs(expected) if isinstance(expected, (int, float, complex)) else 0.0
            rel_err = abs_err / scale if scale else abs_err
        if passed is None:
            passed = bool(abs_err <= tolerance)
        case = CaseResult(
            name=name,
            inputs=inputs,
            expected=fmt(expected),
            got=fmt(got),
            abs_err=float(abs_err),
            rel_err=float(rel_err),
            tolerance=float(tolerance),
            passed=passed,
            experimental=experimental,
        )
        self.cases.append(case)
        if not experimental and math.isfinite(case.rel_err):
            self.max_rel_err = max(self.max_rel_err, case.rel_err)
        return case

    def fail(self, name: str, inputs: str, error: Exception, experimental: bool = False) -> CaseResult:
        """Record a case that raised instead of producing a value."""
        nan = float("nan")
        case = CaseResult(
            name=name,
            inputs=inputs,
            expected="",
            got=f"{type(error).__name__}: {error}",
            abs_err=nan,
            rel_err=nan,
            tolerance=nan,
            passed=False,
            experimental=experimental,
        )
        self.cases.append(case)
        return case


def aggregate(reports: list[SuiteReport]) -> bool:
    """True only if every non-experimental case of every suite passed."""
    return all(r.passed for r in reports)


def report_payload(reports: list[SuiteReport], convention: str, seed: int, timings: bool = False) -> dict:
    exclude = None if timings else {"elapsed"}
    return {
        "version": package_version(),
        "convention": convention,
        "seed": seed,
        "all_passed": aggregate(reports),
        "suites": [r.model_dump(exclude=exclude) for r in reports],
    }


def dumps(payload) -> bytes:
    """Deterministic JSON: sorted keys, NaN and infinities as null."""
    return orjson.dumps(payload, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE)
