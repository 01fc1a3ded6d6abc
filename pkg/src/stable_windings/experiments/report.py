"""Report types shared by every experiment: verdicts, digests, serialization.

A report is a pure function of (seed, config); everything that varies between
identical runs is confined to runtime_s.  Verdicts follow one rule everywhere:
the error budget is computed from batch means, never asserted, and a finite
target passes iff the gap fits inside max(declared tolerance, 3 std errors).
"""

import csv
import hashlib
import json
import math
import os
from dataclasses import dataclass, field

from ..errors import DomainError

_TEST_KINDS = ("ks_one_sample", "ks_two_sample", "chi_square")
_VERDICTS = ("pass", "fail", "inconclusive")


@dataclass(frozen=True)
class StatTest:
    """One goodness-of-fit result attached to a report."""

    kind: str
    statistic: float
    p_value: float

    def __post_init__(self):
        if self.kind not in _TEST_KINDS:
            raise DomainError(f"kind must be one of {_TEST_KINDS}, got {self.kind!r}")
        if not (0.0 <= self.p_value <= 1.0):
            raise DomainError(f"p_value must be in [0,1], got {self.p_value}")


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    estimate: float
    std_error: float
    target: float
    tolerance: float
    verdict: str
    config_digest: str
    seed: int
    runtime_s: float
    stat_tests: tuple = ()
    telemetry: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise DomainError(f"verdict must be one of {_VERDICTS}, got {self.verdict!r}")


def decide_verdict(estimate: float, target: float, tolerance: float, std_error: float) -> str:
    """pass / fail / inconclusive under the shared error-budget rule.

    Finite target: pass iff |estimate - target| <= max(tolerance, 3 se); fail
    iff the gap exceeds tolerance + 3 se (wrong even granting the Monte Carlo
    noise); the band between is inconclusive.  Infinite target: `tolerance`
    carries the divergence threshold the estimate must clear.
    """
    if math.isinf(target):
        if estimate >= tolerance:
            return "pass"
        if estimate + 3.0 * std_error < tolerance:
            return "fail"
        return "inconclusive"
    gap = abs(estimate - target)
    if gap <= max(tolerance, 3.0 * std_error):
        return "pass"
    if gap > tolerance + 3.0 * std_error:
        return "fail"
    return "inconclusive"


# canonical serialization -----------------------------------------------------


def _canon_value(v) -> str:
    # repr of a float is its shortest round-trip form, identical on every
    # IEEE-754 platform; everything else must already be str or int
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "infinity" if math.isinf(v) else repr(v)
    if isinstance(v, int):
        return repr(v)
    if isinstance(v, str):
        return v
    raise DomainError(f"config values must be scalar, got {type(v).__name__} for {v!r}")


def config_digest(config: dict) -> str:
    """sha256 over sorted key=value lines of the effective configuration."""
    lines = [f"{k}={_canon_value(config[k])}" for k in sorted(config)]
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def _json_number(v: float):
    if isinstance(v, float) and math.isinf(v):
        return "infinity" if v > 0 else "-infinity"
    return v


def report_to_dict(report: ExperimentReport) -> dict:
    doc = {
        "name": report.name,
        "estimate": _json_number(report.estimate),
        "std_error": _json_number(report.std_error),
        "target": _json_number(report.target),
        "tolerance": _json_number(report.tolerance),
        "verdict": report.verdict,
        "config_digest": report.config_digest,
        "seed": report.seed,
        "runtime_s": report.runtime_s,
        "stat_tests": [
            {"kind": t.kind, "statistic": t.statistic, "p_value": t.p_value}
            for t in report.stat_tests
        ],
        "telemetry": {k: _json_number(report.telemetry[k]) for k in sorted(report.telemetry)},
    }
    return doc


def report_to_json(report: ExperimentReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2, ensure_ascii=False)


_LEDGER_FIELDS = (
    "name",
    "estimate",
    "std_error",
    "target",
    "tolerance",
    "verdict",
    "config_digest",
    "seed",
    "runtime_s",
)


def append_to_ledger(report: ExperimentReport, path: str) -> None:
    """Append one row to the CSV results ledger, writing the header if new."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if fresh:
            writer.writerow(_LEDGER_FIELDS)
        row = []
        for name in _LEDGER_FIELDS:
            v = getattr(report, name)
            row.append(_canon_value(v) if not isinstance(v, str) else v)
        writer.writerow(row)
