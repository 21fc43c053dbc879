"""Result records for identity checks and witnesses, plus the emitters that
turn them into text, JSON, delimited files, and summary figures."""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

SCHEMA = "wittlab.report/1"


@dataclass
class CheckResult:
    """One verified claim: what was computed, what was expected, and whether
    they agreed exactly.  ``checks`` counts the individual identities folded
    into this record."""

    suite: str
    claim: str
    statement: str
    inputs: dict
    computed: str
    expected: str
    passed: bool
    checks: int = 1

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "claim": self.claim,
            "statement": self.statement,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "computed": self.computed,
            "expected": self.expected,
            "pass": self.passed,
            "checks": self.checks,
        }


@dataclass
class SuiteRun:
    name: str
    results: list
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def checks(self) -> int:
        return sum(r.checks for r in self.results)


def render_text(runs, verbose=False) -> str:
    lines = []
    for run in runs:
        mark = "PASS" if run.passed else "FAIL"
        lines.append(f"[{mark}] {run.name}: {run.checks} checks "
                     f"in {run.duration:.2f}s")
        for r in run.results:
            if verbose or not r.passed:
                sub = "pass" if r.passed else "FAIL"
                lines.append(f"    {sub}  {r.claim} ({r.checks} checks)")
                if not r.passed:
                    lines.append(f"          computed: {r.computed}")
                    lines.append(f"          expected: {r.expected}")
    total = sum(run.checks for run in runs)
    ok = all(run.passed for run in runs)
    lines.append(f"{'PASS' if ok else 'FAIL'}: {len(runs)} suites, {total} checks")
    return "\n".join(lines)


def render_json(runs, session: dict) -> str:
    payload = {
        "schema": SCHEMA,
        "session": session,
        "pass": all(run.passed for run in runs),
        "suites": [
            {
                "name": run.name,
                "pass": run.passed,
                "checks": run.checks,
                "duration_s": round(run.duration, 4),
                "results": [r.to_dict() for r in run.results],
            }
            for run in runs
        ],
    }
    return json.dumps(payload, indent=2)


def write_report_files(runs, session: dict, directory: str) -> list:
    """Write the delimited results, the JSON report, and the summary figures
    into ``directory``; returns the list of file paths written."""
    os.makedirs(directory, exist_ok=True)
    paths = []

    csv_path = os.path.join(directory, "results.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "claim", "pass", "checks",
                         "computed", "expected", "statement"])
        for run in runs:
            for r in run.results:
                writer.writerow([run.name, r.claim, r.passed, r.checks,
                                 r.computed, r.expected, r.statement])
    paths.append(csv_path)

    json_path = os.path.join(directory, "results.json")
    with open(json_path, "w") as fh:
        fh.write(render_json(runs, session))
        fh.write("\n")
    paths.append(json_path)

    paths.extend(_write_figures(runs, directory))
    return paths


def _write_figures(runs, directory: str) -> list:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [run.name for run in runs]
    ok = [sum(r.checks for r in run.results if r.passed) for run in runs]
    bad = [sum(r.checks for r in run.results if not r.passed) for run in runs]

    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.45 * len(runs) + 1)))
    pos = range(len(runs))
    ax.barh(pos, ok, color="#2a9d4e", label="passed")
    ax.barh(pos, bad, left=ok, color="#c23b22", label="failed")
    ax.set_yticks(list(pos))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("exact identities checked")
    ax.set_title("verification summary")
    ax.legend(loc="lower right")
    fig.tight_layout()
    summary = os.path.join(directory, "summary.png")
    fig.savefig(summary, dpi=150)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.45 * len(runs) + 1)))
    ax.barh(list(pos), [run.duration for run in runs], color="#35618f")
    ax.set_yticks(list(pos))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("suite durations")
    fig.tight_layout()
    timing = os.path.join(directory, "timings.png")
    fig.savefig(timing, dpi=150)
    plt.close(fig)
    return [summary, timing]
