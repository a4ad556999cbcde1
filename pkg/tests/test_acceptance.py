"""All sixteen acceptance criteria at their stated tolerances.

Run with ``pytest tests/test_acceptance.py -s`` (or as a script) to see one
PASS/FAIL line per criterion.
"""

import json

import pytest

from vhess.acceptance import CRITERIA, RunReport, run_acceptance, summary_lines
from vhess.sampling import SampleConfig


@pytest.fixture(scope="module")
def report():
    rep = run_acceptance(SampleConfig())
    lines = summary_lines(rep)
    print()
    for line in lines:
        print(line)
    return rep


@pytest.mark.parametrize("cid", [c[0] for c in CRITERIA])
def test_criterion(report, cid, capsys):
    rec = next(r for r in report.records if r.id == cid)
    with capsys.disabled():
        print(f"\n{rec.id} {rec.verdict} {rec.title}", end="")
    assert rec.passed, json.dumps({"measured": rec.measured, "expected": rec.expected,
                                   "notes": rec.notes}, indent=1, default=str)


def test_report_covers_every_criterion_in_order(report):
    assert [r.id for r in report.records] == [f"C{i:02d}" for i in range(1, 17)]
    assert report.verdict == "PASS"


def test_report_round_trips(report):
    again = RunReport.from_json(json.loads(report.dumps()))
    assert again.dumps() == report.dumps()


def test_same_seed_gives_identical_bytes(report):
    assert run_acceptance(SampleConfig()).dumps() == report.dumps()


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2])
def test_other_seeds_pass(seed):
    rep = run_acceptance(SampleConfig(seed=seed))
    assert rep.verdict == "PASS", summary_lines(rep)


if __name__ == "__main__":
    rep = run_acceptance(SampleConfig())
    print("\n".join(summary_lines(rep)))
    print(f"overall {rep.verdict}")
