"""Every acceptance criterion at its stated tolerance, one PASS/FAIL line each."""
import hashlib
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from rotund import acceptance

BUDGET = {1: 30, 4: 60, 5: 30, 8: 60}


def report(number, name, passed, seconds):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {name} ({seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


@pytest.mark.parametrize("fn", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn):
    t0 = time.perf_counter()
    res = fn(0)
    dt = time.perf_counter() - t0
    ok = res.passed and dt < BUDGET.get(res.number, float("inf"))
    report(res.number, res.name, ok, dt)
    assert res.passed, res.detail
    assert dt < BUDGET.get(res.number, float("inf")), f"took {dt:.1f}s"


def test_criterion_11_determinism():
    outs = []
    t0 = time.perf_counter()
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "rotund.cli", "acceptance", "--seed", "0"],
                              capture_output=True, check=False)
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append(proc.stdout)
    dt = (time.perf_counter() - t0) / 2
    same = outs[0] == outs[1]
    report(11, "byte-identical acceptance reports, runtime < 3 min", same and dt < 180, dt)
    assert same, [hashlib.sha256(o).hexdigest() for o in outs]
    assert dt < 180
