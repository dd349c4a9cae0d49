"""Acceptance criteria 1-10, one test each.

Each test prints a single ``CRITERION <n> PASS|FAIL`` line (visible with
``pytest -v``) listing any failing checks. Run as a script to get just the
ten lines: ``python tests/test_acceptance.py``.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from spinab.suites import CRITERIA

SEED = 42
RUNTIME_LIMIT = {1: 1.0, 2: 5.0, 3: 1.0, 4: 60.0, 5: 5.0, 6: 5.0, 7: 2.0, 8: 120.0, 9: 10.0}
TITLES = {
    1: "exact algebra",
    2: "G-field families and monopole patches",
    3: "spectrum kappa/nu",
    4: "eigenfunction residuals",
    5: "E<0 rejection",
    6: "interference curves",
    7: "loop phase",
    8: "operator identities",
    9: "special-function oracles",
    10: "determinism",
}


def evaluate(n):
    t0 = time.perf_counter()
    checks = []
    for k, group in enumerate(CRITERIA[n]):
        checks.extend(group(np.random.default_rng([SEED, n, k])))
    elapsed = time.perf_counter() - t0
    failed = [c for c in checks if not c.passed()]
    ok = not failed and elapsed < RUNTIME_LIMIT[n]
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f}s (limit {RUNTIME_LIMIT[n]:g}s)"
    if failed:
        detail += "; failing: " + ", ".join(f"{c.name}={c.value:.3g}" for c in failed)
    return ok, detail


def evaluate_determinism(tmpdir):
    outs = []
    for i in range(2):
        csv = f"{tmpdir}/verify_{i}.csv"
        res = subprocess.run([sys.executable, "-m", "spinab", "verify", "--suite", "all", "--seed", str(SEED),
                              "--out", csv], capture_output=True)
        with open(csv, "rb") as fh:
            outs.append((res.returncode, res.stdout, fh.read()))
    same = outs[0] == outs[1]
    return same, f"stdout {len(outs[0][1])} bytes, csv {len(outs[0][2])} bytes, identical={same}"


def report(n, ok, detail):
    return f"CRITERION {n:>2} {'PASS' if ok else 'FAIL'}  {TITLES[n]}: {detail}"


def _check(n, capsys):
    ok, detail = evaluate(n)
    with capsys.disabled():
        print("\n" + report(n, ok, detail))
    assert ok, detail


def test_criterion_01_exact_algebra(capsys):
    _check(1, capsys)


def test_criterion_02_theorem1_and_patches(capsys):
    _check(2, capsys)


def test_criterion_03_spectrum(capsys):
    _check(3, capsys)


def test_criterion_04_eigen_residuals(capsys):
    _check(4, capsys)


def test_criterion_05_negative_energy(capsys):
    _check(5, capsys)


def test_criterion_06_interference_curves(capsys):
    _check(6, capsys)


def test_criterion_07_loop_phase(capsys):
    _check(7, capsys)


def test_criterion_08_operator_identities(capsys):
    _check(8, capsys)


def test_criterion_09_special_functions(capsys):
    _check(9, capsys)


def test_criterion_10_determinism(tmp_path, capsys):
    ok, detail = evaluate_determinism(tmp_path)
    with capsys.disabled():
        print("\n" + report(10, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    results = []
    for n in range(1, 10):
        results.append((n, *evaluate(n)))
    with tempfile.TemporaryDirectory() as tmp:
        results.append((10, *evaluate_determinism(tmp)))
    for n, ok, detail in results:
        print(report(n, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
