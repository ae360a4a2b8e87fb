"""One test per acceptance criterion; each records a line for the terminal summary."""
import subprocess
import sys
import time

import numpy as np

from qkantorovich.functions import build_catalog, monomial
from qkantorovich.harness import (
    SUITES,
    all_passed,
    run_bound_suite,
    run_convergence_study,
    run_moment_verification,
    run_weighted_convergence,
)
from qkantorovich.moduli import modulus_omega2, modulus_weighted, ModulusQuery
from qkantorovich.moments import central_moment_exact, second_moment_bound
from qkantorovich.operators import OperatorSpec, StancuParams, kantorovich_apply, kantorovich_stancu_apply
from qkantorovich.qcore import QContext, QInterval, q_integer, q_jackson_integral

GRID_N = (5, 10, 20, 50)
GRID_Q = (0.5, 0.8, 0.9, 0.99)
GRID_AB = ((0.0, 0.0), (0.0, 1.0), (1.0, 2.0))
GRID_X = np.array([0.0, 0.1, 0.5, 1.0, 2.0])
CAT = build_catalog()


def _grid_specs():
    for n in GRID_N:
        for q in GRID_Q:
            for a, b in GRID_AB:
                yield OperatorSpec(n, QContext(q), StancuParams(a, b), k_tail_tol=1e-13)


def test_moment_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    reports = run_moment_verification(k_tail_tol=1e-13, tolerance=1e-9)
    elapsed = time.perf_counter() - t0
    failed = sum(not r.passed for r in reports)
    published = sum(not r.matches_closed for r in reports)
    ok = failed == 0 and len(reports) == 720 and elapsed < 60
    criterion(1, ok, f"{len(reports)} reports, {failed} failed, {published} published-formula errata, {elapsed:.1f}s")
    assert ok


def test_normalization(criterion):
    worst = 0.0
    for spec in _grid_specs():
        worst = max(worst, float(np.max(np.abs(kantorovich_stancu_apply(monomial(0), spec, GRID_X) - 1.0))))
    ok = worst <= 1e-11
    criterion(2, ok, f"max |L(1) - 1| = {worst:.2e} (tol 1e-11)")
    assert ok


def test_stancu_reduction(criterion):
    rng = np.random.default_rng(20240607)
    names = ("e1", "e2", "x_over_1px", "abs_half", "sqrt_clipped", "sigmoid")
    worst = 0.0
    for _ in range(100):
        n = int(rng.choice(GRID_N))
        q = float(rng.choice(GRID_Q))
        x = float(rng.uniform(0.0, 2.0))
        f = CAT[names[int(rng.integers(len(names)))]].f
        spec = OperatorSpec(n, QContext(q), StancuParams(0.0, 0.0))
        a = kantorovich_stancu_apply(f, spec, x)
        b = kantorovich_apply(f, spec, x)
        worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    ok = worst <= 1e-12
    criterion(3, ok, f"max relative gap {worst:.2e} over 100 random points (tol 1e-12)")
    assert ok


def test_second_moment_domination(criterion):
    total, bad, worst = 0, 0, 0.0
    for spec in _grid_specs():
        m2 = central_moment_exact(2, spec, GRID_X)
        bound = second_moment_bound(spec, GRID_X)
        fail = m2 > bound * (1.0 + 1e-12)
        total += GRID_X.size
        bad += int(np.sum(fail))
        worst = max(worst, float(np.max(m2 / bound)))
    ok = bad == 0
    criterion(4, ok, f"{bad}/{total} grid points violate the bound, worst ratio {worst:.3g}")
    assert ok


def test_korovkin_convergence(criterion):
    parts, ok = [], True
    for a, b in ((0.0, 0.0), (1.0, 2.0)):
        for name in ("e0", "e1", "e2"):
            rows = run_convergence_study(CAT[name], stancu=StancuParams(a, b))
            ok &= all_passed(rows)
            last = rows[-1]
            if name == "e0":
                parts.append(f"({a:g},{b:g}) e0 max {max(r.lhs for r in rows):.1e}")
            else:
                parts.append(f"({a:g},{b:g}) {name} ratio {last.rhs:.3g}")
    criterion(5, ok, "; ".join(parts) + " (ratio > 4)")
    assert ok


def test_monomial_q_integration(criterion):
    worst = 0.0
    for q in (0.5, 0.9):
        ctx = QContext(q)
        for a in (0.25, 1.0, 2.0):
            for m in range(4):
                val = q_jackson_integral(lambda t, m=m: t**m, a, ctx)
                exact = a ** (m + 1) / q_integer(m + 1, ctx)
                worst = max(worst, abs(val - exact) / a ** (m + 1))
    ok = worst <= 1e-12
    criterion(6, ok, f"max scaled error {worst:.2e} (tol 1e-12)")
    assert ok


def test_bound_suites(criterion):
    spec = OperatorSpec(20, QContext(0.9), StancuParams(1.0, 2.0))
    t0 = time.perf_counter()
    parts, ok = [], True
    for suite in SUITES:
        rows = run_bound_suite(suite, spec, CAT)
        summary = [r for r in rows if ":verdict;" in r.metric_name]
        unstable = sum("unstable" in r.metric_name for r in summary)
        c_max = max((r.lhs for r in summary if "empirical_C" in r.metric_name), default=None)
        good = all_passed(rows)
        ok &= good
        tag = f"{suite} {'ok' if good else 'FAIL'}"
        if unstable:
            tag += f" ({unstable} unstable)"
        if c_max is not None:
            tag += f" C<={c_max:g}"
        parts.append(tag)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    criterion(7, ok, "; ".join(parts) + f"; {elapsed:.0f}s")
    assert ok


def test_weighted_convergence(criterion):
    entries = [CAT[name] for name in ("x2_over_1px", "x_over_1px", "abs_half", "sigmoid")]
    rows = run_weighted_convergence(entries, n_sequence=(8, 32, 128), x_max=10.0)
    failed = [r.metric_name for r in rows if not r.passed]
    ok = not failed
    criterion(8, ok, f"{len(rows)} rows, failed: {failed or 'none'}")
    assert ok


def test_weighted_modulus_properties(criterion):
    slack = 1e-3
    fails = []
    linear_max = 0.0
    for name, entry in CAT.items():
        f = entry.f
        for gamma in (0.0, 1.0):
            for delta in (0.05, 0.1, 0.2):
                base = modulus_weighted(f, delta, gamma)
                tiny = slack * max(base, 1e-12)
                for lam in (0.5, 1.5, 2.5):
                    if modulus_weighted(f, lam * delta, gamma) > (lam + 1) * base + tiny:
                        fails.append(f"{name}:scaling")
                for m in (2, 3, 5):
                    if modulus_weighted(f, m * delta, gamma) > m * base + m * tiny:
                        fails.append(f"{name}:subadditive")
            vals = [modulus_weighted(f, 10.0**-k, gamma) for k in range(1, 7)]
            if any(b > a * (1 + slack) + 1e-15 for a, b in zip(vals, vals[1:])) or vals[-1] > 1e-2 * max(vals[0], 1e-12):
                fails.append(f"{name}:vanishing")
        if entry.linear:
            linear_max = max(linear_max, modulus_omega2(ModulusQuery(f, 0.2, QInterval(0.0, 10.0))))
    ok = not fails and linear_max <= 1e-13
    criterion(9, ok, f"{len(fails)} property violations; max omega2 of linear entries {linear_max:.1e}")
    assert ok


def test_cli_determinism(tmp_path, criterion):
    commands = [
        ["moments"],
        ["converge", "--f", "e2"],
        ["weighted-converge"],
        ["bounds", "--suite", "global"],
        ["moduli", "--f", "abs_half", "--kind", "dt2"],
    ]
    mismatched = []
    for i, cmd in enumerate(commands):
        blobs = []
        for rep in range(2):
            out = tmp_path / f"{i}_{rep}.csv"
            subprocess.run([sys.executable, "-m", "qkantorovich.cli", *cmd, "--out", str(out)],
                           check=False, capture_output=True)
            blobs.append(out.read_bytes())
        if blobs[0] != blobs[1] or not blobs[0]:
            mismatched.append(cmd[0])
    ok = not mismatched
    criterion(10, ok, f"{len(commands)} subcommands run twice, differing: {mismatched or 'none'}")
    assert ok
