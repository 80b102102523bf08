"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly as
``python tests/test_acceptance.py``. The zeros table (10^4 ordinates) is
built on first use and cached under ``ZETALAB_CACHE``.
"""

from __future__ import annotations

import cmath
import math
import subprocess
import sys
import tempfile
import time
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

import numpy as np
import pytest

from zetalab import cli, io
from zetalab.arith import CountingSnapshot, mobius, prime_power_table, sieve_primes
from zetalab.core import NotRegularizableError, QuadratureError
from zetalab.primezeta import (
    ContinuationConfig,
    approach_grid,
    prime_zeta_continued,
    prime_zeta_direct,
    singular_remainder,
    singularity_scan,
    verify_theorem1,
)
from zetalab.regdet import SpectrumSpec, laurent_probe, reg_det, scaling_check, zeta_hat, zeta_tilde
from zetalab.specfun import completed_xi, riemann_zeta
from zetalab.superzeta import explicit_formula_residual, superzeta_continued, superzeta_direct
from zetalab.zeros import default_table, smooth_count

RESULTS: dict[int, tuple[bool, str]] = {}


def _report(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)


# ---------------------------------------------------------------------------


def check_1():
    z2 = riemann_zeta(2).value.real
    z0 = riemann_zeta(0).value.real
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(200):
        s = complex(rng.uniform(-5, 6), rng.uniform(-30, 30))
        a, b = completed_xi(s).value, completed_xi(1 - s).value
        worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    ok = abs(z2 - 1.644934066848) <= 1e-10 and abs(z0 + 0.5) <= 1e-10 and worst <= 1e-10
    return ok, f"zeta(2)={z2:.13f} zeta(0)={z0:.13f} worst FE residual={worst:.2e}"


def check_2():
    sieve = sieve_primes(1_000_000)
    rng = np.random.default_rng(7)
    agree = 0
    for _ in range(50):
        s = complex(rng.uniform(1.2, 3.0), rng.uniform(-20, 20))
        d, c = prime_zeta_direct(s, sieve), prime_zeta_continued(s)
        agree += abs(d.value - c.value) <= d.abs_err + c.abs_err
    vals = [prime_zeta_continued(0.75, ContinuationConfig(K_max=k)).value for k in (20, 40, 80)]
    drift = max(abs(v - vals[0]) for v in vals)
    rep = singularity_scan(0.3, 1.1)
    found = [(p.location.real, p.strength) for p in rep.points if p.kind == "log-singularity"]
    locs_ok = len(found) == 3 and all(abs(a - b) < 1e-12 for (a, _), b in zip(found, (1, 1 / 2, 1 / 3)))
    str_ok = len(found) == 3 and all(abs(a - b) < 1e-3 for (_, a), b in zip(found, (1, -1 / 2, -1 / 3)))
    bounded = all(
        max(abs(singular_remainder(k, e)) for e in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)) <= 10 * abs(singular_remainder(k, 1e-2))
        for k in (2, 3, 5, 6)
    )
    ok = agree == 50 and drift <= 1e-10 and locs_ok and str_ok and bounded
    strengths = ", ".join(f"{s:+.5f}" for _, s in found)
    return ok, (f"{agree}/50 direct=continued; P(0.75) K_max drift {drift:.1e}; "
                f"scan strengths [{strengths}]; remainders bounded={bounded}")


def check_3():
    try:
        reg_det(SpectrumSpec("primes"))
        raised = False
    except NotRegularizableError:
        raised = True
    # the approach must stay inside the ~1/k^2 spacing of neighbouring points
    rep = singularity_scan(1 / 60, 0.2, epsilons=(1e-5, 1e-6, 1e-7, 1e-8))
    confirmed = [
        p for p in rep.points
        if p.kind == "log-singularity" and abs(p.strength - mobius(round(1 / p.location.real)) * p.location.real)
        < 0.05 * p.location.real
    ]
    ok = raised and len(confirmed) >= 10
    return ok, f"NotRegularizableError raised={raised}; {len(confirmed)} singular points 1/k confirmed in [1/60, 0.2]"


def check_4():
    t0 = time.perf_counter()
    sieve = sieve_primes(1_000_000)
    base = sieve.counting()
    seq = sieve.primes.astype(float)
    grid = approach_grid(0.5, 20)
    ident = verify_theorem1(base, 0.0, grid, base=base)
    zero = ident.verdict == "consistent" and all(e.G_value == 0 for e in ident.grid)
    drop = verify_theorem1(CountingSnapshot.from_sequence(seq[1:]), 0.0, grid, base=base)
    shift = verify_theorem1(CountingSnapshot.from_sequence(seq + 1), 0.0, grid, base=base)
    pp, _ = prime_power_table(1_000_000)
    powers = verify_theorem1(CountingSnapshot.from_sequence(pp), 1.0, grid, base=base)
    elapsed = time.perf_counter() - t0
    ok = (zero and drop.verdict == "consistent" and len(drop.grid) == 20 and shift.verdict == "consistent"
          and powers.verdict == "hypothesis-violated" and elapsed < 60)
    return ok, (f"identity G==0: {zero}; drop-one {drop.verdict}; shift-by-one {shift.verdict}; "
                f"prime powers {powers.verdict}; {elapsed:.1f}s")


def check_5():
    t = default_table(100)
    g1, g2 = t.ordinates[:2]
    worst = max(abs(riemann_zeta(complex(0.5, g)).value) for g in t.ordinates)
    big = default_table()
    n200, est = big.count_upto(200.0), round(smooth_count(200.0))
    ok = abs(g1 - 14.134725) <= 1e-6 and abs(g2 - 21.022040) <= 1e-6 and worst < 1e-8 and n200 == est
    return ok, f"g1={g1:.9f} g2={g2:.9f} max|zeta| on 100 zeros={worst:.1e}; N(200)={n200} estimate={est}"


def check_6():
    t0 = time.perf_counter()
    table = default_table()
    load = time.perf_counter() - t0
    agree = []
    for s in (2.0, 3.0, 2.5 + 1j):
        d, c = superzeta_direct(s, table), superzeta_continued(s, table)
        agree.append(abs(d.value - c.value) <= d.abs_err + c.abs_err)

    def f(z):
        return superzeta_continued(z, table).value

    g0 = f(0)

    def deriv(r):
        th = 2 * np.pi * (np.arange(64) + 0.5) / 64
        return complex(np.mean([f(r * cmath.exp(1j * a)) * cmath.exp(-1j * a) for a in th]) / r)

    d1, d2 = deriv(0.1), deriv(0.05)
    rel = abs(d2 - d1) / abs(d2)
    probe = laurent_probe(f, 1.0, 0.3)
    c2, c3 = abs(probe.coefficient(-2)), abs(probe.coefficient(-3))
    res = [abs(explicit_formula_residual(x, table).value) for x in (0.5, 1.0, 2.0)]
    ok = (all(agree) and cmath.isfinite(g0) and rel < 1e-4 and c2 > 0 and c3 < 1e-6 * c2
          and max(res) < 1e-6 and table.count == 10_000 and load < 300)
    return ok, (f"direct=continued {sum(agree)}/3; G(0)={g0.real:.10f}; derivative change {rel:.1e}; "
                f"|c-2|={c2:.6f} |c-3|/|c-2|={c3 / c2:.1e}; explicit residuals "
                f"{', '.join(f'{r:.1e}' for r in res)}; table {table.count} zeros loaded in {load:.1f}s")


def check_7():
    det = reg_det(SpectrumSpec("integers")).value.real
    rng = np.random.default_rng(3)
    worst_mult = 0.0
    for _ in range(20):
        a, b = np.sort(rng.uniform(0.5, 50, 2))
        worst_mult = max(worst_mult, abs(reg_det(SpectrumSpec.explicit([a, b])).value.real - a * b) / (a * b))
    fin = scaling_check(SpectrumSpec.explicit([1.0, 2.0, 3.0]), 4.0).value.real
    ints = scaling_check(SpectrumSpec("integers"), 2.0).value.real
    zer = scaling_check(SpectrumSpec("riemann-zeros", zeros=default_table()), 2.0).value.real
    ok = abs(det - math.sqrt(2 * math.pi)) <= 1e-7 and worst_mult <= 1e-12 and fin <= 1e-12 and ints <= 1e-7 \
        and zer <= 1e-7
    return ok, (f"det(integers)={det:.12f}; multiplicativity {worst_mult:.1e}; scaling residuals "
                f"finite {fin:.1e} integers {ints:.1e} zeros {zer:.1e}")


def check_8():
    tilde = laurent_probe(lambda s: zeta_tilde(s, 10.0), 1.0, 0.1)
    cm2, cm1 = tilde.coefficient(-2), tilde.coefficient(-1)
    hat = laurent_probe(lambda s, sheet=None: zeta_hat(s, 10.0, sheet=sheet), 1.0, 0.1, sheets=True)
    ratio = abs(hat.monodromy_delta) / (2 * math.pi)
    ok = abs(cm2 - 1) <= 1e-9 and abs(cm1 - 1) <= 1e-9 and tilde.monodromy_delta == 0 and abs(ratio - 1) <= 0.1
    return ok, (f"tilde: c-2={cm2.real:.12f} c-1={cm1.real:.12f} monodromy={abs(tilde.monodromy_delta):.0e}; "
                f"hat: |monodromy|/2pi={ratio:.4f}")


def _cli_exit(argv, patch_quadrature=False):
    saved = cli.evaluate
    if patch_quadrature:
        def failing(ctx, target, s):
            raise QuadratureError("forced quadrature failure")
        cli.evaluate = failing
    try:
        with redirect_stdout(StringIO()), redirect_stderr(StringIO()):
            return cli.main(argv)
    finally:
        cli.evaluate = saved


def check_9():
    with tempfile.TemporaryDirectory() as d:
        seq = Path(d) / "shifted.txt"
        io.write_sequence(seq, sieve_primes(100_000).primes + 1, digits=1)
        runs = []
        for i in range(2):
            csv, js = Path(d) / f"g{i}.csv", Path(d) / f"r{i}.json"
            cmds = [
                ["--out", str(csv), "scan", "primezeta", "--re-lo", "0.3", "--re-hi", "1.2", "--n-re", "7",
                 "--im-lo", "-1", "--im-hi", "1", "--n-im", "3"],
                ["--out", str(js), "theorem", "--perturbed", str(seq)],
                ["eval", "superzeta", "--s", "0.5+2i"],
            ]
            outs = [subprocess.run([sys.executable, "-W", "ignore", "-m", "zetalab.cli", *c], capture_output=True)
                    for c in cmds]
            runs.append((csv.read_bytes(), js.read_bytes(), outs[2].stdout, [o.returncode for o in outs]))
        identical = runs[0] == runs[1] and runs[0][3] == [0, 0, 0]
    codes = {
        0: _cli_exit(["eval", "zeta", "--s", "2"]),
        2: _cli_exit(["eval", "regdet", "--spectrum-generator", "primes"]),
        3: _cli_exit(["eval", "primezeta", "--s", "0.5"]),
        4: _cli_exit(["eval", "superzeta", "--s", "2"], patch_quadrature=True),
    }
    ok = identical and all(k == v for k, v in codes.items())
    return ok, f"byte-identical reruns={identical}; exit codes {codes}"


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8,
          9: check_9}


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n, capsys):
    ok, detail = CHECKS[n]()
    with capsys.disabled():
        print()
        _report(n, ok, detail)
    assert ok, detail


def main() -> int:
    failed = 0
    for n in sorted(CHECKS):
        try:
            ok, detail = CHECKS[n]()
        except Exception as exc:  # report and continue with the next criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        _report(n, ok, detail)
        failed += not ok
    print(f"{len(CHECKS) - failed}/{len(CHECKS)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
