"""Command-line front end.

Exit codes: 0 success, 2 domain or format error, 3 singular or near-singular
point, 4 quadrature failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io as _io
import sys

import numpy as np

from . import io
from .arith import CountingSnapshot, sieve_primes
from .core import (
    PoleError,
    QuadratureError,
    SingularError,
    ZetalabError,
    parse_complex,
)
from .primezeta import ContinuationConfig, approach_grid, prime_zeta_continued, prime_zeta_direct, verify_theorem1
from .regdet import CountingModel, SpectrumSpec, approx_zeta_via_counting, reg_det
from .specfun import riemann_zeta
from .superzeta import superzeta_continued
from .zeros import compute_zeros, default_table, import_zeros, write_zeros

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_SINGULAR = 3
EXIT_QUADRATURE = 4

EVAL_TARGETS = ("zeta", "primezeta", "superzeta", "regdet", "approx")
SCAN_TARGETS = ("zeta", "primezeta", "superzeta", "approx-zeros", "approx-primes")
GENERATORS = ("integers", "primes", "riemann-zeros")


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, QuadratureError):
        return EXIT_QUADRATURE
    if isinstance(exc, (SingularError, PoleError)):
        return EXIT_SINGULAR
    return EXIT_DOMAIN


def format_value(z: complex) -> str:
    if z.imag == 0.0:
        return io.format_real(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{io.format_real(z.real)}{sign}{io.format_real(abs(z.imag))}i"


# ---------------------------------------------------------------------------
# Shared context built from the global flags
# ---------------------------------------------------------------------------


class Context:
    def __init__(self, args):
        self.args = args
        self._table = None

    def table(self):
        if self._table is None:
            zf = self.args.zeros_file
            self._table = import_zeros(zf) if zf else default_table()
        return self._table

    def config(self) -> ContinuationConfig:
        pt = self.args.precision_target
        return ContinuationConfig(eps_term=pt) if pt else ContinuationConfig()

    def spectrum(self) -> SpectrumSpec:
        a = self.args
        if getattr(a, "spectrum_file", None):
            return SpectrumSpec.explicit(io.read_sequence(a.spectrum_file), sample=a.sample)
        gen = getattr(a, "spectrum_generator", None) or "integers"
        zeros = self.table() if gen == "riemann-zeros" else None
        return SpectrumSpec(gen, zeros=zeros)


def _approx(ctx: Context, family: str, k: int, s: complex):
    if family == "zeros":
        spec = SpectrumSpec("riemann-zeros", zeros=ctx.table())
        model = CountingModel("t-ln-t", k)
    else:
        spec = SpectrumSpec("primes", truncation=max(k, 1))
        model = CountingModel("t-over-ln-t", k)
    return approx_zeta_via_counting(model, spec, s)


def evaluate(ctx: Context, target: str, s: complex):
    a = ctx.args
    if target == "zeta":
        return riemann_zeta(s)
    if target == "primezeta":
        if getattr(a, "direct", False):
            return prime_zeta_direct(s, sieve_primes(a.sieve_limit or 10_000_000))
        return prime_zeta_continued(s, ctx.config())
    if target == "superzeta":
        return superzeta_continued(s, ctx.table())
    if target == "regdet":
        return reg_det(ctx.spectrum())
    if target == "approx":
        return _approx(ctx, a.family, a.k, s)
    if target == "approx-zeros":
        return _approx(ctx, "zeros", a.k, s)
    if target == "approx-primes":
        return _approx(ctx, "primes", a.k, s)
    raise ValueError(target)


@contextlib.contextmanager
def _output(path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_eval(ctx: Context) -> int:
    a = ctx.args
    s = parse_complex(a.s) if a.s is not None else 0j
    r = evaluate(ctx, a.target, s)
    line = f"{format_value(r.value)} ± {io.format_real(r.abs_err)} {r.method}"
    with _output(a.out) as fh:
        print(line, file=fh)
    return EXIT_OK


def cmd_detlog(ctx: Context) -> int:
    ctx.args.target = "regdet"
    ctx.args.s = None
    return cmd_eval(ctx)


def cmd_approx(ctx: Context) -> int:
    ctx.args.target = "approx"
    return cmd_eval(ctx)


def _axis(lo: float, hi: float, n: int) -> np.ndarray:
    if n < 1 or lo > hi:
        raise ValueError("grid needs lo <= hi and at least one node")
    return np.array([lo]) if n == 1 else np.linspace(lo, hi, n)


def cmd_scan(ctx: Context) -> int:
    a = ctx.args
    try:
        res = _axis(a.re_lo, a.re_hi, a.n_re)
        ims = _axis(a.im_lo, a.im_hi, a.n_im)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re_s", "im_s", "re_val", "im_val", "abs_err", "error"])
    for im in ims:
        for re in res:
            s = complex(float(re), float(im))
            try:
                r = evaluate(ctx, a.target, s)
                row = [io.format_real(r.value.real), io.format_real(r.value.imag), io.format_real(r.abs_err), ""]
            except ZetalabError as exc:
                row = ["", "", "", type(exc).__name__]
            w.writerow([io.format_real(s.real), io.format_real(s.imag)] + row)
    with _output(a.out) as fh:
        fh.write(buf.getvalue())
    return EXIT_OK


def cmd_zeros(ctx: Context) -> int:
    a = ctx.args
    if a.action == "compute":
        table = compute_zeros(a.n)
        if a.out:
            write_zeros(table, a.out)
        else:
            for g in table.ordinates:
                print(f"{g:.12f}")
        return EXIT_OK
    table = import_zeros(a.path)
    if a.action == "import":
        print(f"count={table.count} horizon={io.format_real(table.horizon)} source={table.source}")
        return EXIT_OK
    worst = 0.0
    for g in table.ordinates:
        worst = max(worst, abs(riemann_zeta(complex(0.5, float(g))).value))
    line = f"count={table.count} max_residual={io.format_real(worst)}"
    with _output(a.out) as fh:
        print(line, file=fh)
    return EXIT_OK


def cmd_theorem(ctx: Context) -> int:
    a = ctx.args
    q = CountingSnapshot.from_sequence(io.read_sequence(a.perturbed))
    if a.base == "primes":
        limit = a.sieve_limit or max(int(np.ceil(q.horizon)), 2)
        base = sieve_primes(limit).counting()
    else:
        base = CountingSnapshot.from_sequence(io.read_sequence(a.base))
    grid = approach_grid(0.5, a.grid_points)
    report = verify_theorem1(q, a.k, grid, base=base)
    with _output(a.out) as fh:
        fh.write(report.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zetalab", description="Prime zeta, super-zeta and regularised determinants.")
    p.add_argument("--zeros-file", help="zeros file to use instead of the cached computed table")
    p.add_argument("--sieve-limit", type=int, help="prime sieve limit for direct sums and the theorem check")
    p.add_argument("--precision-target", type=float, help="term-size stopping threshold of the prime zeta series")
    p.add_argument("--out", help="output file (default: standard output)")
    sub = p.add_subparsers(dest="command", required=True)

    def spectrum_opts(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--spectrum-generator", choices=GENERATORS)
        g.add_argument("--spectrum-file", help="explicit spectrum, one positive value per line")
        sp.add_argument("--sample", action="store_true",
                        help="treat the spectrum file as a truncated sample of an infinite sequence")

    e = sub.add_parser("eval", help="evaluate a function at one point")
    e.add_argument("target", choices=EVAL_TARGETS)
    e.add_argument("--s", help='complex point, e.g. "2", "0.5+14i"')
    e.add_argument("--direct", action="store_true", help="primezeta: direct prime sum (Re s > 1)")
    e.add_argument("--family", choices=("zeros", "primes"), default="zeros")
    e.add_argument("--k", type=int, default=1, help="cut index for the counting approximants")
    spectrum_opts(e)
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("detlog", help="regularised determinant (same as eval regdet)")
    spectrum_opts(d)
    d.set_defaults(func=cmd_detlog)

    ap = sub.add_parser("approx", help="counting-function approximation of a spectral zeta function")
    ap.add_argument("--family", choices=("zeros", "primes"), required=True)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--s", required=True)
    ap.set_defaults(func=cmd_approx)

    sc = sub.add_parser("scan", help="evaluate on a rectangular grid and write CSV")
    sc.add_argument("target", choices=SCAN_TARGETS)
    for name in ("re-lo", "re-hi", "im-lo", "im-hi"):
        sc.add_argument(f"--{name}", type=float, required=True)
    sc.add_argument("--n-re", type=int, default=1)
    sc.add_argument("--n-im", type=int, default=1)
    sc.add_argument("--k", type=int, default=1)
    sc.set_defaults(func=cmd_scan)

    z = sub.add_parser("zeros", help="compute, import or verify zero ordinates")
    zs = z.add_subparsers(dest="action", required=True)
    zc = zs.add_parser("compute")
    zc.add_argument("n", type=int)
    zi = zs.add_parser("import")
    zi.add_argument("path")
    zv = zs.add_parser("verify")
    zv.add_argument("path")
    z.set_defaults(func=cmd_zeros)

    t = sub.add_parser("theorem", help="check a perturbed sequence against the prime counting function")
    t.add_argument("--base", default="primes", help='"primes" or a sequence file')
    t.add_argument("--perturbed", required=True)
    t.add_argument("--k", type=float, default=0.0, help="exponent of the (ln x)^k hypothesis")
    t.add_argument("--grid-points", type=int, default=20)
    t.set_defaults(func=cmd_theorem)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = Context(args)
    try:
        return args.func(ctx)
    except ZetalabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code(exc)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
