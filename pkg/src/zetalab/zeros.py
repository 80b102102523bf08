"""Nontrivial zeros on the critical line: Riemann-Siegel Z(t), zero finding, tables.

Zeros are bracketed by sign changes of the Riemann-Siegel approximation on a
grid finer than the mean spacing 2*pi/ln(t/2*pi), located with Brent's
method and then polished by Newton steps on Z(t) = e^{i theta(t)} zeta(1/2+it)
computed with Euler-Maclaurin, so every stored ordinate is accurate to the
Euler-Maclaurin error rather than the Riemann-Siegel remainder.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import optimize
from scipy import special as sp

from . import _accel, io
from .core import DomainError, EvalResult, MissedZeroError
from .specfun import LOG_PI, zeta_with_derivative

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MAX_ZEROS = 100_000
DEFAULT_ZEROS = 10_000
#: Uncertainty of a stored ordinate (files keep 12 decimals).
ORDINATE_ERR = 1e-12
#: Largest Riemann-Siegel error bound accepted by :func:`riemann_siegel_Z`.
RS_TARGET = 1e-10


# ---------------------------------------------------------------------------
# theta(t) and the Riemann-Siegel remainder
# ---------------------------------------------------------------------------


def siegel_theta(t):
    """Riemann-Siegel theta(t) = arg Gamma(1/4 + it/2) - (t/2) ln pi (continuous branch)."""
    t = np.asarray(t, dtype=np.float64)
    return np.imag(sp.loggamma(0.25 + 0.5j * t)) - 0.5 * t * LOG_PI


def siegel_theta_prime(t):
    t = np.asarray(t, dtype=np.float64)
    return 0.5 * np.real(sp.psi(0.25 + 0.5j * t)) - 0.5 * LOG_PI


def _psi_taylor(deg: int = 64, nodes: int = 256, radius: float = 1.0) -> np.ndarray:
    """Taylor coefficients about p = 1/2 of cos(2pi(p^2-p-1/16))/cos(2pi p)."""
    theta = TWO_PI * np.arange(nodes) / nodes
    p = 0.5 + radius * np.exp(1j * theta)
    vals = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)
    coef = np.fft.fft(vals) / nodes
    coef = coef[:deg].real / radius ** np.arange(deg)
    return coef


_PSI_POLY = np.polynomial.Polynomial(_psi_taylor())
_PSI_DERIVS = [_PSI_POLY.deriv(k) if k else _PSI_POLY for k in range(13)]

_PI2, _PI4, _PI6, _PI8 = math.pi ** 2, math.pi ** 4, math.pi ** 6, math.pi ** 8


def _rs_corrections(p: np.ndarray) -> list[np.ndarray]:
    x = p - 0.5
    d = [f(x) for f in _PSI_DERIVS]
    c0 = d[0]
    c1 = -d[3] / (96 * _PI2)
    c2 = d[2] / (64 * _PI2) + d[6] / (18432 * _PI4)
    c3 = -d[1] / (64 * _PI2) - d[5] / (3840 * _PI4) - d[9] / (5308416 * _PI6)
    c4 = (
        d[0] / (128 * _PI2)
        + 19 * d[4] / (24576 * _PI4)
        + 11 * d[8] / (5898240 * _PI6)
        + d[12] / (2038431744 * _PI8)
    )
    return [c0, c1, c2, c3, c4]


def rs_Z_array(t) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised Riemann-Siegel Z(t) for t >= 2pi, with a remainder estimate."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(t < TWO_PI):
        raise DomainError("the Riemann-Siegel formula needs t >= 2*pi")
    tau = np.sqrt(t / TWO_PI)
    n = np.floor(tau).astype(np.int64)
    p = tau - n
    theta = siegel_theta(t)
    main = 2.0 * _accel.rs_main_sum(t, theta, n)
    a = 1.0 / tau
    cs = _rs_corrections(p)
    series = cs[0] + a * (cs[1] + a * (cs[2] + a * (cs[3] + a * cs[4])))
    sign = np.where(n % 2 == 1, 1.0, -1.0)  # (-1)^{N-1}
    pref = sign * tau ** -0.5
    z = main + pref * series
    # Gabcke's remainder bound after C4, plus rounding in the main sum
    err = 0.031 * t ** -2.75 + 2.0 * np.sqrt(n) * 2.3e-16 * (1.0 + 4.0 * t * np.log(n + 1.0))
    return z, err


def Z_em(t: float) -> tuple[float, float, float]:
    """Z(t) and Z'(t) from the Euler-Maclaurin zeta; returns (Z, Z', abs_err)."""
    th = float(siegel_theta(t))
    dth = float(siegel_theta_prime(t))
    z, dz, ez, _ = zeta_with_derivative(complex(0.5, t))
    rot = complex(math.cos(th), math.sin(th))
    val = (rot * z).real
    dval = (rot * (1j * dth * z + 1j * dz)).real
    return val, dval, ez


def riemann_siegel_Z(t: float) -> EvalResult:
    """Hardy's Z(t), real with |Z(t)| = |zeta(1/2+it)|.

    Uses the Riemann-Siegel expansion with remainder terms C0..C4 when its
    error bound is below ``RS_TARGET``; otherwise Euler-Maclaurin on the
    critical line is tried too and the result with the smaller bound wins.
    """
    t = float(t)
    rs = None
    if t >= TWO_PI:
        z, err = rs_Z_array([t])
        rs = EvalResult(complex(float(z[0]), 0.0), float(err[0]), "series")
        if rs.abs_err <= RS_TARGET:
            return rs
    val, _, err = Z_em(t)
    em = EvalResult(complex(val, 0.0), float(err), "euler-maclaurin")
    return rs if rs is not None and rs.abs_err < em.abs_err else em


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def smooth_count(T: float) -> float:
    """(T/2pi) ln(T/2pi) - T/2pi + 7/8."""
    x = T / TWO_PI
    return x * math.log(x) - x + 0.875


def height_for_count(n: float) -> float:
    """Smallest T with smooth_count(T) >= n (Newton on the smooth estimate)."""
    T = max(20.0, TWO_PI * n / max(math.log(max(n, 2.0)), 1.0))
    for _ in range(60):
        f = smooth_count(T) - n
        df = math.log(T / TWO_PI) / TWO_PI
        step = f / df
        T -= step
        T = max(T, 7.0)
        if abs(step) < 1e-10:
            break
    return T


def mean_gap(t: float) -> float:
    return TWO_PI / math.log(max(t, 7.0) / TWO_PI)


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ZerosTable:
    """Ascending positive ordinates gamma_k of zeros rho = 1/2 + i gamma_k.

    ``horizon`` is the largest t for which the table is claimed complete:
    every zero ordinate <= horizon is listed.
    """

    ordinates: np.ndarray
    source: str
    horizon: float

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=np.float64)
        if g.size and (np.any(np.diff(g) <= 0) or g[0] <= 0):
            raise DomainError("zero ordinates must be positive and strictly ascending")
        if self.source not in ("computed", "imported"):
            raise DomainError(f"unknown table source {self.source!r}")
        g.setflags(write=False)
        object.__setattr__(self, "ordinates", g)

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    def __len__(self) -> int:
        return self.count

    def count_upto(self, T: float) -> int:
        return int(np.searchsorted(self.ordinates, T, side="right"))

    def head(self, n: int) -> ZerosTable:
        n = min(n, self.count)
        if n == self.count:
            return self
        hz = 0.5 * (self.ordinates[n - 1] + self.ordinates[n]) if n else 0.0
        return ZerosTable(self.ordinates[:n], self.source, float(hz))


def _grid(t_lo: float, t_hi: float, per_gap: float) -> np.ndarray:
    pts = [t_lo]
    t = t_lo
    while t < t_hi:
        seg_end = min(t + 50.0, t_hi)
        h = mean_gap(seg_end) / per_gap
        k = max(1, int(math.ceil((seg_end - t) / h)))
        pts.append(np.linspace(t, seg_end, k + 1)[1:])
        t = seg_end
    return np.concatenate([np.atleast_1d(pts[0])] + pts[1:])


def _polish(root: float, iters: int = 3) -> float:
    t = root
    for _ in range(iters):
        z, dz, _ = Z_em(t)
        if dz == 0:
            break
        step = z / dz
        t -= step
        if abs(step) < 1e-13 * t:
            break
    return t


def _scan(t_lo: float, t_hi: float, per_gap: float, polish: bool) -> np.ndarray:
    grid = _grid(t_lo, t_hi, per_gap)
    z, _ = rs_Z_array(grid)
    sgn = np.sign(z)
    idx = np.flatnonzero(sgn[:-1] * sgn[1:] < 0)

    def f(x):
        return float(rs_Z_array([x])[0][0])

    roots = np.empty(idx.size)
    for j, i in enumerate(idx):
        r = optimize.brentq(f, grid[i], grid[i + 1], xtol=1e-13, rtol=1e-15)
        roots[j] = _polish(r) if polish else r
    return roots


def _count_consistent(roots: np.ndarray, n_needed: int) -> tuple[bool, int]:
    """Compare table counts with the smooth counting estimate at midpoints.

    Missed sign changes come in pairs, so an even mismatch is a failure; a
    mismatch of one at a single midpoint is the S(t) fluctuation and is
    accepted if any of the neighbouring midpoints agrees.
    """
    checks = []
    for k in range(max(n_needed, 1), min(n_needed + 5, roots.size)):
        mid = 0.5 * (roots[k - 1] + roots[k])
        checks.append(k - round(smooth_count(mid)))
    if not checks:
        return False, 0
    if any(c != 0 and c % 2 == 0 for c in checks):
        return False, next(c for c in checks if c % 2 == 0 and c != 0)
    return any(c == 0 for c in checks), checks[0]


def compute_zeros(N: int, max_zeros: int = MAX_ZEROS, polish: bool = True) -> ZerosTable:
    """First ``N`` zero ordinates on the critical line."""
    N = int(N)
    if N < 1 or N > max_zeros:
        raise DomainError(f"N must lie in [1, {max_zeros}]")
    T = height_for_count(N + 6) + 3.0 * mean_gap(height_for_count(N + 6))
    per_gap = 8.0
    for _ in range(4):
        roots = _scan(10.0, T, per_gap, polish)
        ok, mismatch = _count_consistent(roots, N)
        if ok and roots.size > N:
            horizon = 0.5 * (roots[N - 1] + roots[N])
            return ZerosTable(roots[:N], "computed", float(horizon))
        log.info("zero count mismatch %d with %.0f points per gap; refining", mismatch, per_gap)
        per_gap *= 2.0
    raise MissedZeroError(
        f"zero count near T={T:.3f} disagrees with the counting estimate by {mismatch}"
    )


def import_zeros(path) -> ZerosTable:
    """Read a zeros file (see :mod:`zetalab.io`); horizon = last ordinate."""
    g = io.read_sequence(path)
    horizon = float(g[-1]) if g.size else 0.0
    return ZerosTable(g, "imported", horizon)


def write_zeros(table: ZerosTable, path) -> Path:
    header = f"zeta zero ordinates, count={table.count}, source={table.source}, horizon={table.horizon:.9f}"
    return io.write_sequence(path, table.ordinates, header=header, digits=12)


def cache_dir() -> Path:
    root = os.environ.get("ZETALAB_CACHE")
    path = Path(root) if root else Path.home() / ".cache" / "zetalab"
    path.mkdir(parents=True, exist_ok=True)
    return path


@lru_cache(maxsize=4)
def _cached_table(n: int) -> ZerosTable:
    d = cache_dir()
    best = None
    for f in d.glob("zeros_*.txt"):
        try:
            k = int(f.stem.split("_")[1])
        except (IndexError, ValueError):
            continue
        if k >= n and (best is None or k < best[0]):
            best = (k, f)
    if best is not None:
        try:
            t = import_zeros(best[1])
            if t.count >= n:
                return ZerosTable(t.ordinates, "computed", t.horizon).head(n) if t.count > n else ZerosTable(
                    t.ordinates, "computed", _horizon_from_file(best[1], t)
                )
        except Exception:  # corrupt cache entry: recompute
            log.warning("ignoring unreadable cache file %s", best[1])
    table = compute_zeros(n)
    tmp = d / f"zeros_{n}.txt.tmp"
    write_zeros(table, tmp)
    tmp.replace(d / f"zeros_{n}.txt")
    return table


def _horizon_from_file(path: Path, table: ZerosTable) -> float:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if "horizon=" in first:
        try:
            return float(first.split("horizon=")[1].split()[0])
        except ValueError:
            pass
    return table.horizon


def default_table(n: int = DEFAULT_ZEROS) -> ZerosTable:
    """First ``n`` zeros, computed once and cached on disk under ``ZETALAB_CACHE``."""
    return _cached_table(int(n))


def table_up_to(T: float) -> ZerosTable:
    """A cached computed table complete at least up to height ``T``."""
    n = 100
    while True:
        tab = default_table(n)
        if tab.horizon >= T:
            return tab
        n = max(2 * n, int(smooth_count(T)) + 20)


def nearest_ordinate(t: float, table: ZerosTable | None = None) -> float | None:
    if table is None:
        table = table_up_to(t + 5.0)
    g = table.ordinates
    if not g.size:
        return None
    i = int(np.searchsorted(g, t))
    cands = [g[j] for j in (i - 1, i) if 0 <= j < g.size]
    return float(min(cands, key=lambda x: abs(x - t)))
