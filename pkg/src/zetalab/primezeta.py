"""The prime zeta function P(s) = sum over primes of p^{-s}.

Direct summation for Re(s) > 1, continuation into 0 < Re(s) <= 1 through the
Moebius-weighted series of ln zeta(ks), a scan of the logarithmic
singularities at s = 1/k, and a numerical verifier for the statement that a
sequence Q whose counting function stays within C (ln x)^k of pi(x) shares
the singularities of P.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from . import io
from .arith import CountingSnapshot, PrimeSieve, difference_steps, mobius, primes_up_to, sieve_primes
from .core import (
    EPS,
    DomainError,
    EvalResult,
    NearSingularError,
    TailUnboundedError,
    as_point,
    rounding_err,
)
from .specfun import _clog1p, log_zeta_continued

# ---------------------------------------------------------------------------
# Direct summation
# ---------------------------------------------------------------------------


def _prime_power_sum(primes: np.ndarray, s: complex) -> complex:
    logp = np.log(primes.astype(np.float64))
    return complex(np.sum(np.exp(-s * logp)))


def prime_zeta_direct(s, sieve: PrimeSieve) -> EvalResult:
    """Sum of p^{-s} over the sieved primes plus a prime-number-theorem tail.

    The tail beyond L = sieve.limit is the integral of t^{-s} against
    li(t) minus the boundary correction L^{-s}(pi(L) - li(L)); the reported
    error bounds the remaining integral of s (pi - li)(t) t^{-s-1} with
    Schoenfeld's |pi(x) - li(x)| < sqrt(x) ln x / (8 pi), which assumes the
    Riemann hypothesis.
    """
    s = as_point(s)
    if s.real <= 1.0:
        raise DomainError("direct summation of P(s) needs Re(s) > 1")
    head = _prime_power_sum(sieve.primes, s)
    L = float(sieve.limit)
    lnL = math.log(L)
    w = (s - 1.0) * lnL
    e1 = complex(sp.exp1(w)) if s.imag else float(sp.exp1(w.real))
    count = float(sieve.primes.size)
    li = float(sp.expi(lnL))
    tail = e1 - cmath.exp(-s * lnL) * (count - li)
    sig = s.real - 0.5
    const = 1.0 / (8.0 * math.pi) if L >= 2657 else 1.0
    tail_err = abs(s) * const * L ** (-sig) * (lnL / sig + 1.0 / sig ** 2)
    val = head + tail
    if s.imag == 0.0:
        val = complex(val.real, 0.0)
    err = tail_err + rounding_err(abs(head), int(math.log2(max(count, 2))) + 4)
    return EvalResult(val, float(err), "series")


# ---------------------------------------------------------------------------
# Continuation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuationConfig:
    """Truncation and safety settings for the Moebius continuation.

    Attributes:
        K_max: largest k used in sum_k mu(k)/k ln zeta(ks).
        eps_term: stop at the first square-free k whose term is smaller.
        exclusion: minimum distance in the s-plane kept from the singular
            points 1/k and from the points rho/k with zeta(rho) = 0.
        split: primes below ``split`` are summed explicitly and removed from
            the Euler product, so the remaining terms decay like split^{-k Re s}.
    """

    K_max: int = 200
    eps_term: float = 1e-16
    exclusion: float = 1e-9
    split: int = 100

    def __post_init__(self):
        if self.K_max < 2:
            raise DomainError("K_max must be >= 2")
        if not self.eps_term > 0 or not self.exclusion > 0:
            raise DomainError("eps_term and exclusion must be positive")
        if self.split < 2:
            raise DomainError("split must be >= 2")


_DIRECT_PRIME_LIMIT = 100_000


def _log_zeta_tail(w: complex, split: int) -> tuple[complex, float]:
    """ln of the Euler product restricted to primes >= split."""
    small = primes_up_to(split - 1)
    if w.real >= 8.0:
        # direct sum is cheaper and avoids cancellation against ln zeta
        ps = primes_up_to(_DIRECT_PRIME_LIMIT)
        ps = ps[ps >= split].astype(np.float64)
        lp = np.log(ps)
        t1 = np.exp(-w * lp)
        val = complex(np.sum(t1) + 0.5 * np.sum(t1 * t1) + np.sum(t1 ** 3) / 3.0)
        tail = _DIRECT_PRIME_LIMIT ** (1.0 - w.real) / (w.real - 1.0)
        return val, tail + rounding_err(abs(val), 8)
    lz, err = log_zeta_continued(w)
    corr = 0j
    for p in small:
        corr += _clog1p(-cmath.exp(-w * math.log(p)))
    val = lz + corr
    return val, err + rounding_err(max(abs(lz), abs(corr)), 2 * small.size + 4)


def _tail_bound(K: int, sigma: float, split: int) -> float:
    """Bound on sum_{k>K} |ln zeta_split(k s)| / k, valid when (K+1) sigma > 1."""
    total = 0.0
    lnA = math.log(split)
    k = K + 1
    while True:
        x = k * sigma
        if x <= 1.0:
            return math.inf
        term = 2.0 * (math.exp(-x * lnA) + math.exp((1.0 - x) * lnA) / (x - 1.0)) / k
        total += term
        if term < 1e-30 * max(total, 1e-300) or k > K + 100_000:
            break
        k += 1
    return total


def _check_exclusion(s: complex, cfg: ContinuationConfig, kmax: int) -> None:
    for k in range(1, kmax + 1):
        if abs(s - 1.0 / k) < cfg.exclusion and mobius(k) != 0:
            raise NearSingularError(
                f"s={s} is within {cfg.exclusion:g} of the singular point 1/{k}", k=k, location=complex(1.0 / k)
            )
    if s.imag == 0.0:
        return
    from .zeros import nearest_ordinate

    for k in range(1, kmax + 1):
        w = k * s
        if w.real >= 1.0:
            break
        gam = nearest_ordinate(abs(w.imag))
        if gam is None:
            continue
        rho = complex(0.5, math.copysign(gam, w.imag))
        if abs(w - rho) / k < cfg.exclusion:
            raise NearSingularError(
                f"s={s} is within {cfg.exclusion:g} of a zero of zeta({k}s)", k=k, location=rho / k
            )


def prime_zeta_continued(s, cfg: ContinuationConfig | None = None) -> EvalResult:
    """P(s) for Re(s) > 0 from sum_k mu(k)/k ln zeta(ks).

    On the real segments between the singular points the logarithm is the
    limit from the upper half plane (ln zeta(x) = ln|zeta(x)| - i pi for
    0 < x < 1), so P picks up a constant imaginary part there.
    """
    cfg = cfg or ContinuationConfig()
    s = as_point(s)
    if s.real <= 0.0:
        raise DomainError("Re(s) = 0 is a natural boundary of P(s); no continuation to Re(s) <= 0")
    if (cfg.K_max + 1) * s.real <= 1.5:
        raise DomainError(f"K_max={cfg.K_max} is too small for Re(s)={s.real:g}; need (K_max+1) Re(s) > 1.5")
    _check_exclusion(s, cfg, cfg.K_max)

    small = primes_up_to(cfg.split - 1)
    val = _prime_power_sum(small, s) if small.size else 0j
    err = rounding_err(abs(val), small.size + 2)
    k_used = 0
    for k in range(1, cfg.K_max + 1):
        mu = mobius(k)
        if mu == 0:
            continue
        lz, lerr = _log_zeta_tail(k * s, cfg.split)
        term = mu * lz / k
        val += term
        err += lerr / k
        k_used = k
        if abs(term) < cfg.eps_term and (k + 1) * s.real > 1.5:
            break
    err += _tail_bound(k_used, s.real, cfg.split) + rounding_err(abs(val), 2 * k_used)
    if s.imag == 0.0 and s.real > 1.0:
        val = complex(val.real, 0.0)
    return EvalResult(val, float(err), "series")


# ---------------------------------------------------------------------------
# Singularity scan
# ---------------------------------------------------------------------------

KINDS = ("pole", "log-singularity", "branch-point", "none")


@dataclass(frozen=True)
class SingularPoint:
    location: complex
    kind: str
    strength: float
    order: int | None = None

    def kind_label(self) -> str:
        return f"pole({self.order})" if self.kind == "pole" else self.kind

    def to_dict(self) -> dict:
        return {"location": io.point_json(self.location), "kind": self.kind_label(), "strength": float(self.strength)}


@dataclass(frozen=True)
class SingularityReport:
    points: tuple[SingularPoint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        locs = [p.location for p in self.points]
        for i, a in enumerate(locs):
            for b in locs[i + 1 :]:
                if abs(a - b) < 1e-12:
                    raise DomainError("singular point locations must be distinct")

    def locations(self) -> list[complex]:
        return [p.location for p in self.points]

    def to_dict(self) -> dict:
        return {"points": [p.to_dict() for p in self.points]}

    def to_json(self) -> str:
        return io.dumps_json(self.to_dict())


SCAN_EPSILONS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


def singular_remainder(k: int, eps: float, cfg: ContinuationConfig | None = None) -> complex:
    """P(1/k + eps) - (mu(k)/k) ln zeta(1 + k eps): finite as eps -> 0 iff the singular part is right."""
    cfg = cfg or ContinuationConfig()
    s = 1.0 / k + eps
    p = prime_zeta_continued(s, cfg).value
    lz, _ = log_zeta_continued(complex(1.0 + k * eps, 0.0))
    return p - mobius(k) / k * lz


def singularity_scan(re_lo: float, re_hi: float, cfg: ContinuationConfig | None = None,
                     epsilons=SCAN_EPSILONS) -> SingularityReport:
    """Logarithmic singularities of P on the real segment [re_lo, re_hi].

    Each candidate 1/k (k square-free) is confirmed by checking that
    subtracting (mu(k)/k) ln zeta(ks) leaves a function bounded along the
    approach s = 1/k + eps, and the reported strength is the measured slope
    of P against -ln(eps) between the two smallest eps values.
    """
    cfg = cfg or ContinuationConfig()
    if not 0.0 < re_lo < re_hi:
        raise DomainError("need 0 < re_lo < re_hi")
    points = []
    k_lo = max(1, math.ceil(1.0 / re_hi - 1e-12))
    k_hi = math.floor(1.0 / re_lo + 1e-12)
    for k in range(k_lo, k_hi + 1):
        mu = mobius(k)
        if mu == 0:
            continue
        rem = [abs(singular_remainder(k, e, cfg)) for e in epsilons]
        bounded = max(rem) <= 10.0 * rem[0] + 1e-6
        e1, e2 = epsilons[-2], epsilons[-1]
        p1 = prime_zeta_continued(1.0 / k + e1, cfg).value.real
        p2 = prime_zeta_continued(1.0 / k + e2, cfg).value.real
        slope = (p2 - p1) / (math.log(e1) - math.log(e2))
        kind = "log-singularity" if bounded else "none"
        points.append(SingularPoint(complex(1.0 / k, 0.0), kind, slope))
    points.sort(key=lambda p: -p.location.real)
    return SingularityReport(tuple(points))


# ---------------------------------------------------------------------------
# Perturbed-sequence verifier
# ---------------------------------------------------------------------------


def _decade_maxima(points: np.ndarray, diff: np.ndarray, k: float, horizon: float):
    top = math.floor(math.log10(horizon))
    out = []
    for d in range(max(top - 3, 0), top + 1):
        lo, hi = 10.0 ** d, min(10.0 ** (d + 1), horizon)
        mask = (points >= lo) & (points < hi) & (points > 1.0)
        if hi - lo < 0.5 * (10.0 ** (d + 1) - lo):
            continue
        if not mask.any():
            out.append(0.0)
            continue
        out.append(float(np.max(np.abs(diff[mask]) / np.log(points[mask]) ** k)))
    return out


@dataclass(frozen=True)
class HypothesisFit:
    k: float
    C: float
    max_ratio: float
    decade_maxima: tuple[float, ...]
    bounded: bool

    def to_dict(self) -> dict:
        return {"k": float(self.k), "C": float(self.C), "max_ratio": float(self.max_ratio)}


def fit_hypothesis(base: CountingSnapshot, q: CountingSnapshot, k: float, horizon: float) -> HypothesisFit:
    """Fit |pi - pi_Q| <= C (ln x)^k over the top decade below ``horizon``.

    C is the least-squares slope of |D| against (ln x)^k there (a heuristic
    envelope); ``max_ratio`` is the largest |D| / (C (ln x)^k) seen over the
    whole data range. Growth of the per-decade maxima of |D| / (ln x)^k by
    more than 20% over each of the last decades flags an unbounded ratio.
    """
    pts, diff = difference_steps(base, q, horizon)
    top = pts >= horizon / 10.0
    lk = np.log(np.maximum(pts, math.e)) ** k
    if top.any():
        a = np.abs(diff[top])
        C = float(np.dot(a, lk[top]) / np.dot(lk[top], lk[top]))
    else:
        C = 0.0
    nz = pts > 1.0
    ratio = np.abs(diff[nz]) / lk[nz]
    peak = float(ratio.max()) if ratio.size else 0.0
    max_ratio = peak / C if C > 0 else (0.0 if peak == 0 else math.inf)
    maxima = _decade_maxima(pts, diff, k, horizon)
    growing = len(maxima) >= 3 and all(
        m2 > 1.2 * m1 and m1 > 0 for m1, m2 in zip(maxima[-3:-1], maxima[-2:])
    )
    return HypothesisFit(k, C, max_ratio, tuple(maxima), not growing)


def theorem1_difference_G(s, base: CountingSnapshot, q: CountingSnapshot, a: float, k: float = 0.0,
                          horizon: float | None = None) -> EvalResult:
    """G(s) = s * integral_a^inf (pi(t) - pi_Q(t)) t^{-s-1} dt.

    The difference of counting functions is piecewise constant, so the
    integral up to the data horizon H is the exact sum
    sum_i D_i (b_i^{-s} - b_{i+1}^{-s}). Beyond H the difference is frozen at
    its last value D_H, contributing D_H H^{-s}; the error of that
    extrapolation is bounded using |D(t)| <= C (ln t)^k with the fitted C.
    """
    s = as_point(s)
    if s.real <= 0.0:
        raise DomainError("G(s) is only defined for Re(s) > 0")
    if not 0.0 < a < min(2.0, q.first, base.first):
        raise DomainError("need 0 < a < min(2, q_1)")
    H = float(horizon if horizon is not None else min(base.horizon, q.horizon))
    fit = fit_hypothesis(base, q, k, H)
    if not fit.bounded:
        raise TailUnboundedError(
            f"|pi - pi_Q| / (ln x)^{k:g} keeps growing up to x={H:g}", ratios=list(fit.decade_maxima)
        )
    pts, diff = difference_steps(base, q, H)
    ends = np.append(pts[1:], H)
    nz = diff != 0
    if nz.any():
        b0, b1, dv = pts[nz], ends[nz], diff[nz]
        terms = dv * (np.exp(-s * np.log(b0)) - np.exp(-s * np.log(b1)))
        body = complex(np.sum(terms))
        body_err = rounding_err(float(np.sum(np.abs(terms))), 8)
    else:
        body, body_err = 0j, 0.0
    d_last = float(diff[-1]) if diff.size else 0.0
    lnH = math.log(H)
    tail = d_last * cmath.exp(-s * lnH)
    sig = s.real
    C_eff = fit.C * max(fit.max_ratio, 1.0) if math.isfinite(fit.max_ratio) else 0.0
    inc = float(sp.gammaincc(k + 1.0, sig * lnH) * sp.gamma(k + 1.0)) * sig ** (-k - 1.0)
    tail_err = abs(s) * (C_eff * inc + abs(d_last) * H ** (-sig) / sig)
    val = body + tail
    if s.imag == 0.0:
        val = complex(val.real, 0.0)
    return EvalResult(val, float(tail_err + body_err + EPS * abs(val)), "closed-form")


VERDICTS = ("consistent", "hypothesis-violated", "divergence-detected")


@dataclass(frozen=True)
class GridEntry:
    s: complex
    G_value: complex
    abs_err: float

    def to_dict(self) -> dict:
        return {"s": io.point_json(self.s), "G_value": io.point_json(self.G_value), "abs_err": float(self.abs_err)}


@dataclass(frozen=True)
class TheoremReport:
    hypothesis_check: HypothesisFit
    grid: tuple[GridEntry, ...]
    verdict: str

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise DomainError(f"unknown verdict {self.verdict!r}")
        if any(g.s.real <= 0 for g in self.grid):
            raise DomainError("grid points must have Re(s) > 0")

    def to_dict(self) -> dict:
        return {
            "hypothesis_check": self.hypothesis_check.to_dict(),
            "grid": [g.to_dict() for g in self.grid],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return io.dumps_json(self.to_dict())


def approach_grid(center: float = 0.5, n: int = 20, start: float = 0.2) -> list[complex]:
    """Real points center + start * 2^{-j}, j = 0..n-1, closing in on ``center``."""
    return [complex(center + start * 2.0 ** -j, 0.0) for j in range(n)]


def _second_differences(grid: list[complex], vals: list[complex]) -> float:
    worst = 0.0
    for i in range(1, len(grid) - 1):
        a, b, c = grid[i - 1], grid[i], grid[i + 1]
        fa, fb, fc = vals[i - 1], vals[i], vals[i + 1]
        d1 = (fb - fa) / (b - a)
        d2 = (fc - fb) / (c - b)
        worst = max(worst, abs(2.0 * (d2 - d1) / (c - a)))
    return worst


SMOOTHNESS_LIMIT = 1e4


def verify_theorem1(q: CountingSnapshot, k: float, grid, base: CountingSnapshot | None = None,
                    a: float | None = None) -> TheoremReport:
    """Check the numerical content of the singularity-sharing theorem for Q.

    The verdict is ``consistent`` when the hypothesis ratio stays bounded at
    the data horizon and G is finite with bounded second divided differences
    over ``grid``; ``hypothesis-violated`` when the ratio keeps growing;
    ``divergence-detected`` otherwise.
    """
    grid = [as_point(z) for z in grid]
    for z in grid:
        if not 0.0 < z.real <= 1.5:
            raise DomainError("grid points must satisfy 0 < Re(s) <= 1.5")
    if base is None:
        base = sieve_primes(max(int(math.ceil(q.horizon)), 2)).counting()
    H = min(base.horizon, q.horizon)
    if a is None:
        a = 0.5 * min(2.0, q.first, base.first)
    fit = fit_hypothesis(base, q, k, H)
    if not fit.bounded:
        return TheoremReport(fit, (), "hypothesis-violated")
    entries = []
    for z in grid:
        r = theorem1_difference_G(z, base, q, a, k, horizon=H)
        entries.append(GridEntry(z, r.value, r.abs_err))
    vals = [e.G_value for e in entries]
    finite = all(cmath.isfinite(v) for v in vals)
    scale = 1.0 + max((abs(v) for v in vals), default=0.0)
    smooth = finite and _second_differences(grid, vals) <= SMOOTHNESS_LIMIT * scale
    return TheoremReport(fit, tuple(entries), "consistent" if smooth else "divergence-detected")
