"""The super-zeta function G(s) = sum over zero ordinates gamma > 0 of gamma^{-s}.

Direct summation handles Re(s) > 1. The continuation works with the
completed function Lambda_G(s) = Gamma(s/2) pi^{-s/2} G(s), the Mellin
transform of sum_gamma exp(-pi gamma^2 x), split at x = 1 into B (the part
over [1, inf)) and A (over [0, 1]). The explicit formula for the theta-type
sum over zeros turns A into A1 + A2 + A3:

* A1: a von Mangoldt sum integrated over [1, inf) after x -> 1/x (entire);
* A2: the elementary integral of x^{s/2-1} e^{pi x/4}, summed in closed form;
* A3: -(1/2pi) times the Mellin transform over [0, 1] of
  I(x) = integral_0^inf exp(-pi x t^2) Psi(t) dt.

I(x) grows like x^{-1/2} ln x as x -> 0, so the Mellin integral for A3
only converges for Re(s) > 1. It is continued here by cutting Psi at t = T0:
the low part is handled by a convergent moment series near x = 0 plus
quadrature, the high part in closed form from the asymptotic expansion of
Psi(t) = ln pi - Re digamma(1/4 + it/2), which carries the double pole at
s = 1 and the simple poles at s = -1, -3, ...
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as sp

from . import _accel
from .arith import prime_power_table
from .core import (
    EPS,
    DomainError,
    EvalResult,
    PoleError,
    QuadratureError,
    as_point,
    rounding_err,
)
from .quadrature import composite_nodes, integrate
from .specfun import LOG_PI, psi_critical, psi_critical_closed
from .zeros import ORDINATE_ERR, ZerosTable, smooth_count

TWO_PI = 2.0 * math.pi
LOG_2PI = math.log(TWO_PI)

#: Split point of Psi(t) between quadrature and asymptotic expansion.
T0 = 10.0
X0 = 1.0 / (math.pi * T0 * T0)
#: Upper end of the A1 integral in u = ln x; the integrand is ~exp(-0.038 x) there.
A1_UMAX = math.log(4000.0)
DEFAULT_NMAX = 2_000_000
#: Sieve length for the explicit-formula check (the x = 2 tail needs more primes).
RESIDUAL_NMAX = 8_000_000
_MOMENTS = 26
_ASYM_TERMS = 15
_A2_TERMS = 60


# ---------------------------------------------------------------------------
# Direct summation
# ---------------------------------------------------------------------------


def trudgian_S_bound(t: float) -> float:
    """Upper bound for |S(t)| (plus the O(1/t) remainder of the zero count)."""
    lt = math.log(t)
    return 0.112 * lt + 0.278 * math.log(lt) + 2.51 + 0.2 / t


TAIL_MODELS = ("riemann-von-mangoldt", "t-ln-t")


def superzeta_direct(s, table: ZerosTable, tail_model: str = "riemann-von-mangoldt") -> EvalResult:
    """Sum of gamma^{-s} over the table plus a counting-function tail.

    The default tail integrates t^{-s} against the smooth zero count
    (t/2pi) ln(t/2pi) - t/2pi + 7/8 beyond the table horizon T and corrects
    for the count mismatch at T; the error bounds the remaining
    Stieltjes integral against S(t). ``tail_model="t-ln-t"`` uses
    F(t) = t ln t instead (no error bound beyond the difference of models).
    """
    s = as_point(s)
    if s.real <= 1.0:
        raise DomainError("direct summation of G(s) needs Re(s) > 1")
    if table.count == 0:
        raise DomainError("the zeros table is empty")
    if tail_model not in TAIL_MODELS:
        raise DomainError(f"unknown tail model {tail_model!r}")
    g = table.ordinates
    terms = np.exp(-s * np.log(g))
    head = complex(np.sum(terms))
    # d(gamma^{-s}) = -s gamma^{-s-1} d(gamma)
    ord_err = abs(s) * ORDINATE_ERR * float(np.sum(np.abs(terms) / g))
    T = float(table.horizon)
    lnT = math.log(T)
    sm1 = s - 1.0
    pw = cmath.exp(-sm1 * lnT)  # T^{1-s}
    count = table.count_upto(T)
    sig = s.real
    if tail_model == "riemann-von-mangoldt":
        tail = pw / TWO_PI * ((lnT - LOG_2PI) / sm1 + 1.0 / sm1 ** 2)
        tail += cmath.exp(-s * lnT) * (smooth_count(T) - count)
        err = abs(s) * T ** -sig * (trudgian_S_bound(T) / sig + 0.112 / sig ** 2)
    else:
        tail = pw * (lnT / sm1 + 1.0 / sm1 ** 2 + 1.0 / sm1)
        alt = pw / TWO_PI * ((lnT - LOG_2PI) / sm1 + 1.0 / sm1 ** 2)
        err = abs(tail - alt)
    val = head + tail
    if s.imag == 0.0:
        val = complex(val.real, 0.0)
    err += ord_err + rounding_err(abs(head), int(math.log2(g.size)) + 4)
    return EvalResult(val, float(err), "series")


# ---------------------------------------------------------------------------
# Von Mangoldt Gaussian sums  S(x) = sum_n Lambda(n) n^{-1/2} exp(-(ln n)^2 / (4 pi x))
# ---------------------------------------------------------------------------


def _zero_tail(x: np.ndarray, U: float, gammas: np.ndarray) -> np.ndarray:
    """Contribution of the zeros to the Stieltjes tail beyond e^U (see vm_gauss_sum)."""
    out = np.zeros(x.shape)
    if gammas.size == 0:
        return out
    amp = np.exp(-U * U / (4.0 * math.pi * x))
    for i in np.flatnonzero(amp > 1e-22):
        xi = x[i]
        z = (U - 2j * math.pi * xi * gammas) / (2.0 * math.sqrt(math.pi * xi))
        terms = math.pi * math.sqrt(xi) * amp[i] * np.exp(1j * gammas * U) * sp.wofz(1j * z)
        out[i] = -2.0 * float(np.sum(terms.real))
    return out


def vm_gauss_sum(x, n_max: int = DEFAULT_NMAX, table: ZerosTable | None = None, tail: bool = True):
    """S(x) for an array of x > 0, returning ``(values, error_estimates)``.

    With ``tail=True`` the terms n > n_max are replaced by the Stieltjes
    integral of the same weight against psi(t) = t - sum_rho t^rho/rho - ...:
    the ``t`` part in closed form (an erfc), and each zero in the table
    through the Faddeeva function. The reported error covers the zeros
    beyond the table and the trivial-zero part.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(x <= 0):
        raise DomainError("S(x) needs x > 0")
    n, lp = prime_power_table(int(n_max))
    ln_n = np.log(n)
    weights = lp / np.sqrt(n)
    coef = 1.0 / (4.0 * math.pi * x)
    vals = _accel.gauss_sums(weights, ln_n * ln_n, coef)
    err = rounding_err(1.0, 1) * np.maximum(np.abs(vals), 1.0) * math.log2(n.size)
    if not tail:
        U = math.log(n_max + 0.5)
        trunc = math.pi * np.sqrt(x) * np.exp(math.pi * x / 4.0) * sp.erfc((U - math.pi * x) / (2.0 * np.sqrt(math.pi * x)))
        return vals, err + trunc
    U = math.log(n_max + 0.5)
    sx = np.sqrt(x)
    smooth = math.pi * sx * np.exp(math.pi * x / 4.0) * sp.erfc((U - math.pi * x) / (2.0 * np.sqrt(math.pi * x)))
    gam = table.ordinates if table is not None else np.zeros(0)
    zt = _zero_tail(x, U, gam)
    amp = np.exp(-U * U / (4.0 * math.pi * x))
    gmax = float(gam[-1]) if gam.size else 14.0
    err = err + amp * (2.0 + math.log(gmax)) / math.sqrt(gmax) + np.exp(-2.5 * U)
    return vals + smooth + zt, err


# ---------------------------------------------------------------------------
# Psi integrals
# ---------------------------------------------------------------------------


def _psi_cutoff(x: float) -> float:
    return math.sqrt(46.0 / (math.pi * x))


def psi_integral(x: float, route: str = "closed", table: ZerosTable | None = None, delta: float = 4e-3):
    """I(x) = integral_0^inf exp(-pi x t^2) Psi(t) dt; returns ``(value, error)``.

    ``route="closed"`` integrates the digamma form of Psi. ``route="direct"``
    evaluates Psi from zeta'/zeta on the critical line and treats each zero
    ordinate as a principal value: windows of half-width delta and delta/2
    around the ordinates are cut out and the two results are Richardson
    extrapolated to zero width.
    """
    if x <= 0:
        raise DomainError("I(x) needs x > 0")
    tmax = _psi_cutoff(x)
    if route == "closed":
        # Psi varies on the scale t ~ 1 near the origin and like ln t beyond, so graded pieces
        edges = [0.0, 1.0]
        while edges[-1] < tmax:
            edges.append(min(2.0 * edges[-1], tmax))
        val, err = 0.0, 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            v, e = integrate(lambda t: np.exp(-math.pi * x * t * t) * psi_critical_closed(t), a, b,
                             rtol=1e-14, atol=1e-17)
            val += v
            err += e
        return float(val), float(err) + rounding_err(abs(val), 40 + 4 * len(edges))
    if route != "direct":
        raise DomainError(f"unknown route {route!r}")
    gam = table.ordinates[table.ordinates < tmax + 1.0] if table is not None else np.zeros(0)

    def psi_direct(ts):
        return np.array([psi_critical(float(t), exclusion=0.25 * delta, table=table).value.real for t in ts])

    def f(ts):
        return np.exp(-math.pi * x * ts * ts) * psi_direct(ts)

    def excised(d):
        edges = [0.0]
        for g in gam:
            edges += [g - d, g + d]
        edges.append(tmax)
        total, terr = 0.0, 0.0
        for a, b in zip(edges[0::2], edges[1::2]):
            if b > a:
                v, e = integrate(f, a, b, rtol=1e-11, atol=1e-15, order=16)
                total += v
                terr += e
        return total, terr

    i1, e1 = excised(delta)
    i2, e2 = excised(0.5 * delta)
    val = 2.0 * i2 - i1
    return float(val), float(e1 + e2 + abs(i2 - i1) * 0.25 * delta)


def explicit_formula_terms(x: float, table: ZerosTable, n_max: int = DEFAULT_NMAX, tail: bool = True,
                           route: str = "closed") -> dict:
    """The four terms of the explicit formula for sum_gamma exp(-pi gamma^2 x)."""
    g = table.ordinates
    zeros_sum = float(np.sum(np.exp(-math.pi * x * g * g)))
    S, serr = vm_gauss_sum(np.array([x]), n_max, table, tail=tail)
    I, ierr = psi_integral(x, route=route, table=table)
    pref = 1.0 / (TWO_PI * math.sqrt(x))
    return {
        "zeros": (zeros_sum, rounding_err(zeros_sum, 4) + math.exp(-math.pi * x * table.horizon ** 2) * 10.0),
        "von_mangoldt": (pref * float(S[0]), pref * float(serr[0])),
        "exponential": (math.exp(math.pi * x / 4.0), EPS * math.exp(math.pi * x / 4.0)),
        "psi": (I / TWO_PI, ierr / TWO_PI),
    }


def explicit_formula_residual(x: float, table: ZerosTable, n_max: int = RESIDUAL_NMAX, tail: bool = True,
                              route: str = "closed") -> EvalResult:
    """Residual of the explicit formula relating zeros, primes and Psi at ``x``.

    residual = sum_gamma e^{-pi gamma^2 x}
               + (1/(2 pi sqrt x)) sum_n Lambda(n) n^{-1/2} e^{-(ln n)^2/(4 pi x)}
               - e^{pi x/4} + (1/2pi) integral_0^inf e^{-pi x t^2} Psi(t) dt
    """
    if not x > 0:
        raise DomainError("x must be positive")
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    terms = explicit_formula_terms(x, table, n_max, tail, route)
    z, vm, ex, ps = (terms[k] for k in ("zeros", "von_mangoldt", "exponential", "psi"))
    res = z[0] + vm[0] - ex[0] + ps[0]
    err = z[1] + vm[1] + ex[1] + ps[1] + rounding_err(max(abs(vm[0]), ex[0], abs(ps[0])), 4)
    return EvalResult(complex(res, 0.0), float(err), "quadrature")


# ---------------------------------------------------------------------------
# Continuation machinery (s-independent pieces are cached)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _psi_asymptotic_coefficients(m_max: int = _ASYM_TERMS) -> np.ndarray:
    """c_m with Psi(t) ~ ln(2 pi) - ln t + sum_m c_m (t/2)^{-2m}."""
    b = sp.bernoulli(2 * m_max)
    out = np.zeros(m_max + 1)
    for m in range(1, m_max + 1):
        b_quarter = 2.0 ** (-2 * m) * (2.0 ** (1 - 2 * m) - 1.0) * b[2 * m]
        out[m] = (-1) ** m * b_quarter / (2 * m)
    return out


def psi_asymptotic(t, m_max: int = _ASYM_TERMS):
    t = np.asarray(t, dtype=np.float64)
    c = _psi_asymptotic_coefficients(m_max)
    h = (0.5 * t) ** -2.0
    acc = np.zeros_like(t)
    for m in range(m_max, 0, -1):
        acc = (acc + c[m]) * h
    return LOG_2PI - np.log(t) + acc


def _k_integral(s: complex) -> tuple[complex, float]:
    """K(s) = integral_{T0}^inf Psi(t) t^{-s} dt from the asymptotic series."""
    sm1 = s - 1.0
    lt = math.log(T0)
    base = cmath.exp(-sm1 * lt)  # T0^{1-s}
    val = LOG_2PI * base / sm1 - base * (lt / sm1 + 1.0 / sm1 ** 2)
    c = _psi_asymptotic_coefficients()
    for m in range(1, _ASYM_TERMS + 1):
        val += c[m] * 2.0 ** (2 * m) * base * T0 ** (-2 * m) / (s + 2 * m - 1.0)
    # first omitted term, used as the truncation error
    m = _ASYM_TERMS + 1
    b = float(sp.bernoulli(2 * m)[-1])
    c_next = abs(2.0 ** (-2 * m) * (2.0 ** (1 - 2 * m) - 1.0) * b / (2 * m))
    err = c_next * 2.0 ** (2 * m) * abs(base) * T0 ** (-2 * m) / max(abs(s + 2 * m - 1.0), 1e-3)
    return val, err + rounding_err(abs(val), 4 * _ASYM_TERMS)


def _low_psi_integral(x: np.ndarray, panels: int = 24) -> np.ndarray:
    """L(x) = integral_0^{T0} exp(-pi x t^2) Psi(t) dt for each x."""
    t, w = composite_nodes(0.0, T0, panels)
    psi = psi_critical_closed(t)
    return np.exp(-math.pi * np.outer(x, t * t)) @ (w * psi)


@lru_cache(maxsize=1)
def _moments() -> np.ndarray:
    """ell_j = (-pi)^j / j! * integral_0^{T0} t^{2j} Psi(t) dt, j < _MOMENTS."""
    t, w = composite_nodes(0.0, T0, 48)
    psi = psi_critical_closed(t)
    out = np.empty(_MOMENTS)
    for j in range(_MOMENTS):
        out[j] = (-math.pi) ** j / math.factorial(j) * float(np.dot(w, t ** (2 * j) * psi))
    return out


@dataclass(frozen=True, eq=False)
class _LowGrid:
    v: np.ndarray  # nodes in v = ln x on [ln X0, 0]
    w: np.ndarray
    L: np.ndarray


@lru_cache(maxsize=2)
def _low_grid(panels: int) -> _LowGrid:
    v, w = composite_nodes(math.log(X0), 0.0, panels)
    return _LowGrid(v, w, _low_psi_integral(np.exp(v)))


@dataclass(frozen=True, eq=False)
class _A1Grid:
    u: np.ndarray
    w: np.ndarray
    S: np.ndarray
    S_err: np.ndarray


_A1_CACHE: dict = {}


def _a1_grid(panels: int, n_max: int, table: ZerosTable) -> _A1Grid:
    key = (panels, n_max, table.count, table.horizon)
    hit = _A1_CACHE.get(key)
    if hit is None:
        u, w = composite_nodes(0.0, A1_UMAX, panels)
        S, err = vm_gauss_sum(np.exp(-u), n_max, table)
        hit = _A1Grid(u, w, S, err)
        if len(_A1_CACHE) > 8:
            _A1_CACHE.clear()
        _A1_CACHE[key] = hit
    return hit


_A1_PANELS = 48
_LOW_PANELS = 24


def _a1(s: complex, n_max: int, table: ZerosTable) -> tuple[complex, float]:
    vals = []
    for p in (_A1_PANELS, 2 * _A1_PANELS):
        g = _a1_grid(p, n_max, table)
        kern = np.exp(g.u * (1.0 - s) / 2.0)
        vals.append((-1.0 / TWO_PI) * complex(np.dot(g.w * kern, g.S)))
        if p == 2 * _A1_PANELS:
            serr = float(np.dot(g.w * np.abs(kern), g.S_err)) / TWO_PI
    quad_err = abs(vals[1] - vals[0])
    return vals[1], quad_err + serr + rounding_err(abs(vals[1]), 50)


def _a2(s: complex) -> tuple[complex, float]:
    half = 0.5 * s
    val = 0j
    term_scale = 1.0
    for n in range(_A2_TERMS):
        if n:
            term_scale *= (math.pi / 4.0) / n
        den = half + n
        if den == 0:
            raise PoleError(f"A2 has a pole at s={-2 * n}", location=complex(-2 * n), order=1)
        val += term_scale / den
    return val, rounding_err(abs(val) + 2.0 / max(abs(s), 1e-300), 2 * _A2_TERMS)


def _b(s: complex, table: ZerosTable) -> tuple[complex, float]:
    """integral_1^inf x^{s/2-1} sum_gamma exp(-pi gamma^2 x) dx by its asymptotic series."""
    a = 0.5 * s
    val = 0j
    err = 0.0
    for g in table.ordinates:
        c = math.pi * g * g
        if c > 740.0:
            break
        lead = math.exp(-c) / c
        t1 = (a - 1.0) / c
        t2 = t1 * (a - 2.0) / c
        val += lead * (1.0 + t1 + t2)
        err += lead * abs(t2 * (a - 3.0) / c)
    # ordinates beyond the table: the first omitted one bounds the rest
    return val, err


def _j_low(s: complex) -> tuple[complex, float]:
    """integral_0^1 x^{s/2-1} L(x) dx: moment series on [0, X0] plus quadrature on [X0, 1]."""
    half = 0.5 * s
    ell = _moments()
    series = 0j
    for j, lj in enumerate(ell):
        den = half + j
        if den == 0:
            raise PoleError(f"pole at s={-2 * j}", location=complex(-2 * j), order=1)
        series += lj * cmath.exp((half + j) * math.log(X0)) / den
    tail_bound = abs(ell[-1]) * X0 ** (_MOMENTS + half.real) * 2.0
    vals = []
    for p in (_LOW_PANELS, 2 * _LOW_PANELS):
        g = _low_grid(p)
        vals.append(complex(np.dot(g.w * np.exp(g.v * half), g.L)))
    quad_err = abs(vals[1] - vals[0])
    val = series + vals[1]
    return val, quad_err + tail_bound + rounding_err(abs(series) + abs(vals[1]), 60)


def _completion(s: complex) -> complex:
    """Gamma(s/2) pi^{-s/2}."""
    return cmath.exp(complex(sp.loggamma(0.5 * s)) - 0.5 * s * LOG_PI)


def _inv_completion(s: complex) -> complex:
    """pi^{s/2} / Gamma(s/2), entire (zero at s = 0, -2, -4, ...)."""
    return complex(sp.rgamma(0.5 * s)) * cmath.exp(0.5 * s * LOG_PI)


@dataclass(frozen=True)
class SuperZetaParts:
    """Pieces of Gamma(s/2) pi^{-s/2} G(s) = A1 + A2 + A3 + B, with Phi = A1 + B."""

    A1: EvalResult
    A2: EvalResult
    A3: EvalResult
    B: EvalResult
    Phi: EvalResult

    def total(self) -> complex:
        return self.Phi.value + self.A2.value + self.A3.value


def superzeta_parts(s, table: ZerosTable, n_max: int = DEFAULT_NMAX) -> SuperZetaParts:
    s = as_point(s)
    if s == 1:
        raise PoleError("A3 has a double pole at s=1", location=1 + 0j, order=2)
    a1, e1 = _a1(s, n_max, table)
    a2, e2 = _a2(s)
    b, eb = _b(s, table)
    jl, ej = _j_low(s)
    comp = _completion(s)
    k, ek = _k_integral(s)
    a3 = -(jl + comp * k) / TWO_PI
    e3 = (ej + abs(comp) * ek) / TWO_PI + rounding_err(abs(comp * k), 10)
    phi = a1 + b
    return SuperZetaParts(
        A1=EvalResult(a1, e1, "quadrature"),
        A2=EvalResult(a2, e2, "series"),
        A3=EvalResult(a3, e3, "closed-form"),
        B=EvalResult(b, eb, "series"),
        Phi=EvalResult(phi, e1 + eb, "quadrature"),
    )


def _continued_raw(s: complex, table: ZerosTable, n_max: int) -> tuple[complex, float]:
    a1, e1 = _a1(s, n_max, table)
    a2, e2 = _a2(s)
    b, eb = _b(s, table)
    jl, ej = _j_low(s)
    k, ek = _k_integral(s)
    inv = _inv_completion(s)
    bracket = b + a1 + a2 - jl / TWO_PI
    val = inv * bracket - k / TWO_PI
    err = abs(inv) * (e1 + e2 + eb + ej / TWO_PI) + ek / TWO_PI
    err += rounding_err(abs(inv) * (abs(a1) + abs(a2) + abs(jl) / TWO_PI) + abs(k) / TWO_PI, 20)
    return val, err


CIRCLE_RADIUS = 1e-3
CIRCLE_NODES = 16


def superzeta_continued(s, table: ZerosTable, n_max: int = DEFAULT_NMAX) -> EvalResult:
    """G(s) on the whole plane minus its poles.

    Near s = 0, -2, -4, ... the factor 1/Gamma(s/2) cancels poles of A2 and
    of the moment series; there the value is the mean over a small circle,
    which equals the value at the centre for the analytic function.
    """
    s = as_point(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleError("G has a double pole at s=1", location=1 + 0j, order=2)
    for m in range(1, _ASYM_TERMS + 1):
        if abs(s - (1 - 2 * m)) < 1e-12:
            raise PoleError(f"G has a simple pole at s={1 - 2 * m}", location=complex(1 - 2 * m), order=1)
    n_even = round(-s.real / 2.0)
    if n_even >= 0 and abs(s + 2 * n_even) < 1e-6:
        c = -2.0 * n_even
        acc = 0j
        err = 0.0
        for j in range(CIRCLE_NODES):
            z = c + CIRCLE_RADIUS * cmath.exp(2j * math.pi * (j + 0.5) / CIRCLE_NODES)
            v, e = _continued_raw(z, table, n_max)
            acc += v
            err = max(err, e)
        val = acc / CIRCLE_NODES
        # linear Taylor term to reach s from the circle centre
        if s != c:
            h = 1e-4
            dp, _ = _continued_raw(c + CIRCLE_RADIUS + h, table, n_max)
            dm, _ = _continued_raw(c + CIRCLE_RADIUS - h, table, n_max)
            val += (s - c) * (dp - dm) / (2 * h)
        method = "quadrature"
    else:
        val, err = _continued_raw(s, table, n_max)
        method = "quadrature"
    if s.imag == 0.0:
        val = complex(val.real, 0.0)
    if not cmath.isfinite(val):
        raise QuadratureError(f"non-finite continuation value at s={s}", estimate=val, error=err)
    return EvalResult(val, float(err), method)


def a3_identity(s, table: ZerosTable, n_max: int = DEFAULT_NMAX) -> EvalResult:
    """A3 recovered as Gamma(s/2) pi^{-s/2} G(s) - A1 - A2 - B from direct summation (Re s > 1)."""
    s = as_point(s)
    d = superzeta_direct(s, table)
    a1, e1 = _a1(s, n_max, table)
    a2, e2 = _a2(s)
    b, eb = _b(s, table)
    comp = _completion(s)
    val = comp * d.value - a1 - a2 - b
    return EvalResult(val, float(abs(comp) * d.abs_err + e1 + e2 + eb), "series")


def a3_quadrature(s, table: ZerosTable | None = None, route: str = "closed", panels: int = 12) -> EvalResult:
    """A3 = -(1/2pi) integral_0^1 x^{s/2-1} I(x) dx by direct quadrature in ln x (Re s > 1)."""
    s = as_point(s)
    if s.real <= 1.0:
        raise DomainError("the Mellin integral defining A3 converges only for Re(s) > 1")
    lo = math.log(1e-12) * 2.0 / (s.real - 1.0)
    lo = max(lo, math.log(1e-9))
    v, w = composite_nodes(lo, 0.0, panels, order=16)
    vals = np.array([psi_integral(math.exp(t), route=route, table=table)[0] for t in v])
    val = -(1.0 / TWO_PI) * complex(np.dot(w * np.exp(v * 0.5 * s), vals))
    # the neglected [0, e^lo] piece behaves like x^{(s-1)/2} ln x
    tail = math.exp(lo * (s.real - 1.0) / 2.0) * abs(lo) / (s.real - 1.0) * 4.0
    return EvalResult(val, float(tail), "quadrature")
