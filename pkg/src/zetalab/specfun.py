"""Complex special functions: Gamma, zeta, xi, exponential integrals, theta sums.

The Riemann zeta function is evaluated by Euler-Maclaurin summation for
``Re(s) >= 0`` and through the functional equation for ``Re(s) < 0``. The
cutoff ``N`` grows with ``|s|`` and the Bernoulli correction depth is chosen
so the first dropped term is below the target error. Reported ``abs_err``
values are the Euler-Maclaurin remainder bound plus a rounding heuristic.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
from scipy import special as sp

from . import _accel
from .core import (
    EPS,
    BranchCutError,
    DomainError,
    EvalResult,
    PoleError,
    SingularError,
    as_point,
    rounding_err,
)

LOG_2PI = math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)
EULER_GAMMA = 0.5772156649015329

#: Exclusion radius around zero ordinates used by :func:`psi_critical`.
PSI_EXCLUSION = 1e-3


def _em_coefficients(kmax: int = 80) -> np.ndarray:
    """B_{2k}/(2k)! for k = 0..kmax, from exact Bernoulli numbers."""
    # Akiyama-Tanigawa, exact rationals
    nmax = 2 * kmax
    a = [Fraction(0)] * (nmax + 1)
    bern = []
    for m in range(nmax + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        bern.append(a[0])
    out = np.empty(kmax + 1)
    for k in range(kmax + 1):
        out[k] = float(bern[2 * k] / math.factorial(2 * k)) if k else 0.0
    return out


_EM_B = _em_coefficients()


def _em_raw(s: complex, deriv: bool, start: int = 1, tol: float = 1e-17):
    """Euler-Maclaurin for sum_{n>=start} n^{-s} (and its s-derivative).

    Returns ``(value, dvalue, trunc_bound, N)`` with the pole term included.
    Valid for any s != 1; intended for Re(s) >= 0.
    """
    sigma = s.real
    n_cut = max(start + 10, int(abs(s) / math.pi) + 12)
    kmax = len(_EM_B) - 2
    while True:
        head, dhead = _accel.dirichlet_sums(
            np.array([s]), start, np.array([n_cut], dtype=np.int64), deriv
        )
        head, dhead = complex(head[0]), complex(dhead[0])
        lnN = math.log(n_cut)
        n_pow = cmath.exp(-s * lnN)  # N^{-s}
        val = head + n_cut * n_pow / (s - 1.0) + 0.5 * n_pow
        dval = 0j
        if deriv:
            dval = (
                dhead
                - lnN * n_cut * n_pow / (s - 1.0)
                - n_cut * n_pow / (s - 1.0) ** 2
                - 0.5 * lnN * n_pow
            )
        poch, dpoch = s, 1.0 + 0j  # (s)_{2k-1} and derivative, k = 1
        npow = n_pow / n_cut  # N^{-s-1}
        inv_n2 = 1.0 / (n_cut * n_cut)
        prev = math.inf
        converged = False
        bound = 0.0
        for k in range(1, kmax + 1):
            term = _EM_B[k] * poch * npow
            mag = abs(term)
            if mag > prev and k > 3:
                break  # asymptotic series started to diverge: enlarge N
            val += term
            if deriv:
                dval += _EM_B[k] * (dpoch - lnN * poch) * npow
            # advance (s)_{2k-1} -> (s)_{2k+1}
            a, b = s + 2 * k - 1, s + 2 * k
            dpoch = dpoch * a * b + poch * (a + b)
            poch = poch * a * b
            npow *= inv_n2
            nxt = abs(_EM_B[k + 1] * poch * npow)
            prev = mag
            done = nxt < tol * max(abs(val), 1e-300)
            if deriv:
                # every value term carries a factor s, the derivative terms do not
                nxt_d = abs(_EM_B[k + 1] * (dpoch - lnN * poch) * npow)
                done = done and nxt_d < tol * max(abs(dval), 1e-300)
                nxt = max(nxt, nxt_d)
            if done and k >= 2:
                denom = sigma + 2 * k + 1
                fac = abs(s + 2 * k + 1) / denom if denom > 0 else 1e3
                bound = nxt * fac * (1.0 + lnN)
                converged = True
                break
        if converged:
            return val, dval, bound, n_cut
        n_cut *= 2


def _em_rounding(s: complex, value: complex, n_cut: int, deriv: bool = False) -> float:
    sigma = s.real
    if deriv:
        n = np.arange(2, n_cut + 1, dtype=np.float64)
        mass = max(float(np.sum(np.log(n) * n ** -sigma)), abs(value))
        return rounding_err(mass, 30) + EPS * abs(s.imag) * math.log(n_cut) * mass
    if abs(1.0 - sigma) < 1e-12:
        mass = 1.0 + math.log(n_cut)
    else:
        mass = 1.0 + (n_cut ** (1.0 - sigma) - 1.0) / (1.0 - sigma)
    mass = max(mass, abs(value), 1.0)
    phase = EPS * abs(s.imag) * math.log(n_cut) * mass
    return rounding_err(mass, 30) + phase


def _conj_sym(func):
    """Evaluate at Im(s) >= 0 and conjugate, giving exact conjugate symmetry."""

    def wrapper(s: complex, *args, **kwargs):
        if s.imag < 0.0:
            out = func(s.conjugate(), *args, **kwargs)
            return tuple(v.conjugate() if isinstance(v, complex) else v for v in out)
        return func(s, *args, **kwargs)

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper


def _chi_parts(s: complex):
    """chi(s) and chi'(s) with zeta(s) = chi(s) zeta(1-s)."""
    log_a = s * math.log(2.0) + (s - 1.0) * LOG_PI + complex(sp.loggamma(1.0 - s))
    z = 0.5 * math.pi * s
    dig = complex(sp.psi(1.0 - s))
    if abs(z.imag) <= 20.0:
        a = cmath.exp(log_a)
        chi = a * cmath.sin(z)
        dchi = a * (cmath.sin(z) * (LOG_2PI - dig) + 0.5 * math.pi * cmath.cos(z))
        return chi, dchi
    # sin z = (i/2) e^{-iz} (1 - e^{2iz}) for Im z > 0 (conjugate otherwise)
    if z.imag > 0:
        log_sin = cmath.log(0.5j) - 1j * z + cmath.log(1.0 - cmath.exp(2j * z))
        cot = 1j * (1.0 + cmath.exp(2j * z)) / (1.0 - cmath.exp(2j * z)) * -1.0
    else:
        log_sin = cmath.log(-0.5j) + 1j * z + cmath.log(1.0 - cmath.exp(-2j * z))
        cot = 1j * (1.0 + cmath.exp(-2j * z)) / (1.0 - cmath.exp(-2j * z))
    chi = cmath.exp(log_a + log_sin)
    dchi = chi * (LOG_2PI - dig + 0.5 * math.pi * cot)
    return chi, dchi


@_conj_sym
def _zeta_full(s: complex, deriv: bool = False):
    """(zeta, zeta', abs_err, abs_err') for any s != 1.

    Euler-Maclaurin is used down to Re(s) = -1 so that the reflection never
    evaluates zeta(1-s) right next to its pole.
    """
    if s.real >= -1.0:
        val, dval, bound, n_cut = _em_raw(s, deriv)
        err = bound + _em_rounding(s, val, n_cut)
        derr = bound * (1.0 + math.log(n_cut)) + _em_rounding(s, dval, n_cut, True) if deriv else 0.0
        return val, dval, err, derr
    r = 1.0 - s
    zr, dzr, er, der = _zeta_full(r, deriv)
    chi, dchi = _chi_parts(s)
    val = chi * zr
    err = abs(chi) * er + rounding_err(abs(val), 20)
    dval, derr = 0j, 0.0
    if deriv:
        dval = dchi * zr - chi * dzr
        derr = abs(dchi) * er + abs(chi) * der + rounding_err(abs(dval), 20)
    return val, dval, err, derr


def riemann_zeta(s) -> EvalResult:
    """Riemann zeta function on the whole plane except its pole at s = 1.

    >>> round(riemann_zeta(2).real, 12)
    1.644934066848
    """
    s = as_point(s)
    if s == 1:
        raise PoleError("zeta has a simple pole at s=1 (residue 1)", location=1 + 0j, order=1)
    val, _, err, _ = _zeta_full(s)
    method = "euler-maclaurin" if s.real >= -1.0 else "closed-form"
    return EvalResult(complex(val), float(err), method)


def zeta_with_derivative(s) -> tuple[complex, complex, float, float]:
    """Return ``(zeta(s), zeta'(s), err, err')``."""
    s = as_point(s)
    if s == 1:
        raise PoleError("zeta has a simple pole at s=1", location=1 + 0j, order=1)
    return _zeta_full(s, True)


def zeta_minus_one(s) -> tuple[complex, float]:
    """zeta(s) - 1 without cancellation, for Re(s) >= 2."""
    s = as_point(s)
    if s.real < 2.0:
        raise DomainError("zeta_minus_one is only used for Re(s) >= 2")
    conj = s.imag < 0
    if conj:
        s = s.conjugate()
    val, _, bound, n_cut = _em_raw(s, False, start=2)
    err = bound + rounding_err(abs(val), 30) + EPS * abs(s.imag) * math.log(n_cut) * abs(val)
    return (val.conjugate() if conj else val), err


def _zeta_times_sm1(s: complex) -> tuple[complex, float]:
    """(s-1) zeta(s), finite at s = 1."""
    if s.real < 0.0 or abs(s - 1.0) > 0.5:
        if s == 1:
            return 1.0 + 0j, EPS
        val, _, err, _ = _zeta_full(s)
        return (s - 1.0) * val, abs(s - 1.0) * err
    conj = s.imag < 0
    if conj:
        s = s.conjugate()
    n_cut = 24
    # (s-1)[head + N^{-s}/2 + corrections] + N^{1-s}
    head, _ = _accel.dirichlet_sums(np.array([s]), 1, np.array([n_cut], dtype=np.int64), False)
    n_pow = cmath.exp(-s * math.log(n_cut))
    rest = complex(head[0]) + 0.5 * n_pow
    poch, npow = s, n_pow / n_cut
    for k in range(1, 30):
        rest += _EM_B[k] * poch * npow
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        npow /= n_cut * n_cut
    val = (s - 1.0) * rest + n_cut * n_pow
    if conj:
        val = val.conjugate()
    return val, rounding_err(max(abs(val), 1.0), 60)


def gamma(s) -> EvalResult:
    """Euler Gamma function (scipy's complex log-gamma, exponentiated)."""
    s = as_point(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        raise PoleError(f"Gamma has a pole at s={s.real:g}", location=s, order=1)
    lg = complex(sp.loggamma(s))
    val = cmath.exp(lg)
    if s.imag == 0.0 and s.real > 0:
        val = complex(val.real, 0.0)
    err = 8.0 * EPS * max(1.0, abs(lg)) * abs(val)
    return EvalResult(val, err, "closed-form")


def _log_zeta_far(s: complex) -> tuple[complex, float]:
    zm1, err = zeta_minus_one(s)
    return _clog1p(zm1), err


def _clog1p(w: complex) -> complex:
    """log(1 + w) accurate for small complex w."""
    re = 0.5 * math.log1p(2.0 * w.real + (w.real * w.real + w.imag * w.imag))
    return complex(re, math.atan2(w.imag, 1.0 + w.real))


def log_zeta_continued(s: complex) -> tuple[complex, float]:
    """ln zeta(s) continued from +infinity along the horizontal line through s.

    Works for Re(s) > 0 away from zeros. On the real segment 0 < s < 1 the
    value is the limit from the upper half plane, ``ln|zeta(s)| - i*pi``.
    """
    s = as_point(s)
    if s.real >= 3.0:
        return _log_zeta_far(s)
    if s.imag == 0.0:
        if s.real == 1.0:
            raise PoleError("ln zeta has a logarithmic singularity at s=1", location=s)
        val, _, err, _ = _zeta_full(s)
        z = val.real
        if z > 0:
            return complex(math.log(z), 0.0), err / z
        return complex(math.log(-z), -math.pi), err / abs(z)
    if s.imag < 0:
        v, e = log_zeta_continued(s.conjugate())
        return v.conjugate(), e
    tau = s.imag
    x = 3.0
    lz, err_acc = _log_zeta_far(complex(x, tau))
    z_prev, dz_prev, _, _ = _zeta_full(complex(x, tau), True)
    track = lz.imag
    while x > s.real:
        dist = abs(z_prev / dz_prev) if dz_prev != 0 else 1.0
        h = min(0.25, 0.3 * dist, x - s.real)
        while True:
            x_new = max(x - h, s.real)
            z_new, dz_new, e_new, _ = _zeta_full(complex(x_new, tau), True)
            if z_new == 0:
                raise SingularError(f"zeta vanishes on the continuation path at {complex(x_new, tau)}")
            step = cmath.phase(z_new / z_prev)
            if abs(step) < 0.75 or h < 1e-12:
                break
            h *= 0.5
        track += step
        err_acc += e_new / max(abs(z_new), 1e-300)
        x, z_prev, dz_prev = x_new, z_new, dz_new
    ang = cmath.phase(z_prev)
    im = ang + 2.0 * math.pi * round((track - ang) / (2.0 * math.pi))
    return complex(math.log(abs(z_prev)), im), err_acc


def log_zeta(s) -> EvalResult:
    """Principal ln zeta(s) for Re(s) > 1, anchored so that ln zeta -> 0 at +infinity."""
    s = as_point(s)
    if s.real <= 1.0:
        raise DomainError("log_zeta is defined here for Re(s) > 1 only")
    val, err = log_zeta_continued(s)
    return EvalResult(val, float(err + rounding_err(abs(val), 10)), "euler-maclaurin")


def zeta_log_derivative(s) -> EvalResult:
    """zeta'(s)/zeta(s); raises SingularError at s = 1 and at zeros of zeta."""
    s = as_point(s)
    if s == 1:
        raise SingularError("zeta'/zeta has a pole at s=1")
    if s.real >= 3.0:
        # avoid 1 + tiny rounding when zeta ~ 1
        zm1, ez = zeta_minus_one(s)
        _, dz, _, dez = _zeta_full(s, True)
        z = 1.0 + zm1
        return EvalResult(dz / z, float(dez / abs(z) + abs(dz) * ez), "euler-maclaurin")
    z, dz, ez, dez = _zeta_full(s, True)
    if abs(z) <= 100.0 * ez:
        raise SingularError(f"zeta(s) is numerically zero at s={s}")
    val = dz / z
    err = dez / abs(z) + abs(val) * ez / abs(z)
    return EvalResult(val, float(err), "euler-maclaurin")


def psi_critical(t: float, exclusion: float = PSI_EXCLUSION, table=None) -> EvalResult:
    """Psi(t) = 2 Re[zeta'/zeta(1/2 + it)] evaluated from zeta and zeta'.

    Near a zero ordinate the quotient is dominated by a purely imaginary
    1/(i(t - gamma)) part whose cancellation destroys the real part, so
    points within ``exclusion`` of a zero raise :class:`SingularError`.
    :func:`psi_critical_closed` gives the same function without that loss.
    """
    t = float(t)
    if t < 0:
        raise DomainError("psi_critical expects t >= 0")
    if t >= 10.0:
        from .zeros import nearest_ordinate

        gam = nearest_ordinate(t, table)
        if gam is not None and abs(t - gam) < exclusion:
            raise SingularError(f"t={t} lies within {exclusion:g} of the zero ordinate {gam:.10f}")
    r = zeta_log_derivative(complex(0.5, t))
    return EvalResult(complex(2.0 * r.value.real, 0.0), 2.0 * r.abs_err, "euler-maclaurin")


def psi_critical_closed(t) -> np.ndarray:
    """Psi(t) = ln(pi) - Re digamma(1/4 + it/2), vectorised over ``t``.

    Follows from the functional equation: on the critical line the
    logarithmic derivative of xi is purely imaginary, leaving only the
    Gamma-factor contribution in the real part.
    """
    t = np.asarray(t, dtype=np.float64)
    return LOG_PI - np.real(sp.psi(0.25 + 0.5j * t))


# ---------------------------------------------------------------------------
# Exponential integrals
# ---------------------------------------------------------------------------


def _en_series(n: int, z: complex) -> complex:
    # E_n(z) = (-z)^{n-1}/(n-1)! [psi(n) - ln z] - sum_{m != n-1} (-z)^m / ((m-n+1) m!)
    psi_n = -EULER_GAMMA + sum(1.0 / k for k in range(1, n))
    fact = math.factorial(n - 1)
    lead = (-z) ** (n - 1) / fact * (psi_n - cmath.log(z))
    acc = 0j
    term = 1.0 + 0j  # (-z)^m / m!
    m = 0
    while True:
        if m != n - 1:
            contrib = term / (m - n + 1)
            acc -= contrib
            if m > n and abs(contrib) < 1e-17 * max(abs(acc), abs(lead), 1e-300):
                break
        m += 1
        term *= -z / m
        if m > 2000:
            break
    return lead + acc


def _en_contfrac(n: int, z: complex) -> complex:
    # modified Lentz on E_n(z) = e^{-z} / (z + n - 1*n/(z + n + 2 - 2(n+1)/(z + n + 4 - ...)))
    tiny = 1e-300
    b = z + n
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 20000):
        an = -i * (n - 1 + i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h * cmath.exp(-z)
    raise ArithmeticError("E_n continued fraction did not converge")


def _en_principal(n: int, z: complex) -> complex:
    if z == 0:
        if n == 1:
            raise PoleError("E_1 has a logarithmic singularity at z=0", location=0j)
        return complex(1.0 / (n - 1))
    az = abs(z)
    if az < 2.0 or (z.real < 0.0 and abs(z.imag) < 10.0):
        return _en_series(n, z)
    return _en_contfrac(n, z)


def exp_integral_En(n: int, z, sheet: int | None = None) -> EvalResult:
    """Generalised exponential integral E_n(z) = int_1^inf e^{-zt} t^{-n} dt.

    ``sheet`` selects the branch of the logarithm: the value on sheet ``m``
    equals the principal value shifted by ``-2*pi*i*m*(-z)^{n-1}/(n-1)!``.
    Points on the negative real axis require an explicit sheet; there the
    upper-side limit (arg z = pi) is used before the shift.
    """
    if int(n) != n or n < 1:
        raise DomainError("E_n needs an integer order n >= 1")
    n = int(n)
    z = as_point(z)
    on_cut = z.imag == 0.0 and z.real < 0.0
    if on_cut and sheet is None:
        raise BranchCutError(f"z={z} lies on the branch cut of E_{n}; pass sheet=")
    if on_cut:
        z_eval = complex(z.real, 0.0)
        val = _en_series(n, z_eval) if abs(z) < 40 else _en_contfrac(n, complex(z.real, 1e-300))
    else:
        val = _en_principal(n, z)
    m = sheet or 0
    if m:
        val += -2j * math.pi * m * (-z) ** (n - 1) / math.factorial(n - 1)
    err = 64.0 * EPS * max(abs(val), abs(cmath.exp(-z)) / max(abs(z), 1e-300) if z != 0 else 1.0)
    return EvalResult(val, float(err), "series")


# ---------------------------------------------------------------------------
# Theta sum and completed zeta
# ---------------------------------------------------------------------------


def jacobi_phi(x: float) -> EvalResult:
    """phi(x) = sum_{n>=1} exp(-n^2 pi x), stopped once the next term is < 1e-18 of the sum."""
    x = float(x)
    if not x > 0:
        raise DomainError("jacobi_phi needs x > 0")
    total = 0.0
    n = 1
    while True:
        term = math.exp(-n * n * math.pi * x)
        total += term
        nxt = math.exp(-(n + 1) ** 2 * math.pi * x)
        if nxt < 1e-18 * total or nxt == 0.0:
            break
        n += 1
    return EvalResult(complex(total, 0.0), float(nxt * 2 + rounding_err(total, n)), "series")


def completed_xi(s) -> EvalResult:
    """xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s); entire, xi(s) = xi(1-s)."""
    s = as_point(s)
    # Gamma(1 + s/2) has poles at s = -2, -4, ... where zeta vanishes; use the mirror there
    if s.real < -1.0 and abs(s.imag) < 1e-8:
        m = round(-s.real / 2.0)
        if m >= 1 and abs(s.real + 2 * m) < 1e-7:
            return completed_xi(1.0 - s)
    zs, ez = _zeta_times_sm1(s)
    log_pref = -0.5 * s * LOG_PI + complex(sp.loggamma(1.0 + 0.5 * s))
    pref = cmath.exp(log_pref)
    val = pref * zs
    if s.imag == 0.0:
        val = complex(val.real, 0.0)
    err = abs(pref) * ez + rounding_err(abs(val), 20) * max(1.0, abs(log_pref))
    return EvalResult(val, float(err), "euler-maclaurin")
