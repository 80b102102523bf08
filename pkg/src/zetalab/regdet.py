"""Spectral zeta functions, zeta-regularised determinants and singularity probes.

A spectrum is either an explicit list of eigenvalues or one of the named
generators (integers, primes, zero ordinates). ``spectral_zeta`` dispatches
named generators to the dedicated modules so that continuations are shared;
``reg_det`` returns exp(-zeta_D'(0)) when zeta_D is analytic at the origin.
The counting-function approximants and ``laurent_probe`` contrast a double
pole (counting like t ln t) with a logarithmic branch point (t / ln t).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .arith import CountingSnapshot, primes_up_to
from .core import (
    BranchCutError,
    DomainError,
    EvalResult,
    NotRegularizableError,
    PoleError,
    QuadratureError,
    ZeroEigenvalueError,
    as_point,
    rounding_err,
)
from .primezeta import ContinuationConfig, approach_grid, prime_zeta_continued, verify_theorem1
from .specfun import exp_integral_En, riemann_zeta
from .superzeta import superzeta_continued
from .zeros import DEFAULT_ZEROS, ZerosTable, default_table

KINDS = ("explicit", "integers", "primes", "riemann-zeros")


@dataclass(frozen=True, eq=False)
class SpectrumSpec:
    """Eigenvalues lambda_n, each multiplied by ``scale``.

    Attributes:
        kind: one of ``explicit``, ``integers``, ``primes``, ``riemann-zeros``.
        values: the eigenvalues of an explicit spectrum.
        scale: the factor mu^2 > 0 applied to every eigenvalue.
        truncation: for generators, how many elements are materialised when a
            finite list is needed (and the zeros table size for zero ordinates).
        sample: marks an explicit list as a truncated sample of an infinite
            sequence rather than a complete finite spectrum.
        zeros: optional zeros table for ``riemann-zeros``.
    """

    kind: str
    values: tuple[float, ...] | None = None
    scale: float = 1.0
    truncation: int | None = None
    sample: bool = False
    zeros: ZerosTable | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown spectrum kind {self.kind!r}")
        if not self.scale > 0:
            raise DomainError("scale must be positive")
        if self.kind == "explicit":
            if self.values is None:
                raise DomainError("an explicit spectrum needs values")
            vals = tuple(float(v) for v in self.values)
            if any(v == 0 for v in vals):
                raise ZeroEigenvalueError("the zero eigenvalue must be omitted from the spectrum")
            if any(v < 0 for v in vals) or any(b <= a for a, b in zip(vals, vals[1:])):
                raise DomainError("explicit eigenvalues must be positive and strictly ascending")
            object.__setattr__(self, "values", vals)

    @classmethod
    def explicit(cls, values, scale: float = 1.0, sample: bool = False) -> SpectrumSpec:
        return cls("explicit", tuple(values), scale=scale, sample=sample)

    def scaled(self, mu2: float) -> SpectrumSpec:
        return SpectrumSpec(self.kind, self.values, self.scale * mu2, self.truncation, self.sample, self.zeros)

    def table(self) -> ZerosTable:
        return self.zeros if self.zeros is not None else default_table(self.truncation or DEFAULT_ZEROS)

    def eigenvalues(self, count: int | None = None) -> np.ndarray:
        """The first ``count`` unscaled eigenvalues as an array."""
        if self.kind == "explicit":
            v = np.asarray(self.values, dtype=np.float64)
            return v if count is None else v[:count]
        n = count or self.truncation
        if n is None:
            raise DomainError(f"a count is needed to list a {self.kind} spectrum")
        if self.kind == "integers":
            return np.arange(1, n + 1, dtype=np.float64)
        if self.kind == "primes":
            limit = max(16, int(n * (math.log(n + 2) + math.log(math.log(n + 3)) + 2)))
            return primes_up_to(limit)[:n].astype(np.float64)
        return self.table().ordinates[:n]


def _scale_factor(spec: SpectrumSpec, s: complex) -> complex:
    return 1.0 if spec.scale == 1.0 else cmath.exp(-s * math.log(spec.scale))


def spectral_zeta(spec: SpectrumSpec, s, cfg: ContinuationConfig | None = None) -> EvalResult:
    """zeta_D(s) = sum_n (scale * lambda_n)^{-s}, continued where the generator allows."""
    s = as_point(s)
    f = _scale_factor(spec, s)
    if spec.kind == "explicit":
        lam = np.asarray(spec.values) * spec.scale
        val = complex(np.sum(np.exp(-s * np.log(lam)))) if lam.size else 0j
        return EvalResult(val, rounding_err(float(np.sum(np.abs(np.exp(-s * np.log(lam))))) if lam.size else 0.0,
                                            lam.size + 2), "closed-form")
    if spec.kind == "integers":
        r = riemann_zeta(s)
    elif spec.kind == "primes":
        r = prime_zeta_continued(s, cfg)
    else:
        r = superzeta_continued(s, spec.table())
    if f == 1.0:
        return r
    return EvalResult(f * r.value, abs(f) * r.abs_err + rounding_err(abs(f * r.value), 4), r.method)


# ---------------------------------------------------------------------------
# Derivatives at the origin and determinants
# ---------------------------------------------------------------------------


def cauchy_taylor(f: Callable[[complex], complex], center: complex = 0j, radius: float = 0.1,
                  nodes: int = 64, rtol: float = 1e-8, max_halvings: int = 6):
    """f(center) and f'(center) by the trapezoid rule on circles, halving the radius until stable.

    Returns ``(value, derivative, error_estimate)``.
    """
    def once(r):
        theta = 2.0 * math.pi * np.arange(nodes) / nodes
        pts = center + r * np.exp(1j * theta)
        vals = np.array([complex(f(p)) for p in pts])
        return complex(np.mean(vals)), complex(np.mean(vals * np.exp(-1j * theta)) / r), float(np.max(np.abs(vals)))

    _, d0, big = once(radius)
    r = radius
    change = math.inf
    for _ in range(max_halvings):
        r *= 0.5
        v1, d1, big = once(r)
        change = abs(d1 - d0)
        if change <= rtol * max(abs(d1), 1.0):
            err = change + rounding_err(big, nodes) / r
            return v1, d1, err
        d0 = d1
    raise QuadratureError(f"Cauchy derivative not stable down to radius {r:g}", estimate=d0, error=change)


def _finite_log_det(spec: SpectrumSpec) -> tuple[float, float]:
    lam = np.asarray(spec.values) * spec.scale
    logs = np.log(lam)
    return float(math.fsum(logs)), rounding_err(float(np.sum(np.abs(logs))), lam.size + 1)


def zeta_derivative_at_zero(spec: SpectrumSpec) -> tuple[complex, complex, float]:
    """(zeta_D(0), zeta_D'(0), error) for regularisable specs."""
    _require_regularizable(spec)
    if spec.kind == "explicit":
        ld, err = _finite_log_det(spec)
        return complex(len(spec.values)), complex(-ld), err
    return cauchy_taylor(lambda z: spectral_zeta(spec, z).value)


def _require_regularizable(spec: SpectrumSpec) -> None:
    if spec.kind == "primes":
        raise NotRegularizableError(
            "the prime spectral zeta function has a natural boundary at Re(s) = 0 and cannot be continued to s = 0"
        )
    if spec.kind == "explicit" and spec.sample:
        q = CountingSnapshot.from_sequence(spec.values)
        grid = approach_grid(0.5, 20)
        report = verify_theorem1(q, 1.0, grid)
        if report.verdict == "consistent":
            raise NotRegularizableError(
                "the sample's counting function stays within C ln x of pi(x); its zeta function shares the "
                "singularities of P(s), which accumulate on Re(s) = 0"
            )
        raise DomainError("a finite sample of an infinite sequence does not determine a continuation to s = 0")


def reg_det(spec: SpectrumSpec) -> EvalResult:
    """exp(-zeta_D'(0)), the zeta-regularised product of the eigenvalues."""
    _, d, err = zeta_derivative_at_zero(spec)
    val = cmath.exp(-d)
    if abs(val.imag) <= 1e-12 * abs(val):
        val = complex(val.real, 0.0)
    return EvalResult(val, float(abs(val) * err + rounding_err(abs(val), 4)),
                      "closed-form" if spec.kind == "explicit" else "quadrature")


def scaling_check(spec: SpectrumSpec, mu2: float) -> EvalResult:
    """|zeta'_{mu^2 D}(0) - (-ln(mu^2) zeta_D(0) + zeta'_D(0))|.

    Scaling every eigenvalue by mu^2 multiplies zeta_D(s) by mu^{-2s}, which
    fixes the sign of the ln(mu^2) term.
    """
    if not mu2 > 0:
        raise DomainError("mu^2 must be positive")
    z0, d0, e0 = zeta_derivative_at_zero(spec)
    _, d1, e1 = zeta_derivative_at_zero(spec.scaled(mu2))
    residual = abs(d1 - (-math.log(mu2) * z0 + d0))
    return EvalResult(complex(residual, 0.0), float(e0 * (1 + abs(math.log(mu2))) + e1), "closed-form"
                      if spec.kind == "explicit" else "quadrature")


# ---------------------------------------------------------------------------
# Counting-function approximants
# ---------------------------------------------------------------------------

FORMS = ("t-ln-t", "t-over-ln-t", "tabulated")


@dataclass(frozen=True)
class CountingModel:
    """How the spectrum beyond lambda_{k_cut} is replaced by a counting function F(t).

    ``t-ln-t`` uses F(t) = t ln t, ``t-over-ln-t`` uses F(t) = t / ln t and
    ``tabulated`` integrates against the step function ``snapshot``.
    """

    form: str
    k_cut: int = 1
    snapshot: CountingSnapshot | None = None

    def __post_init__(self):
        if self.form not in FORMS:
            raise DomainError(f"unknown counting form {self.form!r}")
        if self.k_cut < 1:
            raise DomainError("k_cut must be >= 1")
        if self.form == "tabulated" and self.snapshot is None:
            raise DomainError("the tabulated form needs a snapshot")


def zeta_tilde(s: complex, lam_k: float, head: complex = 0j) -> complex:
    """head + integral_{lam_k}^inf t^{-s} d(t ln t) in closed form."""
    if s == 1:
        raise PoleError("the t ln t approximant has a double pole at s=1", location=1 + 0j, order=2)
    sm1 = s - 1.0
    L = math.log(lam_k)
    pw = cmath.exp(-sm1 * L)
    return head + pw / sm1 ** 2 + pw * (1.0 + L) / sm1


def zeta_hat(s: complex, lam_k: float, head: complex = 0j, sheet: int | None = None) -> complex:
    """head + s E_1((s-1) ln lam_k) - lam_k^{-(s-1)} / ln lam_k, on the chosen sheet of E_1."""
    L = math.log(lam_k)
    if L == 0.0:
        raise DomainError("lambda_k = 1 makes ln(lambda_k) vanish")
    w = (s - 1.0) * L
    if w == 0:
        raise PoleError("E_1 has a logarithmic branch point at s=1", location=1 + 0j)
    e1 = exp_integral_En(1, w, sheet=sheet).value
    return head + s * e1 - cmath.exp(-w) / L


def zeta_hat_two_exponential(s: complex, lam_k: float, head: complex = 0j) -> complex:
    """The same tail written as E_1(w) - E_2(w) / ln lam_k, before the recurrence is applied."""
    L = math.log(lam_k)
    w = (s - 1.0) * L
    return head + exp_integral_En(1, w).value - exp_integral_En(2, w).value / L


def _head_and_cut(spec: SpectrumSpec, k: int) -> tuple[np.ndarray, float]:
    lam = spec.eigenvalues(k) * spec.scale
    if lam.size < k:
        raise DomainError(f"the spectrum has fewer than k={k} elements")
    return lam[: k - 1], float(lam[k - 1])


def approx_zeta_via_counting(model: CountingModel, spec: SpectrumSpec, s) -> EvalResult:
    """sum_{n<k} lambda_n^{-s} plus the counting-function integral from lambda_k on."""
    s = as_point(s)
    head_lam, lam_k = _head_and_cut(spec, model.k_cut)
    head = complex(np.sum(np.exp(-s * np.log(head_lam)))) if head_lam.size else 0j
    if model.form == "t-ln-t":
        val = zeta_tilde(s, lam_k, head)
        method = "closed-form"
    elif model.form == "t-over-ln-t":
        w = (s - 1.0) * math.log(lam_k)
        if w.imag == 0.0 and w.real < 0.0:
            raise BranchCutError(f"(s-1) ln(lambda_k) = {w.real:g} lies on the E_1 branch cut")
        val = zeta_hat(s, lam_k, head)
        method = "series"
    else:
        snap = model.snapshot
        keep = snap.breakpoints * spec.scale >= lam_k
        b = snap.breakpoints[keep] * spec.scale
        jumps = np.diff(np.concatenate([[0], snap.values]))[keep]
        val = head + complex(np.sum(jumps * np.exp(-s * np.log(b))))
        method = "closed-form"
    return EvalResult(val, rounding_err(max(abs(val), 1.0), 16 + model.k_cut), method)


# ---------------------------------------------------------------------------
# Laurent coefficients and monodromy
# ---------------------------------------------------------------------------

LAURENT_ORDERS = tuple(range(-4, 3))


@dataclass(frozen=True)
class LaurentProbe:
    center: complex
    radius: float
    coefficients: tuple[tuple[int, complex], ...]
    monodromy_delta: complex

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("radius must be positive")
        if tuple(o for o, _ in self.coefficients) != LAURENT_ORDERS:
            raise DomainError("coefficients must cover orders -4..2")

    def coefficient(self, order: int) -> complex:
        return dict(self.coefficients)[order]

    @property
    def single_valued(self) -> bool:
        return abs(self.monodromy_delta) < 1e-9 * max(1.0, max(abs(c) for _, c in self.coefficients))

    def pole_order(self, rel: float = 1e-6) -> int:
        """Largest m with |c_{-m}| above ``rel`` times the largest coefficient (0 if regular)."""
        top = max(abs(c) for _, c in self.coefficients)
        sing = [-o for o, c in self.coefficients if o < 0 and abs(c) > rel * top]
        return max(sing, default=0)

    def to_dict(self) -> dict:
        from . import io

        return {
            "center": io.point_json(self.center),
            "radius": float(self.radius),
            "coefficients": [{"order": o, "value": io.point_json(c)} for o, c in self.coefficients],
            "monodromy_delta": io.point_json(self.monodromy_delta),
        }


def _coefficients(f, center: complex, radius: float, nodes: int) -> np.ndarray:
    theta = 2.0 * math.pi * (np.arange(nodes) + 0.5) / nodes
    u = np.exp(1j * theta)
    vals = np.array([complex(f(center + radius * z)) for z in u])
    return np.array([np.mean(vals * u ** (-m)) * radius ** (-m) for m in LAURENT_ORDERS])


MONODROMY_NODES = 256


def _track_loop(f, center: complex, radius: float, sheets: bool):
    """Continue f once around the circle from center + i*radius; return (start, end) values."""
    theta = 0.5 * math.pi + 2.0 * math.pi * (np.arange(MONODROMY_NODES + 1) + 0.5) / MONODROMY_NODES
    pts = center + radius * np.exp(1j * theta)
    pts[-1] = pts[0]
    cont = []
    sheet = 0
    offset = 0j
    for j, p in enumerate(pts):
        if sheets:
            if len(cont) >= 3:
                pred = 3.0 * cont[-1] - 3.0 * cont[-2] + cont[-3]
                cands = {m: complex(f(p, sheet=m)) for m in (sheet - 1, sheet, sheet + 1)}
                sheet = min(cands, key=lambda m: abs(cands[m] - pred))
                cont.append(cands[sheet])
            else:
                cont.append(complex(f(p, sheet=0)))
            continue
        raw = complex(f(p)) + offset
        if len(cont) >= 3:
            pred = 3.0 * cont[-1] - 3.0 * cont[-2] + cont[-3]
            step = abs(cont[-1] - cont[-2]) + 1e-12 * abs(cont[-1])
            if abs(raw - pred) > 20.0 * step + 1e-9:
                offset += pred - raw
                raw = pred
        cont.append(raw)
    return cont[0], cont[-1]


def laurent_probe(f, center, radius: float, sheets: bool = False, nodes: int = 64,
                  tol: float = 1e-8) -> LaurentProbe:
    """Laurent coefficients c_{-4}..c_2 of f about ``center`` and the monodromy of one loop.

    ``f`` maps a complex point to a complex value. With ``sheets=True`` it
    must also accept ``sheet=m`` and the loop is tracked by picking, at each
    node, the neighbouring sheet closest to a quadratic extrapolation of the
    previous values; otherwise jumps larger than the local variation are
    removed by the same extrapolation. Coefficients are computed on the
    principal values; for a single-valued f, doubling the node count must
    leave them unchanged within ``tol``.
    """
    center = as_point(center)
    if not radius > 0:
        raise DomainError("radius must be positive")
    start, end = _track_loop(f, center, radius, sheets)
    delta = end - start
    c1 = _coefficients(f, center, radius, nodes)
    if abs(delta) <= 1e-9 * max(1.0, abs(start)):
        c2 = _coefficients(f, center, radius, 2 * nodes)
        change = np.max(np.abs(c2 - c1))
        if change > tol * max(1.0, float(np.max(np.abs(c2)))):
            raise QuadratureError(f"Laurent coefficients changed by {change:.3g} under node doubling",
                                  error=float(change))
        c1 = c2
        delta = 0j if abs(delta) < 1e-14 * max(1.0, abs(start)) else delta
    coeffs = tuple((o, complex(c)) for o, c in zip(LAURENT_ORDERS, c1))
    return LaurentProbe(center, float(radius), coeffs, complex(delta))
