"""Shared result type, error hierarchy and small numeric helpers."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

EPS = 2.220446049250313e-16

METHODS = ("series", "euler-maclaurin", "quadrature", "closed-form", "recurrence")


class ZetalabError(Exception):
    """Base class for every error raised by the library."""


class DomainError(ZetalabError, ValueError):
    """Argument outside the region where the requested evaluation is defined."""


class PoleError(ZetalabError, ZeroDivisionError):
    def __init__(self, message: str, location: complex | None = None, order: int | None = None):
        super().__init__(message)
        self.location = location
        self.order = order


class SingularError(ZetalabError, ArithmeticError):
    """Evaluation too close to a zero or pole to be meaningful."""


class NearSingularError(SingularError):
    def __init__(self, message: str, k: int | None = None, location: complex | None = None):
        super().__init__(message)
        self.k = k
        self.location = location


class BranchCutError(ZetalabError, ValueError):
    """Point lies on a branch cut and no sheet was selected."""


class CapacityError(ZetalabError, MemoryError):
    pass


class QuadratureError(ZetalabError, ArithmeticError):
    def __init__(self, message: str, estimate: complex | None = None, error: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class TailUnboundedError(ZetalabError, ArithmeticError):
    def __init__(self, message: str, ratios: list[float] | None = None):
        super().__init__(message)
        self.ratios = ratios or []


class NotRegularizableError(ZetalabError):
    """The spectral zeta function has no continuation that is analytic at s = 0."""


class ZeroEigenvalueError(DomainError):
    pass


class FormatError(ZetalabError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class OrderError(FormatError):
    pass


class MissedZeroError(ZetalabError):
    pass


@dataclass(frozen=True)
class EvalResult:
    """A complex value with an estimated absolute error.

    ``abs_err`` is a truncation bound plus a rounding heuristic; it is an
    estimate, not a certified enclosure.
    """

    value: complex
    abs_err: float
    method: str

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not (self.abs_err >= 0.0):
            raise ValueError("abs_err must be non-negative")
        if cmath.isfinite(self.value) and not math.isfinite(self.abs_err):
            raise ValueError("abs_err must be finite for a finite value")

    def __complex__(self) -> complex:
        return complex(self.value)

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def as_point(s) -> complex:
    """Coerce ``s`` to a finite complex number."""
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite complex point {s!r}")
    return z


def rounding_err(scale: float, ops: int) -> float:
    """Heuristic rounding error: 10 machine epsilons per operation on ``scale``."""
    return 10.0 * EPS * max(ops, 1) * abs(scale)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi`` or ``a-bi`` (no whitespace) into a complex."""
    t = text.strip()
    if not t or any(c.isspace() for c in t):
        raise DomainError(f"malformed complex literal {text!r}")
    if t.endswith("i") or t.endswith("j"):
        body = t[:-1]
        # split at the last sign that is not part of an exponent
        for idx in range(len(body) - 1, 0, -1):
            if body[idx] in "+-" and body[idx - 1] not in "eE":
                re_part, im_part = body[:idx], body[idx:]
                break
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        try:
            return complex(float(re_part), float(im_part))
        except ValueError as exc:
            raise DomainError(f"malformed complex literal {text!r}") from exc
    try:
        return complex(float(t), 0.0)
    except ValueError as exc:
        raise DomainError(f"malformed complex literal {text!r}") from exc
