"""Integer-sequence machinery: sieves, Moebius, von Mangoldt, prime counting."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _accel
from .core import CapacityError, DomainError

#: Memory budget for smallest-factor tables (int32 entries), in bytes.
SIEVE_BUDGET_BYTES = 1 << 30


@dataclass(frozen=True, eq=False)
class PrimeSieve:
    """All primes up to ``limit`` plus a smallest-prime-factor table.

    ``smallest_factor[n]`` divides ``n`` for 1 <= n <= limit (with
    ``smallest_factor[1] == 1``), which gives O(log n) factorisation.
    """

    limit: int
    primes: np.ndarray
    smallest_factor: np.ndarray = field(repr=False)

    def factorize(self, n: int) -> dict[int, int]:
        if not 1 <= n <= self.limit:
            raise DomainError(f"{n} outside sieve range [1, {self.limit}]")
        out: dict[int, int] = {}
        while n > 1:
            p = int(self.smallest_factor[n])
            out[p] = out.get(p, 0) + 1
            n //= p
        return out

    def mobius(self, n: int) -> int:
        f = self.factorize(n)
        if any(e > 1 for e in f.values()):
            return 0
        return -1 if len(f) % 2 else 1

    def von_mangoldt(self, n: int) -> float:
        f = self.factorize(n)
        return math.log(next(iter(f))) if len(f) == 1 else 0.0

    def counting(self) -> CountingSnapshot:
        return CountingSnapshot.from_sequence(self.primes)


def sieve_primes(limit: int, budget_bytes: int = SIEVE_BUDGET_BYTES) -> PrimeSieve:
    """Complete smallest-factor sieve up to ``limit``."""
    limit = int(limit)
    if limit < 2:
        raise DomainError("sieve limit must be >= 2")
    if 4 * (limit + 1) > budget_bytes:
        raise CapacityError(
            f"a sieve up to {limit} needs {4 * (limit + 1)} bytes, over the {budget_bytes} byte budget"
        )
    spf = _accel.spf_sieve(limit)
    idx = np.arange(limit + 1)
    primes = idx[(spf == idx) & (idx >= 2)].astype(np.int64)
    return PrimeSieve(limit, primes, spf)


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> np.ndarray:
    """Primes <= limit from a plain Eratosthenes bitmap (no factor table)."""
    limit = int(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, int(limit ** 0.5) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.setflags(write=False)
    return out


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    """Moebius function mu(n)."""
    n = int(n)
    if n < 1:
        raise DomainError("mobius needs n >= 1")
    f = _factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def von_mangoldt(n: int) -> float:
    """von Mangoldt Lambda(n): ln p if n = p^r, else 0."""
    n = int(n)
    if n < 1:
        raise DomainError("von_mangoldt needs n >= 1")
    f = _factor(n)
    return math.log(next(iter(f))) if len(f) == 1 else 0.0


def mobius_table(limit: int) -> np.ndarray:
    """mu(n) for 0 <= n <= limit (entry 0 is 0)."""
    limit = int(limit)
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(max(limit, 2)):
        if p > limit:
            break
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


def squarefree_up_to(K: int) -> list[int]:
    """Ascending square-free integers k <= K."""
    K = int(K)
    if K < 1:
        raise DomainError("squarefree_up_to needs K >= 1")
    mu = mobius_table(K)
    return [int(k) for k in np.flatnonzero(mu[1:]) + 1]


def prime_counting(x: float, sieve: PrimeSieve) -> int:
    """pi(x) for x <= sieve.limit."""
    if x > sieve.limit:
        raise DomainError(f"x={x} exceeds the sieve limit {sieve.limit}")
    return int(np.searchsorted(sieve.primes, x, side="right"))


@lru_cache(maxsize=4)
def prime_power_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """All prime powers n = p^r <= limit with Lambda(n) = ln p, sorted by n."""
    ps = primes_up_to(limit)
    ns = [ps.astype(np.float64)]
    ws = [np.log(ps.astype(np.float64))]
    r = 2
    while True:
        base = ps[ps <= limit ** (1.0 / r) + 1]
        pw = base.astype(np.int64) ** r
        keep = pw <= limit
        if not keep.any():
            break
        ns.append(pw[keep].astype(np.float64))
        ws.append(np.log(base[keep].astype(np.float64)))
        r += 1
    n = np.concatenate(ns)
    w = np.concatenate(ws)
    order = np.argsort(n, kind="stable")
    n, w = n[order], w[order]
    n.setflags(write=False)
    w.setflags(write=False)
    return n, w


@dataclass(frozen=True, eq=False)
class CountingSnapshot:
    """Step function x -> #{elements <= x}, stored by its jump points.

    ``values[i]`` is the count on ``[breakpoints[i], breakpoints[i+1])``;
    the count is 0 to the left of ``breakpoints[0]``.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.int64)
        if b.shape != v.shape:
            raise DomainError("breakpoints and values must have equal length")
        if b.size and np.any(np.diff(b) <= 0):
            raise DomainError("breakpoints must be strictly ascending")
        if v.size and (np.any(np.diff(v) < 0) or v[0] < 0):
            raise DomainError("counting values must be non-decreasing and non-negative")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_sequence(cls, seq) -> CountingSnapshot:
        """Snapshot of the counting function of a (possibly repeated) ascending sequence."""
        q = np.sort(np.asarray(seq, dtype=np.float64))
        if q.size and q[0] <= 0:
            raise DomainError("sequence elements must be positive")
        pts, counts = np.unique(q, return_counts=True)
        return cls(pts, np.cumsum(counts))

    @property
    def horizon(self) -> float:
        return float(self.breakpoints[-1]) if self.breakpoints.size else 0.0

    @property
    def first(self) -> float:
        return float(self.breakpoints[0]) if self.breakpoints.size else math.inf

    def __call__(self, x: float) -> int:
        i = bisect_right(self.breakpoints, x)
        return int(self.values[i - 1]) if i else 0

    def at(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        i = np.searchsorted(self.breakpoints, x, side="right")
        vals = np.concatenate([[0], self.values])
        return vals[i]

    def truncated(self, horizon: float) -> CountingSnapshot:
        keep = self.breakpoints <= horizon
        return CountingSnapshot(self.breakpoints[keep], self.values[keep])


def difference_steps(base: CountingSnapshot, q: CountingSnapshot, horizon: float):
    """Merged breakpoints of ``base - q`` on ``[.., horizon]``.

    Returns ``(points, diff)`` where ``diff[i]`` is the constant value of
    the difference on ``[points[i], points[i+1])`` (the last interval ends at
    ``horizon``).
    """
    pts = np.union1d(base.breakpoints, q.breakpoints)
    pts = pts[pts <= horizon]
    diff = base.at(pts) - q.at(pts)
    return pts, diff.astype(np.float64)
