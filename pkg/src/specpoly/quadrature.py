"""Tanh-sinh (double-exponential) quadrature.

The substitution t = tanh((pi/2) sinh(u)) turns the trapezoid rule on a
finite interval into a scheme whose node weights decay double-exponentially
toward the endpoints, which is what lets it swallow integrable endpoint
singularities like (1-x)^(-1/2) without any special casing.

The integrand is called as f(x, d_lo, d_hi) where d_lo/d_hi are the exact
distances to the interval endpoints, computed without cancellation (for a
node at t, 1 - t = 2 / (1 + e^(2s)) with s = (pi/2) sinh(u)).  Integrands
with endpoint singularities should use those distances instead of forming
x - endpoint themselves.

The step starts at h = 1 and halves per level; the value converges when
two successive levels differ by less than tol * (1 + |value|).  A level
budget (default 12 halvings) bounds the work; exhausting it raises
NoConvergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = ["NoConvergence", "QuadResult", "tanh_sinh"]

# beyond this point on the u axis every node weight underflows to zero
_U_MAX = 6.6


class NoConvergence(RuntimeError):
    """Level budget exhausted before successive estimates agreed."""

    def __init__(self, message: str, last_value: float, err_est: float):
        super().__init__(message)
        self.last_value = last_value
        self.err_est = err_est


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    levels: int
    evals: int


def _node(u: float) -> tuple[float, float, float]:
    """Return (t, 1 - t, weight) for abscissa parameter u > 0."""
    s = (math.pi / 2.0) * math.sinh(u)
    if s > 350.0:
        # e^(-2s) may underflow; both the distance and the weight go with it
        em = math.exp(-2.0 * s)
        d = 2.0 * em
        w = 2.0 * math.pi * math.cosh(u) * em
    else:
        em = math.exp(-2.0 * s)
        d = 2.0 * em / (1.0 + em)
        cs = math.cosh(s)
        w = (math.pi / 2.0) * math.cosh(u) / (cs * cs)
    return 1.0 - d, d, w


def tanh_sinh(
    f: Callable[[float, float, float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_levels: int = 12,
) -> QuadResult:
    """Integrate f over (lo, hi); see the module docstring for the contract."""
    if not lo < hi:
        raise ValueError(f"bounds out of order: {lo} >= {hi}")
    mid = (lo + hi) / 2.0
    rad = (hi - lo) / 2.0
    evals = 0

    def row_sum(h: float, odd_only: bool) -> float:
        nonlocal evals
        total = 0.0
        k = 1 if odd_only else 0
        step = 2 if odd_only else 1
        tiny_streak = 0
        while k * h <= _U_MAX:
            u = k * h
            if u == 0.0:
                x = mid
                term = (math.pi / 2.0) * f(x, rad, rad)
                evals += 1
                total += term
                k += step
                continue
            t, d, w = _node(u)
            if w == 0.0 or d == 0.0:
                break
            d_near = rad * d
            d_far = rad * (2.0 - d)
            term_hi = w * f(mid + rad * t, d_far, d_near)
            term_lo = w * f(mid - rad * t, d_near, d_far)
            evals += 2
            if not (math.isfinite(term_hi) and math.isfinite(term_lo)):
                raise NoConvergence(
                    "integrand not finite at a quadrature node "
                    f"(x near {mid + rad * t!r} / {mid - rad * t!r})",
                    math.nan,
                    math.inf,
                )
            total += term_hi + term_lo
            if abs(term_hi) + abs(term_lo) <= 1e-4 * tol * (1.0 + abs(total)):
                tiny_streak += 1
                if tiny_streak >= 3:
                    break
            else:
                tiny_streak = 0
            k += step
        return total

    h = 1.0
    estimate = rad * h * row_sum(h, odd_only=False)
    err = math.inf
    for level in range(1, max_levels + 1):
        h /= 2.0
        estimate_new = estimate / 2.0 + rad * h * row_sum(h, odd_only=True)
        err = abs(estimate_new - estimate)
        estimate = estimate_new
        if err <= tol * (1.0 + abs(estimate)):
            return QuadResult(value=estimate, err_est=err, levels=level, evals=evals)
    raise NoConvergence(
        f"no convergence after {max_levels} levels (last error {err:.3e})",
        estimate,
        err,
    )
