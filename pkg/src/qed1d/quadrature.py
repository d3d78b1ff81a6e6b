"""Adaptive quadrature for semi-infinite, imaginary-axis and 2D integrals.

Thin layer over QUADPACK (scipy.integrate.quad, adaptive Gauss-Kronrod)
with three additions the physics integrands need:

* a half-period splitting + Wynn-epsilon acceleration path for oscillatory
  integrands on (0, inf) whose tails decay only algebraically (conditionally
  convergent integrals such as int cos(2kx) f(k) dk with f ~ 1/k),
* NaN detection and explicit converged/not-converged reporting,
* evaluation counting, so callers can budget grid scans.

Every integral returns a QuadResult carrying the value, an error estimate,
the evaluation count and a convergence flag.  Physics modules never accept
a non-converged result silently; they call QuadResult.require().
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

from scipy.integrate import IntegrationWarning, quad

__all__ = [
    "QuadratureError",
    "QuadratureSpec",
    "QuadResult",
    "integrate_interval",
    "integrate_halfline",
    "integrate_imaginary_axis",
    "integrate_2d",
]


class QuadratureError(RuntimeError):
    """An integral did not converge within its budget, or the integrand is invalid."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and budget contract shared by all integrals.

    oscillation_frequency_hint, when set to omega > 0, declares that the
    integrand oscillates like cos(omega*k) / sin(omega*k); the half-line
    integrator then splits at half-period boundaries j*pi/omega and
    accelerates the alternating panel sums.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    oscillation_frequency_hint: float | None = None

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        hint = self.oscillation_frequency_hint
        if hint is not None and not (hint > 0.0 and math.isfinite(hint)):
            raise ValueError("oscillation_frequency_hint must be positive and finite")

    def tolerance_at(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def with_hint(self, omega: float | None) -> "QuadratureSpec":
        hint = omega if (omega is not None and omega > 0.0) else None
        return replace(self, oscillation_frequency_hint=hint)


@dataclass(frozen=True)
class QuadResult:
    """Value of an integral together with its error estimate."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def require(self, what: str = "integral") -> float:
        """Return the value, raising QuadratureError when not converged."""
        if not self.converged:
            raise QuadratureError(
                f"{what} did not converge: value={self.value:.6e}, "
                f"error_estimate={self.error_estimate:.2e} after "
                f"{self.evaluations} evaluations"
            )
        return self.value


class _CountedIntegrand:
    """Wrap an integrand: count calls and reject NaN values."""

    __slots__ = ("f", "calls")

    def __init__(self, f: Callable[[float], float]):
        self.f = f
        self.calls = 0

    def __call__(self, x: float) -> float:
        self.calls += 1
        y = self.f(x)
        if math.isnan(y):
            raise QuadratureError(f"integrand returned NaN at x={x!r}")
        return y


def _quadpack(f: _CountedIntegrand, a: float, b: float, spec: QuadratureSpec,
              limit: int | None = None) -> tuple[float, float]:
    """One QUADPACK call; roundoff warnings are folded into the error estimate."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        value, err = quad(
            f, a, b,
            epsabs=spec.abs_tol, epsrel=spec.rel_tol,
            limit=limit if limit is not None else spec.max_subdivisions,
        )
    return value, err


# ---------------------------------------------------------------------------
# Wynn epsilon acceleration (cautious variant)
# ---------------------------------------------------------------------------

_WYNN_TINY = 1e-300


def _wynn_limit(sums: list[float]) -> tuple[float, float]:
    """Shanks limit of a sequence of partial sums via Wynn's epsilon table.

    Returns (estimate, error_guess).  The error guess is the spread of the
    last diagonal entries of successive even columns; it is cautious in the
    sense that acceleration is abandoned (value returned as-is) as soon as a
    difference underflows, which signals plain convergence of the sums.
    """
    n = len(sums)
    if n < 3:
        return sums[-1], abs(sums[-1] - sums[0]) if n > 1 else abs(sums[-1])
    prev: list[float] = [0.0] * (n + 1)
    cur: list[float] = list(sums)
    estimates: list[float] = [sums[-1]]
    col = 0
    while len(cur) >= 2:
        nxt: list[float] = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if abs(d) < _WYNN_TINY:
                # partial sums already converged; acceleration done
                return cur[i + 1], abs(d)
            nxt.append(prev[i + 1] + 1.0 / d)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0:
            estimates.append(cur[-1])
    if len(estimates) >= 3:
        # pick the even-column entry whose last improvement step was smallest
        best_idx = min(range(1, len(estimates)),
                       key=lambda i: abs(estimates[i] - estimates[i - 1]))
        err = abs(estimates[best_idx] - estimates[best_idx - 1])
        if best_idx >= 2:
            err = max(err, abs(estimates[best_idx] - estimates[best_idx - 2]) * 0.5)
        return estimates[best_idx], err
    return estimates[-1], abs(estimates[-1] - estimates[0])


# ---------------------------------------------------------------------------
# Half-line integration
# ---------------------------------------------------------------------------

def _oscillatory_halfline(f: _CountedIntegrand, spec: QuadratureSpec) -> QuadResult:
    """Split (0, inf) at half-periods pi/omega and accelerate the panel sums."""
    omega = spec.oscillation_frequency_hint
    assert omega is not None
    width = math.pi / omega
    panel_limit = max(50, min(200, spec.max_subdivisions))
    max_panels = max(24, min(512, spec.max_subdivisions))

    total = 0.0
    panel_err = 0.0
    partial: list[float] = []
    panels: list[float] = []
    best: tuple[float, float] | None = None

    for j in range(max_panels):
        value, err = _quadpack(f, j * width, (j + 1) * width, spec, limit=panel_limit)
        total += value
        panel_err += err
        panels.append(value)
        partial.append(total)

        tol = spec.tolerance_at(total)
        # plain convergence: two consecutive negligible panels
        if j >= 2 and abs(panels[-1]) < 0.25 * tol and abs(panels[-2]) < 0.25 * tol:
            return QuadResult(total, panel_err + abs(panels[-1]), f.calls, True)
        # accelerated convergence of the alternating tail
        if j >= 7:
            est, aerr = _wynn_limit(partial)
            err_est = max(aerr, panel_err)
            if aerr < 0.5 * spec.tolerance_at(est):
                return QuadResult(est, err_est, f.calls, True)
            if best is None or aerr < best[1]:
                best = (est, err_est)

    if best is not None:
        est, err_est = best
        return QuadResult(est, err_est, f.calls, err_est <= spec.tolerance_at(est))
    return QuadResult(total, panel_err + abs(panels[-1]), f.calls, False)


def integrate_interval(f: Callable[[float], float], a: float, b: float,
                       spec: QuadratureSpec) -> QuadResult:
    """Integrate f over a finite interval [a, b]."""
    counted = _CountedIntegrand(f)
    value, err = _quadpack(counted, a, b, spec)
    return QuadResult(value, err, counted.calls, err <= spec.tolerance_at(value))


def integrate_halfline(f: Callable[[float], float], spec: QuadratureSpec) -> QuadResult:
    """Integrate f over (0, inf).

    Without a frequency hint the integrand must be absolutely convergent
    (QUADPACK's infinite-range transformation is used).  With a hint omega,
    conditionally convergent oscillatory tails are summed over half-period
    panels of width pi/omega and extrapolated with Wynn's epsilon algorithm.
    """
    counted = _CountedIntegrand(f)
    if spec.oscillation_frequency_hint is not None:
        return _oscillatory_halfline(counted, spec)
    value, err = _quadpack(counted, 0.0, math.inf, spec)
    return QuadResult(value, err, counted.calls, err <= spec.tolerance_at(value))


def integrate_imaginary_axis(f: Callable[[float], float], spec: QuadratureSpec,
                             even: bool = False) -> QuadResult:
    """Integrate f over the whole real frequency line (-inf, inf).

    With even=True only (0, inf) is sampled and the result doubled; callers
    declare evenness after probing it (the flag buys speed, not correctness).
    """
    counted = _CountedIntegrand(f)
    if even:
        value, err = _quadpack(counted, 0.0, math.inf, spec)
        value, err = 2.0 * value, 2.0 * err
    else:
        value, err = _quadpack(counted, -math.inf, math.inf, spec)
    return QuadResult(value, err, counted.calls, err <= spec.tolerance_at(value))


# ---------------------------------------------------------------------------
# Nested 2D integration
# ---------------------------------------------------------------------------

def integrate_2d(f: Callable[[float, float], float], spec: QuadratureSpec) -> QuadResult:
    """Integrate f(u, k) over (0, inf) x (0, inf), inner axis k, outer axis u.

    The integrand must be absolutely integrable; the inner integrals run at
    tightened tolerances so the outer adaptive pass sees a smooth function.
    The reported error combines the outer estimate with the inner tolerance
    heuristically (inner errors are not rigorously propagated).
    """
    inner_spec = replace(
        spec,
        rel_tol=max(spec.rel_tol / 8.0, 1e-14),
        abs_tol=max(spec.abs_tol / 8.0, 1e-15),
        oscillation_frequency_hint=None,
    )
    inner_evals = 0
    inner_ok = True

    def outer_integrand(u: float) -> float:
        nonlocal inner_evals, inner_ok
        res = integrate_halfline(lambda k: f(u, k), inner_spec)
        inner_evals += res.evaluations
        inner_ok = inner_ok and res.converged
        return res.value

    outer = integrate_halfline(outer_integrand, spec.with_hint(None))
    err = outer.error_estimate + spec.rel_tol * abs(outer.value) + spec.abs_tol
    converged = outer.converged and inner_ok
    return QuadResult(outer.value, err, outer.evaluations + inner_evals, converged)
