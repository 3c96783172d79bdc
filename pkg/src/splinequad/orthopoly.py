"""Polynomials in Gegenbauer bases: evaluation, calculus, real roots.

Every polynomial in this package is carried as a finite expansion

    p(x) = sum_k a_k * C_k^(alpha)(x)

with a half-integer basis parameter alpha (3/2 for continuity class 0,
5/2 for class 1).  Basis functions of negative degree are identically
zero, so constructors simply drop such terms.  The module provides the
three-term basis recurrence, a Clenshaw evaluator, exact differentiation
(which bumps the basis parameter), conversion to the monomial basis, and
a real root finder built on the balanced companion matrix with Newton
polishing against the series itself.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

# Relative threshold below which trailing coefficients count as cancellation dust.
TRIM_REL = 1e-14

# Roots whose imaginary part exceeds this are treated as genuinely complex.
_IMAG_TOL = 1e-8

# Target for the polished root residual, relative to the coefficient norm.
_RESIDUAL_REL = 1e-13


class RootCountWarning(UserWarning):
    """Raised when a polynomial yields fewer real roots than its degree."""


def gegenbauer_eval(n: int, alpha: float, x):
    """Evaluate the Gegenbauer polynomial C_n^(alpha) at x.

    Uses the forward recurrence
        n C_n = 2 (n + alpha - 1) x C_{n-1} - (n + 2 alpha - 2) C_{n-2}
    with C_0 = 1 and C_1 = 2 alpha x.  Negative degrees evaluate to 0.
    Accepts scalar or ndarray x.
    """
    if alpha <= 0:
        raise ValueError(f"basis parameter must be positive, got {alpha}")
    x = np.asarray(x, dtype=float)
    if n < 0:
        out = np.zeros_like(x)
        return out if out.ndim else float(out)
    if n == 0:
        out = np.ones_like(x)
        return out if out.ndim else float(out)
    prev = np.ones_like(x)
    cur = 2.0 * alpha * x
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * (k + alpha - 1.0) * x * cur - (k + 2.0 * alpha - 2.0) * prev) / k
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class GegenbauerSeries:
    """Immutable polynomial sum_k coeffs[k] * C_k^(alpha)(x).

    Trailing coefficients smaller than TRIM_REL times the largest magnitude
    are removed on construction, so the last stored coefficient is nonzero
    unless the series is identically zero.
    """

    alpha: float
    coeffs: tuple

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"basis parameter must be positive, got {self.alpha}")
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        scale = np.max(np.abs(c)) if c.size else 0.0
        if scale == 0.0:
            object.__setattr__(self, "coeffs", (0.0,))
            return
        keep = np.nonzero(np.abs(c) > TRIM_REL * scale)[0]
        c = c[: keep[-1] + 1] if keep.size else c[:1] * 0.0
        object.__setattr__(self, "coeffs", tuple(float(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    def __call__(self, x):
        return series_eval(self, x)

    def derivative(self, k: int = 1) -> "GegenbauerSeries":
        return series_derivative(self, k)

    def to_monomial(self) -> np.ndarray:
        """Coefficients of the same polynomial in the monomial basis, ascending."""
        n = self.degree
        out = np.zeros(n + 1)
        # basis polynomials built bottom-up via the recurrence
        prev = np.array([1.0])
        out[0] += self.coeffs[0]
        if n == 0:
            return out
        cur = np.array([0.0, 2.0 * self.alpha])
        out[: cur.size] += self.coeffs[1] * cur
        for k in range(2, n + 1):
            nxt = np.zeros(k + 1)
            nxt[1:] = 2.0 * (k + self.alpha - 1.0) * cur
            nxt[: k - 1] -= (k + 2.0 * self.alpha - 2.0) * prev
            nxt /= k
            prev, cur = cur, nxt
            out[: k + 1] += self.coeffs[k] * cur
        return out


def series_eval(p: GegenbauerSeries, x):
    """Evaluate a Gegenbauer series with the backward (Clenshaw) recurrence."""
    x = np.asarray(x, dtype=float)
    a = p.alpha
    c = p.coeffs
    n = len(c) - 1
    y1 = np.zeros_like(x)
    y2 = np.zeros_like(x)
    for k in range(n, -1, -1):
        ak = 2.0 * (k + a) / (k + 1.0) * x
        bk1 = -(k + 2.0 * a) / (k + 2.0)
        y1, y2 = c[k] + ak * y1 + bk1 * y2, y1
    return y1 if y1.ndim else float(y1)


def series_derivative(p: GegenbauerSeries, k: int = 1) -> GegenbauerSeries:
    """k-th derivative; each application maps the basis parameter alpha to alpha+1.

    Uses d/dx C_n^(alpha) = 2 alpha C_{n-1}^(alpha+1).
    """
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    alpha = p.alpha
    c = np.asarray(p.coeffs, dtype=float)
    for _ in range(k):
        c = 2.0 * alpha * c[1:] if c.size > 1 else np.zeros(1)
        alpha += 1.0
    return GegenbauerSeries(alpha, tuple(c) if c.size else (0.0,))


def _clenshaw_scalar(coeffs, alpha, x):
    y1 = 0.0
    y2 = 0.0
    for k in range(len(coeffs) - 1, -1, -1):
        y1, y2 = coeffs[k] + 2.0 * (k + alpha) / (k + 1.0) * x * y1 - (k + 2.0 * alpha) / (
            k + 2.0) * y2, y1
    return y1


def _newton_polish(p: GegenbauerSeries, dp: GegenbauerSeries, x0: float) -> float:
    # iterate to the attainable residual floor, keeping the best point seen
    x = x0
    best_x = x
    best_fx = abs(_clenshaw_scalar(p.coeffs, p.alpha, x))
    stagnant = 0
    for _ in range(40):
        fx = _clenshaw_scalar(p.coeffs, p.alpha, x)
        if abs(fx) < best_fx:
            best_x, best_fx = x, abs(fx)
            stagnant = 0
        else:
            stagnant += 1
            if stagnant >= 2:
                break
        dfx = _clenshaw_scalar(dp.coeffs, dp.alpha, x)
        if dfx == 0.0 or fx == 0.0:
            break
        step = fx / dfx
        if abs(step) > 0.5:
            step = 0.5 if step > 0 else -0.5
        x -= step
    return best_x


def real_roots(p: GegenbauerSeries) -> np.ndarray:
    """All real roots of the series, ascending, multiplicities repeated.

    Roots are estimated as eigenvalues of the balanced companion matrix of
    the monomial form, then each is polished by Newton iteration against
    the Gegenbauer-basis evaluation.  If complex eigenvalue pairs reduce
    the real-root count below the degree, a RootCountWarning is issued.
    """
    if p.degree < 1 or p.is_zero:
        raise ValueError("root extraction requires degree >= 1")
    mono = p.to_monomial()
    scale = np.max(np.abs(mono))
    lead = np.nonzero(np.abs(mono) > TRIM_REL * scale)[0]
    mono = mono[: lead[-1] + 1]
    if mono.size < 2:
        raise ValueError("series is constant after trimming")
    raw = np.polynomial.polynomial.polyroots(mono)
    real_mask = np.abs(raw.imag) <= _IMAG_TOL * np.maximum(1.0, np.abs(raw.real))
    if not np.all(real_mask):
        warnings.warn(
            f"{np.count_nonzero(~real_mask)} of {raw.size} roots are not real",
            RootCountWarning,
            stacklevel=2,
        )
    dp = series_derivative(p, 1)
    polished = [_newton_polish(p, dp, float(r)) for r in raw[real_mask].real]
    return np.sort(np.asarray(polished))
