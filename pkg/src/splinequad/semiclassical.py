"""Semi-classical orthogonal Jacobi polynomials for continuity classes 0 and 1.

The classical Jacobi weights on [-1, 1] are deformed by Dirac deltas (and,
for class 1, their first derivatives) placed at the interval ends.  The
coefficients of those deltas form the "Dirac vector" attached to a side of
a subinterval.  Two families arise:

* one-sided polynomials ``q_poly`` with weight (1-x)^(c+1) and deltas at -1,
* two-sided polynomials ``m_poly`` with weight 1 and deltas at both ends.

Both are constructed in closed form as short Gegenbauer expansions, and
the matching quadrature weight formulas are provided.  The deformed scalar
product ``inner_product`` exists mainly as an orthogonality oracle for the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orthopoly import GegenbauerSeries, series_derivative, series_eval

_SUPPORTED_CLASSES = (0, 1)

# The closed forms absorb a per-derivative normalization of the endpoint
# deltas into the Dirac coefficients.  Relative to unit-normalized deltas
# the stored coefficient of delta^(i) is scaled by these factors, which is
# what the defect of a rule built from them actually produces.
DIRAC_ACTION_SCALE = {0: (1.0,), 1: (2.0, 24.0)}


class SingularityError(ValueError):
    """A quadrature-weight denominator is (numerically) zero."""


def _check_continuity(c):
    if c not in _SUPPORTED_CLASSES:
        raise ValueError("continuity class not implemented (conjecture-dependent)")


@dataclass(frozen=True)
class DiracVector:
    """Coefficients of delta, delta', ..., delta^(c) attached to one interval end."""

    c: int
    entries: tuple

    def __post_init__(self):
        _check_continuity(self.c)
        e = tuple(float(v) for v in np.atleast_1d(np.asarray(self.entries, dtype=float)))
        if len(e) != self.c + 1:
            raise ValueError(f"continuity class {self.c} needs {self.c + 1} entries, got {len(e)}")
        if not all(np.isfinite(e)):
            raise ValueError("Dirac coefficients must be finite")
        object.__setattr__(self, "entries", e)

    @classmethod
    def zero(cls, c: int) -> "DiracVector":
        return cls(c, (0.0,) * (c + 1))

    @classmethod
    def coerce(cls, c: int, value) -> "DiracVector":
        """Accept a DiracVector, a scalar (c=0), or a sequence of length c+1."""
        if isinstance(value, cls):
            if value.c != c:
                raise ValueError(f"Dirac vector has class {value.c}, expected {c}")
            return value
        if np.isscalar(value):
            value = (value,)
        return cls(c, tuple(value))

    @property
    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class WeightSpec:
    """Description of a deformed weight function on [-1, 1].

    side "one-sided" means weight (1-x)^(c+1) with deltas only at -1;
    side "two-sided" means weight 1 with deltas at both ends.
    """

    c: int
    side: str
    dirac_left: DiracVector
    dirac_right: DiracVector | None = None

    def __post_init__(self):
        _check_continuity(self.c)
        if self.side not in ("one-sided", "two-sided"):
            raise ValueError(f"unknown side {self.side!r}")
        if self.side == "one-sided" and self.dirac_right is not None:
            raise ValueError("one-sided weight carries no right Dirac vector")
        if self.side == "two-sided" and self.dirac_right is None:
            raise ValueError("two-sided weight needs a right Dirac vector")

    @classmethod
    def one_sided(cls, c, l) -> "WeightSpec":
        return cls(c, "one-sided", DiracVector.coerce(c, l))

    @classmethod
    def two_sided(cls, c, l, r) -> "WeightSpec":
        return cls(c, "two-sided", DiracVector.coerce(c, l), DiracVector.coerce(c, r))


# ----------------------------------------------------------------------
# scalar helpers of the closed forms; n may be real (the rational maps
# downstream are defined for non-integer n as well)

def f_scalar(c, n, l) -> float:
    """Leading scalar of the one-sided family."""
    _check_continuity(c)
    e = DiracVector.coerce(c, l).entries
    if c == 0:
        return 1.0 + n * (n + 1) / 2.0 * e[0]
    l0, l1 = e
    return 1.0 + n * (n + 2) * (
        l0 + 6.0 * (n * n + 2 * n - 1) * l1
        - 3.0 * (n - 1) * n * (n + 1) ** 2 * (n + 2) * (n + 3) * l1 * l1
    )


def e_scalar(n, l) -> float:
    """Middle scalar of the one-sided family (class 1 only)."""
    l0, l1 = DiracVector.coerce(1, l).entries
    return 1.0 + (n + 1) * (n + 2) * (
        l0 + 3.0 * n * (n + 3) * (2.0 - (n - 1) * (n + 1) * (n + 2) * (n + 4) * l1) * l1
    )


def h_scalar(c, n, l, r) -> float:
    """Leading scalar of the two-sided family."""
    _check_continuity(c)
    le = DiracVector.coerce(c, l).entries
    re = DiracVector.coerce(c, r).entries
    if c == 0:
        l0, r0 = le[0], re[0]
        return 1.0 + n * n / 2.0 * (l0 + r0 + (n - 1) * (n + 1) / 2.0 * l0 * r0)
    return (_ha(n, le) * _ha(n + 1, re) + _ha(n, re) * _ha(n + 1, le)) / 2.0 - 36.0 * (
        n * n - 1
    ) * n * n * (le[1] - re[1]) ** 2


def _ha(n, d):
    d0, d1 = d
    return 1.0 + (n - 1) * n * (
        d0 + (n - 2) * (n + 1) * (6.0 - 3.0 * (n - 3) * (n - 1) * n * (n + 2) * d1) * d1
    )


def _j0(n, d):
    d0, d1 = d
    return (
        1.0
        + (n * n + n + 3) * d0
        + 6.0 * (n**4 + 2 * n**3 + n * n + 6) * d1
        - 3.0 * (n * n - 9) * (n * n - 4) * (n * n - 1) * n * (n + 4) * d1 * d1
    )


def _j1(n, d):
    d0, d1 = d
    return 1.0 + n * (n + 1) * (
        d0 + 3.0 * (n - 1) * (n + 2) * (2.0 - (n - 2) * n * (n + 1) * (n + 3) * d1) * d1
    )


def _j_scalar(n, le, re):
    return (_j0(n, le) * _j1(n, re) + _j0(n, re) * _j1(n, le)) / 2.0 + 108.0 * (
        n * n - 1
    ) * n * (n + 2) * (le[1] - re[1]) ** 2


def _d_scalar(n, le, re):
    return (le[0] - re[0]) * (2.0 - 3.0 * (n * n - 1) * n * (n + 2) * (le[1] + re[1]))


def _d1_scalar(n, le, re):
    return _d_scalar(n, le, re) * (2.0 - 3.0 * (n - 2) * (n * n - 1) * n * (le[1] + re[1]))


def _d3_scalar(n, le, re):
    return _d_scalar(n, le, re) * (2.0 - 3.0 * n * (n + 1) * (n + 2) * (n + 3) * (le[1] + re[1]))


def _f13_scalar(n, le, re):
    l0, l1 = le
    r0, r1 = re
    return 3.0 * (l1 - r1) * n * n * (
        16.0
        + 4.0 * (n * n - 1) * (l0 + r0 - 4.0 * (n * n - 1) * (l1 + r1))
        - 3.0 * (n * n - 4) * (n * n - 1) ** 2
        * (3.0 * l0 * r1 + 3.0 * l1 * r0 + l0 * l1 + r0 * r1 + 16.0 * (n * n - 6) * l1 * r1)
    )


def series_scalars(c, n, l, r=None) -> dict:
    """All named scalars of the closed forms, keyed by name.

    With ``r`` given the two-sided scalars are included.  At l = r = 0 the
    leading scalars are 1 and the asymmetry terms vanish.
    """
    _check_continuity(c)
    out = {"F": f_scalar(c, n, l)}
    if c == 1:
        out["E"] = e_scalar(n, l)
    if r is not None:
        out["H"] = h_scalar(c, n, l, r)
        if c == 1:
            le = DiracVector.coerce(1, l).entries
            re = DiracVector.coerce(1, r).entries
            out.update(
                H_a_left=_ha(n, le),
                H_a_right=_ha(n, re),
                J_0=_j0(n, le),
                J_1=_j1(n, le),
                J=_j_scalar(n, le, re),
                D=_d_scalar(n, le, re),
                D_1=_d1_scalar(n, le, re),
                D_3=_d3_scalar(n, le, re),
                F_13=_f13_scalar(n, le, re),
            )
    return out


# ----------------------------------------------------------------------
# the polynomials

def q_poly(c: int, n: int, l) -> GegenbauerSeries:
    """One-sided semi-classical polynomial of degree n, basis alpha = c + 3/2.

    At l = 0 this reduces to the Jacobi polynomial with parameters (c+1, 0).
    """
    _check_continuity(c)
    if n < 1:
        raise ValueError("degree must be >= 1")
    lv = DiracVector.coerce(c, l)
    coeffs = np.zeros(n + 1)
    if c == 0:
        coeffs[n] = f_scalar(0, n, lv) / (n + 1)
        coeffs[n - 1] = f_scalar(0, n + 1, lv) / (n + 1)
        return GegenbauerSeries(1.5, tuple(coeffs))
    coeffs[n] = 6.0 * f_scalar(1, n, lv) / ((n + 2) * (2 * n + 3))
    coeffs[n - 1] = 6.0 * e_scalar(n, lv) / ((n + 1) * (n + 2))
    if n >= 2:
        coeffs[n - 2] = 6.0 * f_scalar(1, n + 1, lv) / ((n + 1) * (2 * n + 3))
    return GegenbauerSeries(2.5, tuple(coeffs))


def m_poly(c: int, n: int, l, r) -> GegenbauerSeries:
    """Two-sided semi-classical polynomial of degree n, basis alpha = c + 3/2.

    At l = r = 0 this reduces to the Legendre polynomial of degree n.
    """
    _check_continuity(c)
    if n < 1:
        raise ValueError("degree must be >= 1")
    lv = DiracVector.coerce(c, l)
    rv = DiracVector.coerce(c, r)
    coeffs = np.zeros(n + 1)
    if c == 0:
        coeffs[n] = h_scalar(0, n, lv, rv) / (2 * n + 1)
        if n >= 2:
            coeffs[n - 2] = -h_scalar(0, n + 1, lv, rv) / (2 * n + 1)
        coeffs[n - 1] = (lv.entries[0] - rv.entries[0]) / 2.0
        return GegenbauerSeries(1.5, tuple(coeffs))
    le, re = lv.entries, rv.entries
    coeffs[n] = 3.0 * h_scalar(1, n, lv, rv) / ((2 * n + 1) * (2 * n + 3))
    if n >= 2:
        coeffs[n - 2] = -6.0 * _j_scalar(n, le, re) / ((2 * n - 1) * (2 * n + 3))
    if n >= 4:
        coeffs[n - 4] = 3.0 * h_scalar(1, n + 1, lv, rv) / ((2 * n - 1) * (2 * n + 1))
    coeffs[n - 1] = 0.75 * (_d1_scalar(n, le, re) + _f13_scalar(n, le, re)) / (2 * n + 1)
    if n >= 3:
        coeffs[n - 3] = -0.75 * (_d3_scalar(n, le, re) + _f13_scalar(n + 1, le, re)) / (2 * n + 1)
    return GegenbauerSeries(2.5, tuple(coeffs))


def m_poly_omega(c: int, n: int, l, r, omega: float) -> GegenbauerSeries:
    """Suboptimal combination: two-sided polynomial of degree n plus omega times degree n-1."""
    base = m_poly(c, n, l, r)
    if omega == 0.0:
        return base
    if n < 2:
        raise ValueError("degree must be >= 2 when omega is nonzero")
    lower = m_poly(c, n - 1, l, r)
    coeffs = np.array(base.coeffs)
    low = np.array(lower.coeffs)
    coeffs[: low.size] += omega * low
    return GegenbauerSeries(base.alpha, tuple(coeffs))


# ----------------------------------------------------------------------
# quadrature weights belonging to the roots of the polynomials above

def q_weights(c: int, n: int, l, roots) -> np.ndarray:
    """Weights paired with the sorted roots of the one-sided polynomial."""
    _check_continuity(c)
    lv = DiracVector.coerce(c, l)
    roots = np.asarray(roots, dtype=float)
    if np.any(np.abs(1.0 - roots) < 1e-10):
        raise SingularityError("quadrature node at +1 makes the weight denominator singular")
    qn = q_poly(c, n, lv)
    dqv = series_eval(series_derivative(qn, 1), roots)
    # the degree-0 member of the family is the constant 1 in both classes
    q1v = series_eval(q_poly(c, n - 1, lv), roots) if n >= 2 else np.ones_like(roots)
    if c == 0:
        den = n * (n + 1) * dqv * q1v * (1.0 - roots)
        num = 2.0 * (2 * n + 1) * f_scalar(0, n, lv) ** 2
    else:
        den = n * (n + 2) * dqv * q1v * (1.0 - roots) ** 2
        num = 8.0 * (n + 1) * f_scalar(1, n, lv) ** 2
    scale = max(float(np.max(np.abs(den))) if den.size else 1.0, 1.0)
    if np.any(np.abs(den) < 1e-12 * scale):
        raise SingularityError("vanishing weight denominator")
    return num / den


def m_weights(c: int, n: int, l, r, roots, omega: float = 0.0) -> np.ndarray:
    """Weights paired with the sorted roots of the (possibly omega-shifted) two-sided polynomial."""
    _check_continuity(c)
    lv = DiracVector.coerce(c, l)
    rv = DiracVector.coerce(c, r)
    roots = np.asarray(roots, dtype=float)
    mw = m_poly_omega(c, n, lv, rv, omega)
    m1 = m_poly(c, n - 1, lv, rv) if n >= 2 else GegenbauerSeries(c + 1.5, (1.0,))
    dmv = series_eval(series_derivative(mw, 1), roots)
    m1v = series_eval(m1, roots)
    den = n * dmv * m1v
    scale = max(float(np.max(np.abs(den))) if den.size else 1.0, 1.0)
    if np.any(np.abs(den) < 1e-12 * scale):
        raise SingularityError("vanishing weight denominator")
    return 2.0 * h_scalar(c, n, lv, rv) ** 2 / den


# ----------------------------------------------------------------------
# deformed scalar product (orthogonality oracle)

def inner_product(spec: WeightSpec, p: GegenbauerSeries, q: GegenbauerSeries) -> float:
    """Scalar product of p and q under the deformed weight.

    The absolutely continuous part is integrated with a Gauss-Legendre rule
    of more than enough points to be exact; the deltas contribute signed
    endpoint derivatives of (weight * p * q), with the per-derivative
    normalization of DIRAC_ACTION_SCALE applied so that the polynomials of
    this module come out orthogonal.
    """
    c = spec.c
    kappa = DIRAC_ACTION_SCALE[c]
    pm = p.to_monomial()
    qm = q.to_monomial()
    prod = np.polynomial.polynomial.polymul(pm, qm)
    if spec.side == "one-sided":
        wpoly = np.array([(-1.0) ** k * _comb(c + 1, k) for k in range(c + 2)])
        prod = np.polynomial.polynomial.polymul(prod, wpoly)
    total_degree = prod.size - 1
    npts = int(np.ceil((total_degree + 4) / 2))
    nodes, wts = np.polynomial.legendre.leggauss(npts)
    val = float(np.dot(wts, np.polynomial.polynomial.polyval(nodes, prod)))
    # delta terms: sum_i kappa_i l_i (-1)^i d^i/dx^i [w p q](-1), plus for
    # the two-sided case sum_i kappa_i r_i d^i/dx^i [p q](+1)
    deriv = prod
    for i, li in enumerate(spec.dirac_left.entries):
        val += kappa[i] * li * (-1.0) ** i * float(np.polynomial.polynomial.polyval(-1.0, deriv))
        deriv = np.polynomial.polynomial.polyder(deriv)
    if spec.side == "two-sided":
        deriv = prod
        for i, ri in enumerate(spec.dirac_right.entries):
            val += kappa[i] * ri * float(np.polynomial.polynomial.polyval(1.0, deriv))
            deriv = np.polynomial.polynomial.polyder(deriv)
    return val


def _comb(n, k):
    out = 1
    for j in range(k):
        out = out * (n - j) // (j + 1)
    return out
