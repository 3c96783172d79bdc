"""Transformations of Dirac vectors and their projective counterparts.

The rule construction marches a Dirac vector from subinterval to
subinterval.  One step is the composition of three elementary maps:

* ``reflection``  - mirrors the one-sided polynomial's roots about 0,
* ``connection``  - flips signs so adjacent defects cancel,
* ``stretch``     - rescales for a change of subinterval length.

``recursion`` (= connection after reflection) is available in closed
rational form for continuity classes 0 and 1; ``reflection`` is recovered
from it since the connection map is an involution.  The same step can be
expressed on the projective coefficient vectors of the polynomials in a
symmetric-index basis (``f_map``, ``reflect_j``, ``connection_j``), which
gives an independent route used as a cross-check: mapping a Dirac vector
forward and then around the projective square must commute.

``fixed_point`` locates stationary Dirac vectors of the (optionally
stretched) recursion; these generate rules that repeat periodically on an
infinite uniform knot line.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .semiclassical import DiracVector, e_scalar, f_scalar, _check_continuity

_EXCLUDED_N = {0: (-1.0,), 1: (-1.0, -2.0)}


class PoleError(ValueError):
    """The rational recursion map was evaluated at (or too close to) a pole."""


class FixedPointError(RuntimeError):
    """The fixed-point search did not converge."""


@dataclass(frozen=True)
class JacobiCoefficientVector:
    """Projective coefficient tuple, normalized so the largest entry is +1."""

    c: int
    entries: tuple

    def __post_init__(self):
        _check_continuity(self.c)
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (self.c + 2,):
            raise ValueError(f"class {self.c} needs {self.c + 2} projective entries")
        if not np.any(e):
            raise ValueError("projective vector must not be zero")
        e = e / e[int(np.argmax(np.abs(e)))]
        if not np.all(np.isfinite(e)):
            raise ValueError("projective normalization produced non-finite entries")
        object.__setattr__(self, "entries", tuple(float(v) for v in e))

    @property
    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries)


def connection(l: DiracVector) -> DiracVector:
    """Sign-flip involution: entry i picks up the factor (-1)^(i+1)."""
    return DiracVector(l.c, tuple(v if i % 2 else -v for i, v in enumerate(l.entries)))


def stretch(l: DiracVector, lam: float) -> DiracVector:
    """Entrywise rescaling for a subinterval-length ratio lam: entry i -> entry i / lam^(i+1)."""
    if not lam > 0:
        raise ValueError(f"stretch factor must be positive, got {lam}")
    return DiracVector(l.c, tuple(v / lam ** (i + 1) for i, v in enumerate(l.entries)))


def _check_n(c, n):
    for bad in _EXCLUDED_N[c]:
        if abs(n - bad) < 1e-12:
            raise PoleError(f"recursion map undefined at n = {bad}")


def gamma_scalar(c, n, l) -> float:
    """Denominator scalar of the recursion map.  Equals (n+1)^2 for class 0
    and (n+1)(n+2) for class 1 when the Dirac vector vanishes."""
    _check_continuity(c)
    e = DiracVector.coerce(c, l).entries
    if c == 0:
        return (n + 1) ** 2 * (1.0 + n * (n + 2) / 2.0 * e[0])
    l0, l1 = e
    return (n + 1) * (n + 2) * (
        1.0
        + n * (n + 3) * l0
        + 6.0 * n * (n + 3) * (n * n + 3 * n - 1) * l1
        - 3.0 * (n * n - 1) * n * n * (n + 2) * (n + 3) ** 2 * (n + 4) * l1 * l1
    )


def g0_scalar(n, l) -> float:
    """First numerator scalar of the class-1 recursion map."""
    l0, l1 = DiracVector.coerce(1, l).entries
    return 4.0 * (2 * n * n + 6 * n + 3) + n * (n + 3) * (
        (11 * n * n + 33 * n + 16) * l0
        + 24.0 * (2 * n**4 + 12 * n**3 + 17 * n * n - 3 * n - 4) * l1
        - 3.0 * n * (n + 1) * (n + 2) * (n + 3) * (
            4.0 * (n + 1) * (n + 2) * (2 * n * n + 6 * n - 5) * l1 * l1
            + 3.0 * (n * n - 1) * n * (n + 2) * (n + 3) * (n + 4) * l0 * l1 * l1
            - 6.0 * (n * n + 3 * n - 2) * l0 * l1
            - l0 * l0
        )
    )


def g1_scalar(n, l) -> float:
    """Second numerator scalar of the class-1 recursion map."""
    l1 = DiracVector.coerce(1, l).entries[1]
    return 1.0 - 3.0 * n * (n + 1) * (n + 2) * (n + 3) * l1


def recursion(c: int, n, l) -> DiracVector:
    """Advance a Dirac vector to the next (equal-length) subinterval.

    n may be any real number outside the small excluded set; at integer n
    it is the step that makes two-subinterval splines integrate exactly.
    """
    _check_continuity(c)
    _check_n(c, n)
    lv = DiracVector.coerce(c, l)
    gam = gamma_scalar(c, n, lv)
    if c == 0:
        if abs(gam) < 1e-12 * (n + 1) ** 2:
            raise PoleError("recursion map pole: denominator scalar vanishes")
        return DiracVector(0, ((2.0 + (n + 1) ** 2 * lv.entries[0]) / gam,))
    scale = abs((n + 1) * (n + 2))
    if abs(gam) < 1e-12 * scale:
        raise PoleError("recursion map pole: denominator scalar vanishes")
    e = e_scalar(n, lv)
    l0, l1 = lv.entries
    return DiracVector(
        1,
        (
            -l0 + e * g0_scalar(n, lv) / (3.0 * gam * gam),
            l1 + e * g1_scalar(n, lv) / (3.0 * (n + 1) * (n + 2) * gam),
        ),
    )


def recursion_stretch(c: int, n, l, lam: float) -> DiracVector:
    """Recursion step followed by stretching with the length ratio lam."""
    return stretch(recursion(c, n, l), lam)


def reflection(c: int, n, l) -> DiracVector:
    """Dirac vector whose one-sided polynomial has the mirrored roots.

    Computed as connection applied to the recursion step, which inverts
    the defining composition because the connection map is an involution.
    """
    return connection(recursion(c, n, l))


def f_map(c: int, n, l) -> JacobiCoefficientVector:
    """Projective coefficient vector of the one-sided polynomial of degree n."""
    _check_continuity(c)
    lv = DiracVector.coerce(c, l)
    if c == 0:
        vec = (f_scalar(0, n, lv) / (n + 1), f_scalar(0, n + 1, lv) / (n + 1))
    else:
        vec = (
            6.0 * f_scalar(1, n, lv) / ((n + 2) * (2 * n + 3)),
            6.0 * e_scalar(n, lv) / ((n + 1) * (n + 2)),
            6.0 * f_scalar(1, n + 1, lv) / ((n + 1) * (2 * n + 3)),
        )
    return JacobiCoefficientVector(c, vec)


def reflect_j(j: JacobiCoefficientVector) -> JacobiCoefficientVector:
    """Projective root reflection: entry i picks up the factor (-1)^i."""
    return JacobiCoefficientVector(j.c, tuple((-1.0) ** i * v for i, v in enumerate(j.entries)))


def _connection_j_raw(c: int, n, e: np.ndarray) -> np.ndarray:
    """Unnormalized image of the projective connection map."""
    if c == 0:
        j0, j1 = e
        return np.array([(n + 1) * j0 - n * j1, (n + 2) * j0 - (n + 1) * j1])
    j0, j1, j2 = e
    b = -(n + 3) * j0 + n * j2
    delta = (
        (n + 3) * (2 * n**4 + 18 * n**3 + 49 * n**2 + 48 * n + 18) * j0 * j0
        + n * n * (n + 3) * (2 * n * n + 6 * n + 1) * j1 * j1
        + n * n * (n - 1) * (2 * n * n + 2 * n - 3) * j2 * j2
        - 2 * n * (n + 2) * (n + 3) * (2 * n * n + 8 * n + 3) * j0 * j1
        + 2 * n * (2 * n**4 + 12 * n**3 + 25 * n**2 + 15 * n - 9) * j0 * j2
        - 2 * n * n * (n + 1) * (2 * n * n + 4 * n - 3) * j1 * j2
    )
    return np.array(
        [
            n * delta,
            (2 * n + 3) * (delta + 6.0 * b * ((2 * n + 3) * j0 - n * j1)),
            (n + 3) * delta - 6.0 * (2 * n + 3) * b * b,
        ]
    )


def connection_j(c: int, n, j: JacobiCoefficientVector) -> JacobiCoefficientVector:
    """The connection map transported to the projective coefficient space.

    Linear for class 0 and quadratic for class 1; both are involutions up
    to projective scale.  Evaluating at a base point of the quadratic map
    (zero image) raises ValueError.
    """
    _check_continuity(c)
    if j.c != c:
        raise ValueError("projective vector has the wrong continuity class")
    img = _connection_j_raw(c, n, j.as_array)
    if not np.any(img):
        raise ValueError("indeterminacy point: image of the connection map is zero")
    return JacobiCoefficientVector(c, tuple(img))


def fixed_point(c: int, n, seed=None, stretch_factor: float = 1.0,
                tol: float = 1e-12, max_iter: int = 100) -> DiracVector:
    """Stationary Dirac vector of the stretched recursion map.

    Starts from the zero vector (or ``seed``), pre-iterates the map while
    it contracts, then polishes with a damped Newton method on the residual
    RecS(l) - l.  Raises FixedPointError with the residual if neither phase
    reaches the tolerance within ``max_iter`` total steps.
    """
    _check_continuity(c)
    lv = DiracVector.zero(c) if seed is None else DiracVector.coerce(c, seed)

    def step(arr):
        out = recursion_stretch(c, n, DiracVector(c, tuple(arr)), stretch_factor)
        return out.as_array

    def residual(arr):
        return step(arr) - arr

    x = lv.as_array
    used = 0
    # map iteration first: the relevant fixed point attracts the zero vector
    prev_norm = np.inf
    while used < max_iter:
        try:
            r = residual(x)
        except PoleError:
            break
        nr = float(np.max(np.abs(r)))
        if nr <= tol:
            return DiracVector(c, tuple(x))
        if nr >= prev_norm:
            break
        prev_norm = nr
        x = x + r
        used += 1
    # damped Newton polish
    m = c + 1
    for _ in range(used, max_iter):
        r = residual(x)
        nr = float(np.max(np.abs(r)))
        if nr <= tol:
            return DiracVector(c, tuple(x))
        jac = np.empty((m, m))
        h = 1e-7 * np.maximum(1.0, np.abs(x))
        for k in range(m):
            dx = np.zeros(m)
            dx[k] = h[k]
            jac[:, k] = (residual(x + dx) - residual(x - dx)) / (2.0 * h[k])
        try:
            delta = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise FixedPointError(f"singular Jacobian at residual {nr:.3e}") from exc
        lam = 1.0
        while lam > 1e-4:
            try:
                if np.max(np.abs(residual(x + lam * delta))) < nr:
                    break
            except PoleError:
                pass
            lam *= 0.5
        x = x + lam * delta
    nr = float(np.max(np.abs(residual(x))))
    if nr <= tol:
        return DiracVector(c, tuple(x))
    raise FixedPointError(f"no convergence in {max_iter} iterations, residual {nr:.3e}")
