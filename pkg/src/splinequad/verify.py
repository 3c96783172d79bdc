"""Exactness verification against B-spline bases and reference tables.

A rule for degree d, continuity class c splines must integrate every
normalized B-spline of the matching space exactly.  The space is realized
through an open knot vector (boundary multiplicity d+1, interior
multiplicity d-c); basis values come from the standard triangular
evaluation scheme and exact integrals from the identity
integral(B_i) = (t_{i+d+1} - t_i) / (d + 1) over the extended knots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._golden import TABLES
from .rulegen import Partition, QuadratureRule, generate

DEFECT_RTOL = 1e-10


@dataclass(frozen=True)
class SplineSpace:
    """Polynomial splines of one degree and continuity class over a partition."""

    partition: Partition
    degree: int
    continuity: int

    def __post_init__(self):
        if not isinstance(self.partition, Partition):
            object.__setattr__(self, "partition", Partition(tuple(self.partition)))
        d, c = self.degree, self.continuity
        # continuity -1 means no continuity at all (piecewise, degree 0 included)
        if d < 0 or c < -1 or c >= d:
            raise ValueError(f"need -1 <= continuity < degree, got c={c}, d={d}")

    @property
    def knot_vector(self) -> np.ndarray:
        """Open knot vector: boundary multiplicity d+1, interior multiplicity d-c."""
        t = self.partition.knots
        d, c = self.degree, self.continuity
        inner = [x for x in t[1:-1] for _ in range(d - c)]
        return np.array([t[0]] * (d + 1) + inner + [t[-1]] * (d + 1))

    @property
    def dimension(self) -> int:
        return self.partition.n_subintervals * (self.degree - self.continuity) + self.continuity + 1


def _find_span(kv: np.ndarray, d: int, x: float) -> int:
    n = len(kv) - d - 1
    if x >= kv[n]:
        return n - 1
    if x <= kv[d]:
        return d
    return int(np.searchsorted(kv, x, side="right")) - 1


def _basis_ders(kv: np.ndarray, d: int, span: int, x: float, order: int) -> np.ndarray:
    """Values and derivatives of the d+1 basis functions alive on the span.

    Returns array of shape (order+1, d+1); classic triangular scheme.
    """
    left = np.zeros(d + 1)
    right = np.zeros(d + 1)
    ndu = np.zeros((d + 1, d + 1))
    ndu[0, 0] = 1.0
    for j in range(1, d + 1):
        left[j] = x - kv[span + 1 - j]
        right[j] = kv[span + j] - x
        saved = 0.0
        for r in range(j):
            ndu[j, r] = right[r + 1] + left[j - r]
            temp = ndu[r, j - 1] / ndu[j, r]
            ndu[r, j] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        ndu[j, j] = saved

    nd = min(order, d)
    ders = np.zeros((order + 1, d + 1))
    ders[0] = ndu[:, d]
    a = np.zeros((2, d + 1))
    for r in range(d + 1):
        s1, s2 = 0, 1
        a[0, 0] = 1.0
        for k in range(1, nd + 1):
            dval = 0.0
            rk, pk = r - k, d - k
            if r >= k:
                a[s2, 0] = a[s1, 0] / ndu[pk + 1, rk]
                dval = a[s2, 0] * ndu[rk, pk]
            j1 = 1 if rk >= -1 else -rk
            j2 = k - 1 if r - 1 <= pk else d - r
            for j in range(j1, j2 + 1):
                a[s2, j] = (a[s1, j] - a[s1, j - 1]) / ndu[pk + 1, rk + j]
                dval += a[s2, j] * ndu[rk + j, pk]
            if r <= pk:
                a[s2, k] = -a[s1, k - 1] / ndu[pk + 1, r]
                dval += a[s2, k] * ndu[r, pk]
            ders[k, r] = dval
            s1, s2 = s2, s1
    fac = float(d)
    for k in range(1, nd + 1):
        ders[k] *= fac
        fac *= d - k
    return ders


def _clamp_to_interval(x: float, t0: float, ts: float):
    """Snap points a rounding error away from the interval ends onto them;
    genuinely outside points return None (the spline extends by zero)."""
    slack = 1e-10 * (ts - t0)
    if x < t0 - slack or x > ts + slack:
        return None
    return min(max(x, t0), ts)


def bspline_eval(space: SplineSpace, i: int, x: float, k: int = 0) -> float:
    """Value (or k-th derivative) of the i-th normalized B-spline at x.

    Points outside the closed interval evaluate to 0, matching the
    extension of the spline by zero.
    """
    if not 0 <= i < space.dimension:
        raise IndexError(f"basis index {i} outside 0..{space.dimension - 1}")
    t0, ts = space.partition.span
    x = _clamp_to_interval(x, t0, ts)
    if x is None:
        return 0.0
    kv = space.knot_vector
    d = space.degree
    span = _find_span(kv, d, x)
    if i < span - d or i > span:
        return 0.0
    ders = _basis_ders(kv, d, span, x, k)
    return float(ders[k, i - (span - d)])


def bspline_integral(space: SplineSpace, i: int) -> float:
    """Exact integral of the i-th normalized B-spline."""
    if not 0 <= i < space.dimension:
        raise IndexError(f"basis index {i} outside 0..{space.dimension - 1}")
    kv = space.knot_vector
    d = space.degree
    return float(kv[i + d + 1] - kv[i]) / (d + 1)


def basis_support(space: SplineSpace, i: int) -> tuple:
    """Closed support interval of the i-th basis function."""
    kv = space.knot_vector
    return float(kv[i]), float(kv[i + space.degree + 1])


def defect(rule: QuadratureRule, f, exact_integral: float) -> float:
    """Weighted sum minus exact integral; zero means the rule is exact for f."""
    nodes = rule.all_nodes
    weights = rule.all_weights
    vals = np.array([f(x) for x in nodes], dtype=float)
    return float(np.dot(weights, vals) - exact_integral)


@dataclass(frozen=True)
class DefectReport:
    defects: np.ndarray
    max_defect: float
    weight_sum: float
    interval_length: float
    tolerance: float
    warnings: tuple
    passed: bool

    @property
    def worst_basis_index(self) -> int:
        return int(np.argmax(np.abs(self.defects)))

    def to_dict(self) -> dict:
        return {
            "passed": bool(self.passed),
            "max_defect": self.max_defect,
            "worst_basis_index": self.worst_basis_index,
            "tolerance": self.tolerance,
            "weight_sum": self.weight_sum,
            "interval_length": self.interval_length,
            "defects": [float(v) for v in self.defects],
            "warnings": list(self.warnings),
        }


def verify_exactness(rule: QuadratureRule, space: SplineSpace,
                     rtol: float = DEFECT_RTOL) -> DefectReport:
    """Defect of every basis function of the space under the rule.

    The space may have a different degree or continuity than the rule was
    built for (verifying against a richer space is how inexactness shows),
    but it must live on the same partition.
    """
    if space.partition.knots != rule.partition.knots:
        raise ValueError("space mismatch: partitions differ")
    kv = space.knot_vector
    d = space.degree
    dim = space.dimension
    t0, ts = space.partition.span
    sums = np.zeros(dim)
    for x, w in zip(rule.all_nodes, rule.all_weights):
        x = _clamp_to_interval(x, t0, ts)
        if x is None:
            continue
        span = _find_span(kv, d, x)
        sums[span - d: span + 1] += w * _basis_ders(kv, d, span, x, 0)[0]
    integrals = np.array([bspline_integral(space, i) for i in range(dim)])
    defects = sums - integrals
    tol = rtol * (1.0 + float(np.max(np.abs(integrals))))
    max_defect = float(np.max(np.abs(defects)))
    length = ts - t0
    wsum = float(np.sum(rule.all_weights))
    warn = list(rule.warnings)
    if abs(wsum - length) > rtol * length:
        warn.append(f"weight sum {wsum!r} deviates from interval length {length!r}")
    return DefectReport(
        defects=defects,
        max_defect=max_defect,
        weight_sum=wsum,
        interval_length=length,
        tolerance=tol,
        warnings=tuple(warn),
        passed=max_defect <= tol,
    )


# ----------------------------------------------------------------------
# reference-table reproduction

@dataclass(frozen=True)
class TableEntry:
    label: str
    expected: float
    actual: float
    error: float
    passed: bool


@dataclass(frozen=True)
class TableReport:
    table_id: int
    tolerance: float
    entries: tuple

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def max_error(self) -> float:
        return max(e.error for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "table": self.table_id,
            "passed": bool(self.passed),
            "tolerance": self.tolerance,
            "max_error": self.max_error,
            "entries": [
                {
                    "label": e.label,
                    "expected": e.expected,
                    "actual": e.actual,
                    "error": e.error,
                    "passed": bool(e.passed),
                }
                for e in self.entries
            ],
        }


def _dirac_of(rule: QuadratureRule, key: str):
    side, index = key[0], int(key[1:])
    plan = rule.segments[index - 1].plan
    vec = plan.dirac_left if side == "l" else plan.dirac_right
    return None if vec is None else vec.entries


def reproduce_table(table_id: int) -> TableReport:
    """Regenerate one reference rule and compare every published entry."""
    if table_id not in TABLES:
        raise ValueError(f"unknown table {table_id}; choose from {sorted(TABLES)}")
    spec = TABLES[table_id]
    tol = spec["tolerance"]
    rule = generate(
        Partition(spec["knots"]),
        spec["continuity"],
        spec["degree"],
        middle_index=spec["middle_index"],
        omega_policy=spec["omega_policy"],
    )
    entries = []

    def add(label, expected, actual):
        err = abs(actual - expected)
        entries.append(TableEntry(label, float(expected), float(actual), err, err <= tol))

    for key, expected_vec in sorted(spec["dirac"].items()):
        actual_vec = _dirac_of(rule, key)
        for i, expected in enumerate(expected_vec):
            add(f"{key}[{i}]", expected, actual_vec[i] if actual_vec is not None else np.nan)
    if spec["omega"] is not None:
        add("omega", spec["omega"], rule.omega)
    nodes = rule.all_nodes
    weights = rule.all_weights
    for k, (x_ref, w_ref) in enumerate(spec["pairs"]):
        if k < nodes.size:
            add(f"node[{k}]", x_ref, nodes[k])
            add(f"weight[{k}]", w_ref, weights[k])
        else:
            entries.append(TableEntry(f"node[{k}]", x_ref, np.nan, np.inf, False))
    if spec["symmetric"]:
        a, b = rule.partition.span
        mirror_nodes = (a + b) - nodes[::-1]
        sym_err = max(
            float(np.max(np.abs(mirror_nodes - nodes))),
            float(np.max(np.abs(weights[::-1] - weights))),
        )
        entries.append(TableEntry("symmetry", 0.0, sym_err, sym_err, sym_err <= 1e-10))
    return TableReport(table_id=table_id, tolerance=tol, entries=tuple(entries))
