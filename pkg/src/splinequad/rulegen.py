"""End-to-end construction of spline Gaussian quadrature rules.

Given a partition of [a, b], a continuity class c in {0, 1} and a spline
degree d (even for c = 0, odd for c = 1), the construction is:

1. plan   - every subinterval gets n nodes except one designated "middle"
            subinterval with n + 1 nodes,
2. march  - Dirac vectors start at zero on both boundaries and advance
            toward the middle with the stretched recursion map,
3. solve  - nodes are polynomial roots, weights come from the closed
            forms; the middle subinterval may place one node freely via
            the parameter omega (class 0 only),
4. scale  - local [-1, 1] nodes and weights map affinely to each span.

Node existence inside the spans is not guaranteed by the theory; out of
span nodes and missing real roots are reported as warnings on the rule,
never as hard failures.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, field

import numpy as np

from . import maps, semiclassical
from .orthopoly import RootCountWarning, real_roots
from .semiclassical import DiracVector

_SPAN_SLACK = 1e-10


@dataclass(frozen=True)
class Partition:
    """Strictly increasing knots t_0 < ... < t_s on a closed interval."""

    knots: tuple

    def __post_init__(self):
        k = tuple(float(v) for v in self.knots)
        if len(k) < 2:
            raise ValueError("a partition needs at least two knots")
        if not all(np.isfinite(k)):
            raise ValueError("knots must be finite")
        if any(b <= a for a, b in zip(k, k[1:])):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", k)

    @property
    def n_subintervals(self) -> int:
        return len(self.knots) - 1

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(np.asarray(self.knots))

    @property
    def span(self) -> tuple:
        return (self.knots[0], self.knots[-1])

    def subinterval(self, index: int) -> tuple:
        """Closed span of the 1-based subinterval index."""
        return (self.knots[index - 1], self.knots[index])


@dataclass
class SubintervalPlan:
    """Per-subinterval construction record filled in by plan() and march()."""

    index: int
    span: tuple
    kind: str  # "Q" | "Q-reflected" | "M"
    node_count: int
    dirac_left: DiracVector | None = None
    dirac_right: DiracVector | None = None
    omega: float | None = None


@dataclass(frozen=True)
class RuleSegment:
    """Final nodes and weights of one subinterval, in global coordinates."""

    plan: SubintervalPlan
    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class QuadratureRule:
    continuity: int
    degree: int
    partition: Partition
    middle_index: int
    omega_policy: str
    segments: tuple
    warnings: tuple = field(default_factory=tuple)

    @property
    def all_nodes(self) -> np.ndarray:
        return np.concatenate([s.nodes for s in self.segments])

    @property
    def all_weights(self) -> np.ndarray:
        return np.concatenate([s.weights for s in self.segments])

    @property
    def weight_sum(self) -> float:
        return float(np.sum(self.all_weights))

    @property
    def omega(self) -> float:
        return self.segments[self.middle_index - 1].plan.omega


def nodes_per_subinterval(c: int, d: int) -> int:
    """Number of nodes n of the regular subintervals for class c and degree d.

    Only the combinations (c = 0, even d) and (c = 1, odd d) are covered by
    the marching construction; the alternating-count families needed for
    the other parities are out of scope.
    """
    if c == 0:
        if d % 2 != 0:
            raise ValueError("1/2-rule unsupported: class 0 needs an even degree")
        n = d // 2
    elif c == 1:
        if d % 2 != 1:
            raise ValueError("1/2-rule unsupported: class 1 needs an odd degree")
        n = (d - 1) // 2
    else:
        raise ValueError("continuity class not implemented (conjecture-dependent)")
    if n < 1:
        raise ValueError(f"degree {d} too small for class {c}")
    return n


def default_middle_index(s: int) -> int:
    return math.ceil(s / 2)


def plan(partition: Partition, c: int, d: int, middle_index: int | None = None,
         omega_policy=None) -> list:
    """Lay out subinterval kinds and node counts: [n, ..., n, n+1, n, ..., n]."""
    n = nodes_per_subinterval(c, d)
    s = partition.n_subintervals
    if middle_index is None:
        middle_index = default_middle_index(s)
    if not 1 <= middle_index <= s:
        raise ValueError(f"middle index {middle_index} outside 1..{s}")
    _normalize_omega_policy(c, omega_policy)
    plans = []
    for k in range(1, s + 1):
        if k < middle_index:
            kind, count = "Q", n
        elif k > middle_index:
            kind, count = "Q-reflected", n
        else:
            kind, count = "M", n + 1
        plans.append(SubintervalPlan(index=k, span=partition.subinterval(k), kind=kind,
                                     node_count=count))
    return plans


def _normalize_omega_policy(c: int, policy):
    """Return (label, value-or-None); value None means resolve at generate time."""
    if policy is None:
        policy = "node-left" if c == 0 else "zero"
    if isinstance(policy, str):
        if policy == "zero":
            return "zero", 0.0
        if policy == "node-left":
            if c != 0:
                raise ValueError("omega placement is only available for class 0 rules")
            return "node-left", None
        if policy.startswith("value="):
            policy = float(policy[6:])
        else:
            raise ValueError(f"unknown omega policy {policy!r}")
    value = float(policy)
    if c != 0 and value != 0.0:
        raise ValueError("class 1 rules are optimal: omega must be zero")
    return f"value={value!r}", value


def march(plans: list, partition: Partition, c: int, n: int) -> list:
    """Fill Dirac vectors by stepping from both boundaries toward the middle.

    The stretch factor of a step is always (target length) / (source length).
    """
    lengths = partition.lengths
    middle = next(p.index for p in plans if p.kind == "M")
    vec = DiracVector.zero(c)
    plans[0].dirac_left = vec
    for k in range(1, middle):
        lam = lengths[k] / lengths[k - 1]
        try:
            vec = maps.recursion_stretch(c, n, vec, lam)
        except maps.PoleError as exc:
            raise maps.PoleError(f"marching pole stepping into subinterval {k + 1}: {exc}") from exc
        plans[k].dirac_left = vec
    vec = DiracVector.zero(c)
    plans[-1].dirac_right = vec
    s = len(plans)
    for k in range(s - 1, middle - 1, -1):
        lam = lengths[k - 1] / lengths[k]
        try:
            vec = maps.recursion_stretch(c, n, vec, lam)
        except maps.PoleError as exc:
            raise maps.PoleError(f"marching pole stepping into subinterval {k}: {exc}") from exc
        plans[k - 1].dirac_right = vec
    # only the relevant side is kept on regular subintervals
    for p in plans:
        if p.kind == "Q":
            p.dirac_right = None
        elif p.kind == "Q-reflected":
            p.dirac_left = None
    return plans


def omega_for_node_at(c: int, n_mid: int, l, r, x0: float) -> float:
    """Combination parameter that forces a node of the middle rule onto x0 (local)."""
    num = semiclassical.m_poly(c, n_mid, l, r)(x0)
    den = semiclassical.m_poly(c, n_mid - 1, l, r)(x0)
    scale = max(abs(num), 1.0)
    if abs(den) < 1e-12 * scale:
        raise semiclassical.SingularityError(
            f"cannot place a node at {x0}: lower-degree polynomial vanishes there")
    return -num / den


def scale_to_interval(nodes, weights, span):
    """Affine map of local [-1, 1] nodes and weights onto the span [a, b]."""
    a, b = span
    if not b > a:
        raise ValueError("empty span")
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    return (nodes * (b - a) + (a + b)) / 2.0, weights * (b - a) / 2.0


def _solve_segment(c, n, p: SubintervalPlan, warn_sink: list):
    """Local nodes and weights for one planned subinterval."""
    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always", RootCountWarning)
        if p.kind == "Q":
            series = semiclassical.q_poly(c, n, p.dirac_left)
            roots = real_roots(series)
            wts = semiclassical.q_weights(c, n, p.dirac_left, roots)
        elif p.kind == "Q-reflected":
            series = semiclassical.q_poly(c, n, p.dirac_right)
            roots = real_roots(series)
            wts = semiclassical.q_weights(c, n, p.dirac_right, roots)
            roots, wts = -roots[::-1], wts[::-1]
        elif p.kind == "M":
            m = p.node_count
            series = semiclassical.m_poly_omega(c, m, p.dirac_left, p.dirac_right, p.omega)
            roots = real_roots(series)
            wts = semiclassical.m_weights(c, m, p.dirac_left, p.dirac_right, roots, p.omega)
        else:
            raise ValueError(f"unknown subinterval kind {p.kind!r}")
    for w in caught:
        warn_sink.append(f"subinterval {p.index}: {w.message}")
    return roots, wts


def generate(partition, c: int, d: int, middle_index: int | None = None,
             omega_policy=None) -> QuadratureRule:
    """Build the complete quadrature rule for the given spline space."""
    if not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    n = nodes_per_subinterval(c, d)
    s = partition.n_subintervals
    if middle_index is None:
        middle_index = default_middle_index(s)
    policy_label, policy_value = _normalize_omega_policy(c, omega_policy)
    plans = plan(partition, c, d, middle_index, omega_policy)
    march(plans, partition, c, n)

    rule_warnings: list = []
    segments = []
    for p in plans:
        if p.kind == "M":
            if policy_value is None:
                p.omega = omega_for_node_at(c, p.node_count, p.dirac_left, p.dirac_right, -1.0)
            else:
                p.omega = policy_value
        local_nodes, local_weights = _solve_segment(c, n, p, rule_warnings)
        nodes, wts = scale_to_interval(local_nodes, local_weights, p.span)
        if nodes.size != p.node_count:
            rule_warnings.append(
                f"subinterval {p.index}: expected {p.node_count} nodes, found {nodes.size}")
        a, b = p.span
        slack = _SPAN_SLACK * (b - a)
        outside = nodes[(nodes < a - slack) | (nodes > b + slack)]
        for x in outside:
            rule_warnings.append(f"subinterval {p.index}: node {x!r} outside span [{a}, {b}]")
        segments.append(RuleSegment(plan=p, nodes=nodes, weights=wts))
    return QuadratureRule(
        continuity=c,
        degree=d,
        partition=partition,
        middle_index=middle_index,
        omega_policy=policy_label,
        segments=tuple(segments),
        warnings=tuple(rule_warnings),
    )
