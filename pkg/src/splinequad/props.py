"""Seeded invariant suites: involutions, commuting diagram, defect identities,
random-space exactness, and fixed-point behaviour.

Each check draws its own parameters from a seeded generator, so a run is
fully reproducible from the seed.  Leading Dirac components are drawn from
[-0.3, 0.3]; the derivative component of class 1 uses its natural
magnitude range (the chains and fixed points live at l1 of order
1/(3 n (n+1) (n+2) (n+3)), and far larger values drown the maps' exact
cancellations in float noise).  Draws whose round trip passes too close
to a pole, a base point, or a degeneracy of the polynomial family are
rejected and redrawn; every rejection rule is spelled out at its site.
"""

from __future__ import annotations

import warnings as _warnings

import numpy as np

from . import maps, semiclassical, verify
from .orthopoly import RootCountWarning, real_roots
from .rulegen import Partition, default_middle_index, generate
from .semiclassical import DiracVector

TOL = 1e-10
DRAWS = 100
N_RANGE = (2, 3, 4, 5, 6, 7, 8)

_BOX = 0.3
# The class-1 maps are exact rational identities, but in floating point
# their mixed high-order terms cancel; a draw only stays meaningful when
# neither the vector nor its reflection sits too close to the pole set.
# Class 0 composes stably through the pole region, so a much smaller
# clearance suffices there.
_POLE_GUARD = {0: 1e-4, 1: 2e-3}


def _dirac_box(rng, c, n):
    """Draw from the natural magnitude range of each Dirac component."""
    if c == 0:
        return DiracVector(0, (rng.uniform(-_BOX, _BOX),))
    l1_scale = 2.0 / (n * (n + 1) * (n + 2) * (n + 3))
    return DiracVector(1, (rng.uniform(-_BOX, _BOX), rng.uniform(-l1_scale, l1_scale)))


def _safe_dirac(rng, c, n, max_tries=20000):
    """Random Dirac vector whose reflection round trip is well conditioned."""
    guard = _POLE_GUARD[c]
    scale = (n + 1) ** 2 if c == 0 else (n + 1) * (n + 2)
    for _ in range(max_tries):
        l = _dirac_box(rng, c, n)
        if abs(maps.gamma_scalar(c, n, l)) < guard * scale:
            continue
        try:
            refl = maps.reflection(c, n, l)
        except maps.PoleError:
            continue
        if abs(maps.gamma_scalar(c, n, refl)) < guard * scale:
            continue
        if np.max(np.abs(refl.as_array)) > 5.0:
            continue
        return l
    raise RuntimeError("could not draw a pole-free Dirac vector")


def _proj_dist(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    return float(min(np.max(np.abs(u - v)), np.max(np.abs(u + v))))


def _connection_j_cond(n, e) -> float:
    """Cancellation measure of the quadratic connection map at a point.

    Returns min over image entries of |signed sum| / sum(|terms|); values
    near zero mean the point is effectively on the base locus and the
    float image carries no correct digits.
    """
    j0, j1, j2 = e
    b = -(n + 3) * j0 + n * j2
    terms = (
        (n + 3) * (2 * n**4 + 18 * n**3 + 49 * n**2 + 48 * n + 18) * j0 * j0,
        n * n * (n + 3) * (2 * n * n + 6 * n + 1) * j1 * j1,
        n * n * (n - 1) * (2 * n * n + 2 * n - 3) * j2 * j2,
        -2 * n * (n + 2) * (n + 3) * (2 * n * n + 8 * n + 3) * j0 * j1,
        2 * n * (2 * n**4 + 12 * n**3 + 25 * n**2 + 15 * n - 9) * j0 * j2,
        -2 * n * n * (n + 1) * (2 * n * n + 4 * n - 3) * j1 * j2,
    )
    delta = sum(terms)
    conds = [abs(delta) / max(sum(abs(t) for t in terms), 1e-300)]
    pair = (delta, 6.0 * b * ((2 * n + 3) * j0 - n * j1))
    conds.append(abs(sum(pair)) / max(sum(abs(t) for t in pair), 1e-300))
    pair = ((n + 3) * delta, -6.0 * (2 * n + 3) * b * b)
    conds.append(abs(sum(pair)) / max(sum(abs(t) for t in pair), 1e-300))
    return min(conds)


def _draw_case(rng):
    c = int(rng.integers(0, 2))
    n = int(rng.choice(N_RANGE))
    return c, n


def involution_checks(seed=0, draws=DRAWS) -> dict:
    """connection, reflect_j, reflection and connection_j composed with
    themselves must give the identity (projectively in coefficient space)."""
    rng = np.random.default_rng(seed)
    errs = {"connection": 0.0, "reflect_j": 0.0, "reflection": 0.0, "connection_j": 0.0}
    for _ in range(draws):
        c, n = _draw_case(rng)
        l = _safe_dirac(rng, c, n)
        la = l.as_array
        scale = 1.0 + float(np.max(np.abs(la)))

        cc = maps.connection(maps.connection(l)).as_array
        errs["connection"] = max(errs["connection"], float(np.max(np.abs(cc - la))) / scale)

        j = maps.f_map(c, n, l)
        rr = maps.reflect_j(maps.reflect_j(j))
        errs["reflect_j"] = max(errs["reflect_j"], _proj_dist(rr.as_array, j.as_array))

        refl2 = maps.reflection(c, n, maps.reflection(c, n, l)).as_array
        errs["reflection"] = max(errs["reflection"], float(np.max(np.abs(refl2 - la))) / scale)

    used = 0
    attempts = 0
    while used < draws and attempts < 200 * draws:
        attempts += 1
        c, n = _draw_case(rng)
        j = maps.f_map(c, n, _safe_dirac(rng, c, n))
        if c == 1:
            # the quadratic map sends generic points close to its own base
            # locus; only round trips with correct digits are comparable
            if _connection_j_cond(n, j.entries) < 1e-4:
                continue
            once = maps.connection_j(c, n, j)
            if _connection_j_cond(n, once.entries) < 1e-4:
                continue
        jj = maps.connection_j(c, n, maps.connection_j(c, n, j))
        errs["connection_j"] = max(errs["connection_j"], _proj_dist(jj.as_array, j.as_array))
        used += 1
    return {
        f"involution_{name}": {"passed": err <= TOL, "max_error": err, "tolerance": TOL,
                               "draws": draws}
        for name, err in errs.items()
    }


def diagram_checks(seed=0, draws=DRAWS) -> dict:
    """Stepping in Dirac space then mapping to coefficient space must equal
    mapping first and then going around through reflection and connection."""
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(draws):
        c, n = _draw_case(rng)
        l = _safe_dirac(rng, c, n)
        lhs = maps.f_map(c, n, maps.recursion(c, n, l))
        rhs = maps.connection_j(c, n, maps.reflect_j(maps.f_map(c, n, l)))
        err = max(err, _proj_dist(lhs.as_array, rhs.as_array))
    return {"commuting_diagram": {"passed": err <= TOL, "max_error": err, "tolerance": TOL,
                                  "draws": draws}}


def _roots_resolvable(series, roots, limit=1e-11) -> bool:
    """True when every root's float accuracy beats ``limit``.

    The attainable accuracy of a polished root is the evaluation noise
    floor eps * sum_k |a_k C_k(x)| divided by |p'(x)|; clustered roots or
    coefficients of wildly mixed magnitude push it above the limit."""
    from .orthopoly import gegenbauer_eval, series_derivative, series_eval

    dp = series_derivative(series, 1)
    a = np.abs(np.asarray(series.coeffs))
    for x in roots:
        noise = 1e-16 * sum(a[k] * abs(gegenbauer_eval(k, series.alpha, x)) for k in range(a.size))
        if noise > limit * abs(series_eval(dp, x)):
            return False
    return True


def root_reflection_checks(seed=0, draws=DRAWS) -> dict:
    """The reflected Dirac vector's polynomial has the mirrored roots."""
    rng = np.random.default_rng(seed)
    err = 0.0
    used = 0
    attempts = 0
    while used < draws and attempts < 20 * draws:
        attempts += 1
        c, n = _draw_case(rng)
        l = _safe_dirac(rng, c, n)
        with _warnings.catch_warnings(record=True) as caught:
            _warnings.simplefilter("always", RootCountWarning)
            p1 = semiclassical.q_poly(c, n, l)
            p2 = semiclassical.q_poly(c, n, maps.reflection(c, n, l))
            r1 = real_roots(p1)
            r2 = real_roots(p2)
        if caught or r1.size != n or r2.size != n:
            continue
        # far-escaped roots mean a near-vanishing leading coefficient, whose
        # cancellation noise owns the root position: the family degenerates
        if max(np.max(np.abs(r1)), np.max(np.abs(r2))) > 10.0:
            continue
        if not (_roots_resolvable(p1, r1) and _roots_resolvable(p2, r2)):
            continue
        used += 1
        mirrored = -r1[::-1]
        err = max(err, float(np.max(np.abs(r2 - mirrored) / (1.0 + np.abs(mirrored)))))
    return {"root_reflection": {"passed": err <= TOL and used == draws, "max_error": err,
                                "tolerance": TOL, "draws": used}}


def _poly_integral(coef):
    nodes, wts = np.polynomial.legendre.leggauss(len(coef) // 2 + 2)
    return float(np.dot(wts, np.polynomial.polynomial.polyval(nodes, coef)))


def _dirac_rhs(coef, l: DiracVector, r: DiracVector | None):
    kappa = semiclassical.DIRAC_ACTION_SCALE[l.c]
    val = 0.0
    der = coef
    for i, li in enumerate(l.entries):
        val += kappa[i] * (-1.0) ** i * li * float(np.polynomial.polynomial.polyval(-1.0, der))
        der = np.polynomial.polynomial.polyder(der)
    if r is not None:
        der = coef
        for i, ri in enumerate(r.entries):
            val += kappa[i] * ri * float(np.polynomial.polynomial.polyval(1.0, der))
            der = np.polynomial.polynomial.polyder(der)
    return val


def defect_identity_checks(seed=0, draws=DRAWS) -> dict:
    """Defects of one-sided and two-sided rules equal the signed endpoint
    derivative sums, and a nonzero omega lowers the exact degree by one."""
    rng = np.random.default_rng(seed)
    err_q = err_m = err_momega = 0.0
    drop_ok = True
    used = 0
    attempts = 0
    while used < draws and attempts < 20 * draws:
        attempts += 1
        c, n = _draw_case(rng)
        l = _safe_dirac(rng, c, n)
        r = _safe_dirac(rng, c, n)
        omega = rng.uniform(0.5, 1.5)

        with _warnings.catch_warnings(record=True) as caught:
            _warnings.simplefilter("always", RootCountWarning)
            roots_q = real_roots(semiclassical.q_poly(c, n, l))
            roots_m = real_roots(semiclassical.m_poly(c, n, l, r))
            roots_mo = real_roots(semiclassical.m_poly_omega(c, n, l, r, omega))
        if caught or roots_q.size != n or roots_m.size != n or roots_mo.size != n:
            continue
        # a vanishing leading coefficient sends a root far away, where the
        # identity drowns in evaluation noise: the family degenerates there
        if max(np.max(np.abs(roots_q)), np.max(np.abs(roots_m)), np.max(np.abs(roots_mo))) > 10.0:
            continue
        # the deformed families give up interlacing, so a root of the
        # degree-n polynomial can collide with one of degree n-1; weights
        # are undefined there and the draw is repeated
        try:
            all_wts = (semiclassical.q_weights(c, n, l, roots_q),
                       semiclassical.m_weights(c, n, l, r, roots_m, 0.0),
                       semiclassical.m_weights(c, n, l, r, roots_mo, omega))
        except semiclassical.SingularityError:
            continue
        used += 1

        # one-sided rule: g = (1-x)^(c+1) h,  deg h <= 2n-1
        wts = all_wts[0]
        g = rng.uniform(-1.0, 1.0, 2 * n)
        for _k in range(c + 1):
            g = np.polynomial.polynomial.polymul(g, np.array([1.0, -1.0]))
        terms = wts * np.polynomial.polynomial.polyval(roots_q, g)
        lhs = float(np.sum(terms)) - _poly_integral(g)
        rhs = _dirac_rhs(g, l, None)
        # normalize by the summed magnitudes: with near-singular weight
        # denominators the identity cannot be sharper than the sum's noise
        err_q = max(err_q, abs(lhs - rhs) / (1.0 + float(np.sum(np.abs(terms))) + abs(rhs)))

        # two-sided rule, omega = 0: free g with deg <= 2n-1
        wts = all_wts[1]
        g = rng.uniform(-1.0, 1.0, 2 * n)
        terms = wts * np.polynomial.polynomial.polyval(roots_m, g)
        lhs = float(np.sum(terms)) - _poly_integral(g)
        rhs = _dirac_rhs(g, l, r)
        err_m = max(err_m, abs(lhs - rhs) / (1.0 + float(np.sum(np.abs(terms))) + abs(rhs)))

        # omega-shifted rule: identity only up to deg 2n-2 ...
        wts = all_wts[2]
        g = rng.uniform(-1.0, 1.0, 2 * n - 1)
        terms = wts * np.polynomial.polynomial.polyval(roots_mo, g)
        lhs = float(np.sum(terms)) - _poly_integral(g)
        rhs = _dirac_rhs(g, l, r)
        err_momega = max(err_momega,
                         abs(lhs - rhs) / (1.0 + float(np.sum(np.abs(terms))) + abs(rhs)))

        # ... and measurably violated at degree 2n-1
        g = np.zeros(2 * n)
        g[-1] = 1.0
        lhs = float(np.dot(wts, np.polynomial.polynomial.polyval(roots_mo, g))) - _poly_integral(g)
        rhs = _dirac_rhs(g, l, r)
        if abs(lhs - rhs) < 1e-8:
            drop_ok = False
    draws = used
    return {
        "defect_identity_one_sided": {"passed": err_q <= TOL, "max_error": err_q,
                                      "tolerance": TOL, "draws": draws},
        "defect_identity_two_sided": {"passed": err_m <= TOL, "max_error": err_m,
                                      "tolerance": TOL, "draws": draws},
        "defect_identity_omega": {"passed": err_momega <= TOL and drop_ok,
                                  "max_error": err_momega, "tolerance": TOL,
                                  "degree_drop_detected": drop_ok, "draws": draws},
    }


def exactness_checks(seed=0, n_configs=20) -> dict:
    """Random spaces: every B-spline defect small and weights sum to b - a."""
    rng = np.random.default_rng(seed)
    degrees = {0: (2, 4, 6), 1: (3, 5, 7)}
    max_defect_rel = 0.0
    max_wsum_rel = 0.0
    accepted = 0
    attempts = 0
    while accepted < n_configs and attempts < 40 * n_configs:
        attempts += 1
        c = int(rng.integers(0, 2))
        s = int(rng.integers(3, 7))
        d = int(rng.choice(degrees[c]))
        lengths = rng.uniform(0.5, 2.0, s)
        knots = np.concatenate([[0.0], np.cumsum(lengths)])
        middle = int(rng.integers(1, s + 1)) if c == 0 else default_middle_index(s)
        try:
            rule = generate(Partition(tuple(knots)), c, d, middle_index=middle)
        except (ValueError, maps.PoleError):
            continue
        if rule.warnings:
            continue
        accepted += 1
        space = verify.SplineSpace(rule.partition, d, c)
        report = verify.verify_exactness(rule, space)
        max_defect_rel = max(max_defect_rel, report.max_defect / (report.tolerance / TOL))
        length = knots[-1] - knots[0]
        max_wsum_rel = max(max_wsum_rel, abs(report.weight_sum - length) / length)
    passed = accepted == n_configs and max_defect_rel <= TOL and max_wsum_rel <= TOL
    return {"random_space_exactness": {
        "passed": passed, "configs": accepted, "max_defect": max_defect_rel,
        "max_weight_sum_error": max_wsum_rel, "tolerance": TOL,
    }}


def two_interval_exactness_checks(seed=0, splines_per_pair=50) -> dict:
    """Adjacent-pair exactness: random splines supported on two neighbouring
    subintervals are integrated exactly by the assembled rule."""
    rng = np.random.default_rng(seed)
    configs = [
        ((0.0, 1.0, 2.0, 3.0, 4.0), 0, 4, 3),
        ((0.0, 1.0, 3.0, 7.0, 15.0), 0, 4, 4),
        ((0.0, 1.0, 2.0, 3.0, 4.0, 5.0), 1, 5, 3),
        ((0.0, 1.0, 3.0, 7.0, 9.0), 1, 7, 3),
    ]
    err = 0.0
    for knots, c, d, middle in configs:
        rule = generate(Partition(knots), c, d, middle_index=middle)
        space = verify.SplineSpace(rule.partition, d, c)
        nodes = rule.all_nodes
        wts = rule.all_weights
        dim = space.dimension
        bmat = np.array([[verify.bspline_eval(space, i, x) for x in nodes] for i in range(dim)])
        ints = np.array([verify.bspline_integral(space, i) for i in range(dim)])
        t = space.partition.knots
        for k in range(1, space.partition.n_subintervals):
            lo, hi = t[k - 1], t[k + 1]
            idx = [i for i in range(dim)
                   if verify.basis_support(space, i)[0] >= lo - 1e-12
                   and verify.basis_support(space, i)[1] <= hi + 1e-12]
            coeffs = rng.uniform(-1.0, 1.0, (splines_per_pair, len(idx)))
            lhs = coeffs @ (bmat[idx] @ wts)
            rhs = coeffs @ ints[idx]
            err = max(err, float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs)))))
    return {"two_interval_exactness": {"passed": err <= TOL, "max_error": err,
                                       "tolerance": TOL, "splines_per_pair": splines_per_pair}}


def fixed_point_checks() -> dict:
    """Stationary vectors of the recursion map and the quadratic attractor."""
    out = {}
    # class 0, n = 2: the stationary value solves 36 l^2 = 2; with a stretch
    # factor of 2 it is the positive root of 72 l^2 + 9 l - 2 = 0
    fp = maps.fixed_point(0, 2)
    res = abs(maps.recursion(0, 2, fp).entries[0] - fp.entries[0])
    err_plain = abs(fp.entries[0] - np.sqrt(2.0) / 6.0)
    fp2 = maps.fixed_point(0, 2, stretch_factor=2.0)
    expected = (-9.0 + np.sqrt(81.0 + 576.0)) / 144.0
    err_stretch = abs(fp2.entries[0] - expected)
    out["fixed_point_class0"] = {
        "passed": res <= 1e-12 and err_plain <= 1e-12 and err_stretch <= 1e-12,
        "residual": res, "plain_error": err_plain, "stretched_error": err_stretch,
        "tolerance": 1e-12,
    }
    for n in (2, 3, 4, 5):
        fp = maps.fixed_point(1, n)
        res = float(np.max(np.abs(maps.recursion(1, n, fp).as_array - fp.as_array)))
        l1_expected = 1.0 / (3.0 * n * (n + 1) * (n + 2) * (n + 3))
        l1_err = abs(fp.entries[1] - l1_expected)
        # quadratic attractor: iterate from (0, 0), fit e_{k+1} <= K e_k^2
        target = fp.as_array
        x = np.zeros(2)
        errors = []
        for _ in range(40):
            errors.append(float(np.linalg.norm(x - target)))
            if errors[-1] < 1e-14:
                break
            x = maps.recursion(1, n, DiracVector(1, tuple(x))).as_array
        ratios = [e1 / e0**2 for e0, e1 in zip(errors, errors[1:])
                  if 1e-13 < e0 < 0.1 and e1 > 0.0]
        K = max(ratios) if ratios else float("inf")
        quad_ok = bool(ratios) and np.isfinite(K) and errors[-1] < 1e-12
        out[f"fixed_point_class1_n{n}"] = {
            "passed": res <= 1e-12 and l1_err <= 1e-10 and quad_ok,
            "residual": res, "l1_error": l1_err, "attractor_constant": K,
            "tolerance": 1e-12,
        }
    return out


def run_all(seed=0) -> dict:
    checks = {}
    checks.update(involution_checks(seed))
    checks.update(diagram_checks(seed))
    checks.update(root_reflection_checks(seed))
    checks.update(defect_identity_checks(seed))
    checks.update(exactness_checks(seed))
    checks.update(two_interval_exactness_checks(seed))
    checks.update(fixed_point_checks())
    return {
        "seed": seed,
        "passed": all(v["passed"] for v in checks.values()),
        "checks": checks,
    }
