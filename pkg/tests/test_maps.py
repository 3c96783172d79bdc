import math

import numpy as np
import pytest

from splinequad import maps
from splinequad.orthopoly import real_roots
from splinequad.semiclassical import DiracVector, q_poly


def dirac(c, *entries):
    return DiracVector(c, entries)


class TestConnection:
    def test_sign_rule(self):
        assert maps.connection(dirac(0, 0.3)).entries == (-0.3,)
        assert maps.connection(dirac(1, 0.2, 0.01)).entries == (-0.2, 0.01)

    def test_involution(self):
        rng = np.random.default_rng(0)
        for c in (0, 1):
            for _ in range(20):
                l = DiracVector(c, tuple(rng.uniform(-1, 1, c + 1)))
                assert maps.connection(maps.connection(l)) == l


class TestStretch:
    def test_identity_at_one(self):
        l = dirac(1, 0.4, 0.2)
        assert maps.stretch(l, 1.0) == l

    def test_table_value(self):
        out = maps.stretch(dirac(1, 13.0 / 100.0, 1.0 / 1200.0), 2.0)
        assert out.entries == pytest.approx((13.0 / 200.0, 1.0 / 4800.0), abs=1e-18)

    def test_inverse_pair(self):
        l = dirac(1, 0.3, -0.05)
        back = maps.stretch(maps.stretch(l, 2.5), 1 / 2.5)
        assert back.entries == pytest.approx(l.entries, rel=1e-15)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            maps.stretch(dirac(0, 0.1), 0.0)
        with pytest.raises(ValueError):
            maps.stretch(dirac(0, 0.1), -1.0)


class TestRecursion:
    def test_class0_chain(self):
        assert maps.recursion(0, 2, dirac(0, 0.0)).entries == pytest.approx((2 / 9,), abs=1e-16)
        assert maps.recursion(0, 2, dirac(0, 2 / 9)).entries == pytest.approx((4 / 17,), abs=1e-16)
        assert maps.recursion(0, 3, dirac(0, 1 / 8)).entries == pytest.approx((4 / 31,), abs=1e-16)
        assert maps.recursion(0, 3, dirac(0, 4 / 31)).entries == pytest.approx(
            (63 / 488,), abs=1e-16)

    def test_class1_step(self):
        out = maps.recursion(1, 2, dirac(1, 0.0, 0.0))
        assert out.entries == pytest.approx((23 / 108, 1 / 432), abs=1e-16)

    def test_pole_raises(self):
        # class 0 denominator vanishes at l0 = -2 / (n (n + 2))
        with pytest.raises(maps.PoleError):
            maps.recursion(0, 2, dirac(0, -0.25))

    def test_excluded_n(self):
        with pytest.raises(maps.PoleError):
            maps.recursion(0, -1.0, dirac(0, 0.1))
        with pytest.raises(maps.PoleError):
            maps.recursion(1, -2.0, dirac(1, 0.1, 0.0))

    def test_real_n_accepted(self):
        out = maps.recursion(0, 2.5, dirac(0, 0.0))
        assert out.entries == pytest.approx((2.0 / 3.5**2,), rel=1e-15)


class TestRecursionStretch:
    def test_equals_recursion_at_one(self):
        l = dirac(0, 0.1)
        assert maps.recursion_stretch(0, 2, l, 1.0) == maps.recursion(0, 2, l)

    def test_class1_table_value(self):
        out = maps.recursion_stretch(1, 3, dirac(1, 0.0, 0.0), 2.0)
        assert out.entries == pytest.approx((13 / 200, 1 / 4800), abs=1e-16)

    def test_class0_table_value(self):
        out = maps.recursion_stretch(0, 2, dirac(0, 0.0), 2.0)
        assert out.entries == pytest.approx((1 / 9,), abs=1e-16)


class TestReflection:
    def test_class0_value(self):
        out = maps.reflection(0, 2, dirac(0, 0.0))
        assert out.entries == pytest.approx((-2 / 9,), abs=1e-16)

    def test_involution(self):
        from splinequad.props import _safe_dirac

        rng = np.random.default_rng(1)
        for c in (0, 1):
            for _ in range(25):
                l = _safe_dirac(rng, c, 3)
                twice = maps.reflection(c, 3, maps.reflection(c, 3, l))
                assert twice.entries == pytest.approx(l.entries, abs=1e-10)

    def test_roots_mirrored(self):
        l = dirac(0, 0.15)
        r1 = real_roots(q_poly(0, 3, l))
        r2 = real_roots(q_poly(0, 3, maps.reflection(0, 3, l)))
        assert r2 == pytest.approx(list(-r1[::-1]), abs=1e-12)


class TestProjectiveVectors:
    def test_normalization(self):
        j = maps.JacobiCoefficientVector(0, (2.0, -4.0))
        assert j.entries == (-0.5, 1.0)
        again = maps.JacobiCoefficientVector(0, j.entries)
        assert again == j

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            maps.JacobiCoefficientVector(0, (0.0, 0.0))

    def test_f_map_class0_at_zero(self):
        j = maps.f_map(0, 4, dirac(0, 0.0))
        assert j.entries == pytest.approx((1.0, 1.0))

    def test_f_map_class1_at_zero(self):
        j = maps.f_map(1, 2, dirac(1, 0.0, 0.0))
        ref = np.array([6.0 / 28.0, 6.0 / 12.0, 6.0 / 21.0])
        assert j.as_array == pytest.approx(ref / np.max(ref), rel=1e-15)

    def test_f_map_reconstructs_polynomial(self):
        from splinequad.orthopoly import GegenbauerSeries

        rng = np.random.default_rng(2)
        for c in (0, 1):
            for n in (2, 4):
                l = DiracVector(c, tuple(rng.uniform(-0.2, 0.2, c + 1) / (1 + 20 * c)))
                j = maps.f_map(c, n, l)
                coeffs = np.zeros(n + 1)
                for i, v in enumerate(j.entries):
                    coeffs[n - i] = v
                rebuilt = GegenbauerSeries(c + 1.5, tuple(coeffs))
                direct = q_poly(c, n, l)
                xs = np.linspace(-1, 1, 11)
                ratio = direct(0.5) / rebuilt(0.5)
                assert np.allclose(rebuilt(xs) * ratio, direct(xs), rtol=1e-12, atol=1e-12)

    def test_reflect_j(self):
        j = maps.JacobiCoefficientVector(1, (1.0, 0.0, 1.0))
        assert maps.reflect_j(j).entries == (1.0, 0.0, 1.0)
        j = maps.JacobiCoefficientVector(0, (1.0, 1.0))
        assert maps.reflect_j(j).entries == (1.0, -1.0)
        rng = np.random.default_rng(3)
        for c in (0, 1):
            v = maps.JacobiCoefficientVector(c, tuple(rng.uniform(-1, 1, c + 2)))
            assert maps.reflect_j(maps.reflect_j(v)) == v


class TestConnectionJ:
    def test_class0_fixed_point(self):
        j = maps.JacobiCoefficientVector(0, (1.0, 1.0))
        assert maps.connection_j(0, 2, j).entries == pytest.approx((1.0, 1.0))

    def test_involution(self):
        rng = np.random.default_rng(4)
        for c in (0, 1):
            for n in (2, 3, 5):
                for _ in range(10):
                    l = DiracVector(c, tuple(rng.uniform(-0.1, 0.1, c + 1) / (1 + 20 * c)))
                    j = maps.f_map(c, n, l)
                    jj = maps.connection_j(c, n, maps.connection_j(c, n, j))
                    num = np.abs(jj.as_array - j.as_array)
                    assert float(np.max(num)) <= 1e-10

    def test_quadratic_homogeneity(self):
        # raw image coordinates are quadratic forms for class 1
        rng = np.random.default_rng(5)
        e = tuple(rng.uniform(-1, 1, 3))
        raw1 = maps._connection_j_raw(1, 3, np.asarray(e))
        raw2 = maps._connection_j_raw(1, 3, 2.0 * np.asarray(e))
        assert raw2 == pytest.approx(list(4.0 * raw1), rel=1e-13)
        # class 0 is linear
        e0 = tuple(rng.uniform(-1, 1, 2))
        raw1 = maps._connection_j_raw(0, 3, np.asarray(e0))
        raw2 = maps._connection_j_raw(0, 3, 2.0 * np.asarray(e0))
        assert raw2 == pytest.approx(list(2.0 * raw1), rel=1e-13)


class TestCommutingDiagram:
    def test_diagram(self):
        rng = np.random.default_rng(6)
        for c in (0, 1):
            for n in (2, 3, 4, 6):
                count = 0
                while count < 10:
                    l = DiracVector(c, tuple(rng.uniform(-0.2, 0.2, c + 1) / (1 + 20 * c)))
                    try:
                        lhs = maps.f_map(c, n, maps.recursion(c, n, l))
                    except maps.PoleError:
                        continue
                    rhs = maps.connection_j(c, n, maps.reflect_j(maps.f_map(c, n, l)))
                    count += 1
                    assert lhs.as_array == pytest.approx(rhs.as_array, abs=1e-10)


class TestRecursionCoefficients:
    def test_values_at_zero(self):
        z0, z1 = DiracVector.zero(0), DiracVector.zero(1)
        for n in (2, 3, 7):
            assert maps.gamma_scalar(0, n, z0) == (n + 1) ** 2
            assert maps.gamma_scalar(1, n, z1) == (n + 1) * (n + 2)
            assert maps.g1_scalar(n, z1) == 1.0


class TestFixedPoint:
    def test_class0_plain(self):
        fp = maps.fixed_point(0, 2)
        assert fp.entries[0] == pytest.approx(math.sqrt(2.0) / 6.0, abs=1e-12)
        step = maps.recursion(0, 2, fp)
        assert step.entries == pytest.approx(fp.entries, abs=1e-12)

    def test_class0_stretched(self):
        # positive root of 72 l^2 + 9 l - 2 = 0
        fp = maps.fixed_point(0, 2, stretch_factor=2.0)
        expected = (-9.0 + math.sqrt(81.0 + 4 * 72 * 2)) / 144.0
        assert fp.entries[0] == pytest.approx(expected, abs=1e-12)

    def test_class1_rational_component(self):
        for n in (2, 3, 4, 5):
            fp = maps.fixed_point(1, n)
            l1 = 1.0 / (3.0 * n * (n + 1) * (n + 2) * (n + 3))
            assert fp.entries[1] == pytest.approx(l1, abs=1e-12)
            step = maps.recursion(1, n, fp)
            assert max(abs(a - b) for a, b in zip(step.entries, fp.entries)) <= 1e-12

    def test_periodic_rule_from_fixed_point(self):
        # the stationary vector repeats on a uniform knot line, and the
        # defects of any two-interval spline's halves cancel pairwise
        from splinequad import semiclassical as sc

        pp = np.polynomial.polynomial
        rng = np.random.default_rng(7)
        nodes_gl, w_gl = np.polynomial.legendre.leggauss(8)
        for c, n in ((0, 2), (0, 3), (1, 2)):
            fp = maps.fixed_point(c, n)
            roots = real_roots(q_poly(c, n, fp))
            wts = sc.q_weights(c, n, fp, roots)
            wfac_r = [1.0, -1.0]
            wfac_l = [1.0, 1.0]
            for _ in range(10):
                # right half vanishes to order c at +1, left half at -1,
                # and derivatives up to order c agree at the shared knot
                g_r = rng.uniform(-1, 1, 2 * n)
                for _k in range(c + 1):
                    g_r = pp.polymul(g_r, wfac_r)
                g_l = rng.uniform(-1, 1, 2 * n)
                for _k in range(c + 1):
                    g_l = pp.polymul(g_l, wfac_l)
                if c == 0:
                    g_l = g_l * (pp.polyval(-1.0, g_r) / pp.polyval(1.0, g_l))
                else:
                    # match value and slope at the knot with a linear blend
                    a = rng.uniform(-1, 1, 2 * n)
                    b = rng.uniform(-1, 1, 2 * n)
                    ga = pp.polymul(pp.polymul(a, wfac_l), wfac_l)
                    gb = pp.polymul(pp.polymul(b, wfac_l), wfac_l)
                    m = np.array([
                        [pp.polyval(1.0, ga), pp.polyval(1.0, gb)],
                        [pp.polyval(1.0, pp.polyder(ga)), pp.polyval(1.0, pp.polyder(gb))],
                    ])
                    rhs = np.array([pp.polyval(-1.0, g_r),
                                    pp.polyval(-1.0, pp.polyder(g_r))])
                    try:
                        x = np.linalg.solve(m, rhs)
                    except np.linalg.LinAlgError:
                        continue
                    size = max(pp.polymul(ga, [1.0]).size, gb.size)
                    g_l = np.zeros(size)
                    g_l[: ga.size] += x[0] * ga
                    g_l[: gb.size] += x[1] * gb
                total = float(wts @ pp.polyval(roots, g_r)) - float(
                    w_gl @ pp.polyval(nodes_gl, g_r))
                total += float(wts @ pp.polyval(roots, g_l)) - float(
                    w_gl @ pp.polyval(nodes_gl, g_l))
                assert abs(total) <= 1e-10 * (1.0 + float(np.sum(np.abs(wts))))
