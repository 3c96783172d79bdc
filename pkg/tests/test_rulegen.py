import math

import numpy as np
import pytest

from splinequad import rulegen
from splinequad.rulegen import Partition, generate, march, plan, scale_to_interval


class TestPartition:
    def test_basic(self):
        p = Partition((0.0, 1.0, 3.0))
        assert p.n_subintervals == 2
        assert list(p.lengths) == [1.0, 2.0]
        assert p.span == (0.0, 3.0)
        assert p.subinterval(2) == (1.0, 3.0)

    def test_rejects_non_increasing(self):
        with pytest.raises(ValueError):
            Partition((0.0, 0.0, 1.0))
        with pytest.raises(ValueError):
            Partition((1.0,))


class TestPlan:
    def test_counts_class0(self):
        plans = plan(Partition((0.0, 1.0, 2.0, 3.0, 4.0)), 0, 4, middle_index=3)
        assert [p.node_count for p in plans] == [2, 2, 3, 2]
        assert [p.kind for p in plans] == ["Q", "Q", "M", "Q-reflected"]

    def test_counts_class1(self):
        plans = plan(Partition((0.0, 1.0, 3.0, 7.0, 9.0)), 1, 7, middle_index=3)
        assert [p.node_count for p in plans] == [3, 3, 4, 3]

    def test_half_rule_rejected(self):
        part = Partition((0.0, 1.0, 2.0))
        with pytest.raises(ValueError, match="1/2-rule"):
            plan(part, 0, 5)
        with pytest.raises(ValueError, match="1/2-rule"):
            plan(part, 1, 6)

    def test_unsupported_class(self):
        with pytest.raises(ValueError, match="not implemented"):
            plan(Partition((0.0, 1.0)), 2, 7)

    def test_middle_range(self):
        with pytest.raises(ValueError):
            plan(Partition((0.0, 1.0, 2.0)), 0, 4, middle_index=3)

    def test_default_middle(self):
        assert rulegen.default_middle_index(4) == 2
        assert rulegen.default_middle_index(5) == 3


class TestMarch:
    def test_uniform_class0_chain(self):
        part = Partition((0.0, 1.0, 2.0, 3.0, 4.0))
        plans = march(plan(part, 0, 4, 3), part, 0, 2)
        assert plans[0].dirac_left.entries == (0.0,)
        assert plans[1].dirac_left.entries == pytest.approx((2 / 9,), abs=1e-16)
        assert plans[2].dirac_left.entries == pytest.approx((4 / 17,), abs=1e-16)
        assert plans[2].dirac_right.entries == pytest.approx((2 / 9,), abs=1e-16)
        assert plans[3].dirac_right.entries == (0.0,)
        assert plans[3].dirac_left is None

    def test_stretched_class0_chain(self):
        part = Partition((0.0, 1.0, 3.0, 7.0, 15.0))
        plans = march(plan(part, 0, 4, 4), part, 0, 2)
        assert plans[1].dirac_left.entries == pytest.approx((1 / 9,), abs=1e-16)
        assert plans[2].dirac_left.entries == pytest.approx((3 / 26,), abs=1e-16)
        assert plans[3].dirac_left.entries == pytest.approx((79 / 684,), abs=1e-16)
        assert plans[3].dirac_right.entries == (0.0,)

    def test_right_chain_with_stretch(self):
        part = Partition((0.0, 1.0, 3.0, 7.0, 9.0))
        plans = march(plan(part, 1, 7, 3), part, 1, 3)
        assert plans[3].dirac_right.entries == (0.0, 0.0)
        assert plans[2].dirac_right.entries == pytest.approx((13 / 200, 1 / 4800), abs=1e-16)

    def test_pole_error_names_subinterval(self, monkeypatch):
        from splinequad import maps

        def explode(c, n, l, lam):
            raise maps.PoleError("denominator scalar vanishes")

        monkeypatch.setattr(maps, "recursion_stretch", explode)
        part = Partition((0.0, 1.0, 2.0, 3.0, 4.0))
        with pytest.raises(maps.PoleError, match="subinterval 2"):
            march(plan(part, 0, 4, 3), part, 0, 2)


class TestOmega:
    def test_table_values(self):
        assert rulegen.omega_for_node_at(0, 3, (4 / 17,), (2 / 9,), -1.0) == pytest.approx(
            7 / 5, abs=1e-14)
        assert rulegen.omega_for_node_at(0, 4, (0.0,), (63 / 488,), -1.0) == pytest.approx(
            559 / 433, abs=1e-13)
        assert rulegen.omega_for_node_at(0, 3, (79 / 684,), (0.0,), -1.0) == pytest.approx(
            1.0, abs=1e-14)

    def test_class1_rejects_free_parameter(self):
        with pytest.raises(ValueError):
            generate(Partition((0.0, 1.0, 2.0)), 1, 5, omega_policy="node-left")
        with pytest.raises(ValueError):
            generate(Partition((0.0, 1.0, 2.0)), 1, 5, omega_policy=0.3)


class TestScaleToInterval:
    def test_identity_span(self):
        n, w = scale_to_interval([-1.0, 1.0], [1.0, 1.0], (-1.0, 1.0))
        assert list(n) == [-1.0, 1.0] and list(w) == [1.0, 1.0]

    def test_shift(self):
        n, w = scale_to_interval([-1.0], [4 / 9], (2.0, 3.0))
        assert n[0] == 2.0
        assert w[0] == pytest.approx(2 / 9)

    def test_empty_span_rejected(self):
        with pytest.raises(ValueError):
            scale_to_interval([0.0], [1.0], (1.0, 1.0))


class TestGenerate:
    def test_uniform_class0_rule(self):
        rule = generate(Partition((0.0, 1.0, 2.0, 3.0, 4.0)), 0, 4, middle_index=3)
        s6, s174 = math.sqrt(6.0), math.sqrt(174.0)
        nodes = [2 / 5 - s6 / 10, 2 / 5 + s6 / 10,
                 34 / 25 - s174 / 50, 34 / 25 + s174 / 50,
                 2.0, 66 / 25 - s174 / 50, 66 / 25 + s174 / 50,
                 18 / 5 - s6 / 10, 18 / 5 + s6 / 10]
        weights = [4 / 9 - s6 / 36, 4 / 9 + s6 / 36,
                   76 / 153 - 21 * s174 / 5916, 76 / 153 + 21 * s174 / 5916,
                   4 / 17, 76 / 153 + 7 * s174 / 1972, 76 / 153 - 7 * s174 / 1972,
                   4 / 9 + s6 / 36, 4 / 9 - s6 / 36]
        assert rule.all_nodes == pytest.approx(nodes, abs=1e-12)
        assert rule.all_weights == pytest.approx(weights, abs=1e-12)
        assert rule.omega == pytest.approx(7 / 5, abs=1e-12)
        assert not rule.warnings

    def test_nonuniform_boundary_middle(self):
        rule = generate(Partition((0.0, 1.0, 3.0, 7.0, 15.0)), 0, 4, middle_index=4)
        assert rule.omega == pytest.approx(1.0, abs=1e-12)
        seg = rule.segments[3]
        assert seg.nodes[0] == pytest.approx(7.0, abs=1e-12)
        assert seg.weights[0] == pytest.approx(77 / 57, abs=1e-12)

    def test_weight_sum_matches_length(self):
        for knots, c, d in (
            ((0.0, 1.0, 2.0, 3.0), 0, 2),
            ((0.0, 0.7, 1.1, 2.9, 4.0), 0, 6),
            ((0.0, 1.0, 2.0, 3.0, 4.0, 5.0), 1, 5),
            ((0.0, 1.5, 2.5, 4.5), 1, 3),
        ):
            rule = generate(Partition(knots), c, d)
            length = knots[-1] - knots[0]
            assert rule.weight_sum == pytest.approx(length, rel=1e-10)

    def test_counts_and_sorting(self):
        rule = generate(Partition((0.0, 1.0, 3.0, 7.0, 9.0)), 1, 7, middle_index=3)
        for seg in rule.segments:
            assert seg.nodes.size == seg.plan.node_count
            assert np.all(np.diff(seg.nodes) > 0)

    def test_symmetric_rule(self):
        rule = generate(Partition((0.0, 1.0, 2.0, 3.0, 4.0, 5.0)), 1, 5, middle_index=3)
        nodes, weights = rule.all_nodes, rule.all_weights
        assert nodes == pytest.approx(list(5.0 - nodes[::-1]), abs=1e-10)
        assert weights == pytest.approx(list(weights[::-1]), abs=1e-10)

    @pytest.mark.parametrize("knots,c,d,middle", [
        ((0.0, 1.0, 2.5, 3.0, 4.5), 0, 4, 2),
        ((0.0, 1.0, 3.0, 7.0, 9.0), 1, 7, 3),
    ])
    def test_mirrored_partition_gives_mirrored_rule(self, knots, c, d, middle):
        # with the free parameter off, the construction commutes with the
        # orientation flip of the whole problem
        a, b = knots[0], knots[-1]
        mirrored = tuple(sorted(a + b - k for k in knots))
        s = len(knots) - 1
        rule = generate(Partition(knots), c, d, middle_index=middle, omega_policy="zero")
        mrule = generate(Partition(mirrored), c, d, middle_index=s + 1 - middle,
                         omega_policy="zero")
        assert mrule.all_nodes == pytest.approx(list((a + b) - rule.all_nodes[::-1]),
                                                abs=1e-12)
        assert mrule.all_weights == pytest.approx(list(rule.all_weights[::-1]), abs=1e-12)

    def test_warnings_for_infeasible_middle(self):
        # a class-1 rule with the extra node pinned at the boundary has no
        # real in-span realization; the generator reports, never raises
        rule = generate(Partition((0.0, 1.0, 2.0, 3.0, 4.0)), 1, 5, middle_index=1)
        assert rule.warnings

    def test_single_subinterval(self):
        rule = generate(Partition((0.0, 2.0)), 0, 4, middle_index=1)
        assert rule.segments[0].plan.kind == "M"
        assert rule.all_nodes[0] == pytest.approx(0.0, abs=1e-14)
        assert rule.weight_sum == pytest.approx(2.0, rel=1e-12)

    def test_accepts_raw_knot_sequences(self):
        a = generate((0, 1, 2, 3, 4), 0, 4, middle_index=3)
        b = generate(Partition((0.0, 1.0, 2.0, 3.0, 4.0)), 0, 4, middle_index=3)
        assert np.array_equal(a.all_nodes, b.all_nodes)
        assert np.array_equal(a.all_weights, b.all_weights)

    def test_plan_validates_omega_policy(self):
        part = Partition((0.0, 1.0, 2.0))
        with pytest.raises(ValueError):
            plan(part, 1, 5, omega_policy="node-left")
        with pytest.raises(ValueError):
            plan(part, 0, 4, omega_policy="sideways")

    def test_thread_safety_of_generation(self):
        # pure functions on immutable values: concurrent calls must agree
        from concurrent.futures import ThreadPoolExecutor

        part = Partition((0.0, 1.0, 3.0, 7.0, 9.0))
        with ThreadPoolExecutor(max_workers=8) as pool:
            rules = list(pool.map(lambda _: generate(part, 1, 7, middle_index=3), range(16)))
        ref = rules[0]
        for rule in rules[1:]:
            assert np.array_equal(rule.all_nodes, ref.all_nodes)
            assert np.array_equal(rule.all_weights, ref.all_weights)

    def test_two_interval_exactness_random_splines(self):
        # any spline supported on two adjacent subintervals integrates
        # exactly, which is the defining property of the marching step
        from splinequad import verify

        rng = np.random.default_rng(8)
        rule = generate(Partition((0.0, 1.0, 3.0, 7.0, 9.0)), 1, 7, middle_index=3)
        space = verify.SplineSpace(rule.partition, 7, 1)
        nodes, wts = rule.all_nodes, rule.all_weights
        t = space.partition.knots
        for k in range(1, 4):
            lo, hi = t[k - 1], t[k + 1]
            idx = [i for i in range(space.dimension)
                   if verify.basis_support(space, i)[0] >= lo - 1e-12
                   and verify.basis_support(space, i)[1] <= hi + 1e-12]
            assert idx, "no basis functions confined to the pair"
            for _ in range(50):
                coeffs = rng.uniform(-1, 1, len(idx))
                vals = sum(cc * np.array([verify.bspline_eval(space, i, x) for x in nodes])
                           for cc, i in zip(coeffs, idx))
                exact = sum(cc * verify.bspline_integral(space, i)
                            for cc, i in zip(coeffs, idx))
                assert abs(float(wts @ vals) - exact) <= 1e-10 * (1 + abs(exact))
