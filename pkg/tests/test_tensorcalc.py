"""Chart tensor calculus: expansions, projections, frames, Lie derivatives."""

from fractions import Fraction

import pytest

from cprojver.catalog import builtin
from cprojver.parse import parse_poly
from cprojver.poly import PolyError
from cprojver import tensorcalc as tc
from cprojver.tensorcalc import (
    Chart,
    Tensor,
    curvature,
    curvature_bidegree,
    complex_tensor_to_real,
    complex_table,
    frame_roundtrip_check,
    invert_matrix_ring,
    is_almost_complex,
    lie_derivative_connection,
    nijenhuis,
    standard_J,
    substitute_chart_power,
    torsion,
    torsion_projection,
    traceless_mixed_torsion,
)


def chart4():
    return Chart(["x1", "x2", "x3", "x4"])


class TestAlmostComplex:
    def test_standard_J_squares_to_minus_id(self):
        assert is_almost_complex(standard_J(chart4()))

    def test_standard_J_integrable(self):
        assert nijenhuis(standard_J(chart4())).is_zero()

    def test_catalog_models_J(self):
        for name, n in [("type3", 3), ("type3-n2", 2)]:
            spec = builtin(name, n)
            assert is_almost_complex(spec.J)

    def test_type3_real_J_matches_printed_expansion(self):
        # J d1 = d2 + x3 d5 - x4 d6 ; J d2 = -d1 - x4 d5 - x3 d6
        spec = builtin("type3", 3)
        t = spec.chart.table
        x3, x4 = spec.chart.var("x3"), spec.chart.var("x4")
        assert spec.J.get(1, 0) == spec.chart.const(1)
        assert spec.J.get(4, 0) == x3
        assert spec.J.get(5, 0) == -x4
        assert spec.J.get(0, 1) == spec.chart.const(-1)
        assert spec.J.get(4, 1) == -x4
        assert spec.J.get(5, 1) == -x3


class TestRealExpansion:
    def test_type1_real_christoffels_match_printed(self):
        spec = builtin("type1", 3)
        c = spec.chart
        x3, x4 = c.var("x3"), c.var("x4")
        G = spec.gamma
        # printed: G^1_{35} = G^2_{36} = G^2_{45} = -G^1_{46} = x3 (1-based)
        assert G.get(0, 2, 4) == x3
        assert G.get(1, 2, 5) == x3
        assert G.get(1, 3, 4) == x3
        assert G.get(0, 3, 5) == -x3
        # printed: G^2_{35} = -G^1_{36} = -G^1_{45} = -G^2_{46} = x4
        assert G.get(1, 2, 4) == x4
        assert G.get(0, 2, 5) == -x4
        assert G.get(0, 3, 4) == -x4
        assert G.get(1, 3, 5) == -x4
        # symmetric connection
        for (i, j, k), p in G.comps.items():
            assert G.get(i, k, j) == p

    def test_type3_real_christoffels_match_printed(self):
        spec = builtin("type3", 3)
        G = spec.gamma
        mh = spec.chart.const(Fraction(-1, 2))
        # printed: G^6_{31} = G^5_{32} = G^5_{41} = -G^6_{42} = -1/2
        assert G.get(5, 2, 0) == mh
        assert G.get(4, 2, 1) == mh
        assert G.get(4, 3, 0) == mh
        assert G.get(5, 3, 1) == -mh
        # and the transposed orders vanish
        for key in [(5, 0, 2), (4, 1, 2), (4, 0, 3), (5, 1, 3)]:
            assert G.get(*key).is_zero()

    def test_nonreal_ingestion_rejected(self):
        chart = Chart(["x1", "x2"])
        zt = complex_table(1)
        comps = {(0, 0): parse_poly("z1", zt)}
        with pytest.raises(PolyError):
            complex_tensor_to_real(chart, (1, 1), comps, add_conjugate=False)


class TestTorsionProjections:
    @pytest.fixture()
    def nonmin(self):
        spec = builtin("nonminimal", 2)
        return spec, torsion(spec.gamma)

    def test_completeness(self, nonmin):
        spec, T = nonmin
        total = None
        for e1 in (1, -1):
            for e2 in (1, -1):
                p = torsion_projection(T, spec.J, e1, e2)
                total = p if total is None else total + p
        assert (total - T).is_zero()

    def test_idempotent_and_orthogonal(self, nonmin):
        spec, T = nonmin
        parts = {
            (e1, e2): torsion_projection(T, spec.J, e1, e2)
            for e1 in (1, -1)
            for e2 in (1, -1)
        }
        for key, p in parts.items():
            again = torsion_projection(p, spec.J, *key)
            assert (again - p).is_zero()
            for other in parts:
                if other != key:
                    cross = torsion_projection(p, spec.J, *other)
                    assert cross.is_zero()

    def test_linearity_identity(self, nonmin):
        # P(JX, Y) = e1 J P(X, Y) componentwise
        spec, T = nonmin
        for e1 in (1, -1):
            for e2 in (1, -1):
                P = torsion_projection(T, spec.J, e1, e2)
                lhs = tc.pull_J_slot(P, spec.J, 1)
                rhs = tc.apply_J_value(spec.J, P).scale(e1)
                assert (lhs - rhs).is_zero()

    def test_minimality_flags_across_catalog(self):
        for name, n, minimal in [
            ("type1", 3, True),
            ("type2", 2, True),
            ("type3", 3, True),
            ("type3-n2", 2, True),
            ("nonminimal", 2, False),
        ]:
            spec = builtin(name, n)
            T = torsion(spec.gamma)
            mm = torsion_projection(T, spec.J, -1, -1)
            assert (T - mm).is_zero() == minimal

    def test_projection_identities_on_random_tensors(self):
        # defining (anti)linearity on pseudo-random (1,2)-tensors, not just
        # the catalog ones
        import random

        from cprojver.poly import LaurentPoly
        from cprojver.scalars import GaussQ

        rng = random.Random(11)
        chart = chart4()
        J = standard_J(chart)
        for _ in range(5):
            comps = {}
            for _ in range(6):
                key = (rng.randrange(4), rng.randrange(4), rng.randrange(4))
                c = rng.randrange(-5, 6)
                if not c:
                    continue
                e = [0, 0, 0, 0]
                e[rng.randrange(4)] = rng.randrange(3)
                p = LaurentPoly(chart.table, {tuple(e): GaussQ(c)})
                comps[key] = comps.get(key, chart.zero()) + p
            T = Tensor(chart, (1, 2), comps)
            total = None
            for e1 in (1, -1):
                for e2 in (1, -1):
                    P = torsion_projection(T, J, e1, e2)
                    lhs = tc.pull_J_slot(P, J, 1)
                    assert (lhs - tc.apply_J_value(J, P).scale(e1)).is_zero()
                    lhs2 = tc.pull_J_slot(P, J, 2)
                    assert (lhs2 - tc.apply_J_value(J, P).scale(e2)).is_zero()
                    total = P if total is None else total + P
            assert (total - T).is_zero()

    def test_pure_trace_tensor_has_no_traceless_part(self):
        # A(X,Y) = phi(X) Y + phi(JX) JY with phi = dx1
        chart = chart4()
        J = standard_J(chart)
        comps = {}
        one = chart.const(1)
        for k in range(4):
            comps[(k, 0, k)] = one  # phi(X) Y with phi = dx1
        for (i, k), q in J.comps.items():
            for (a, j), p in J.comps.items():
                if a != 0:
                    continue
                key = (i, j, k)
                cur = comps.get(key, chart.zero())
                comps[key] = cur + p * q
        A = Tensor(chart, (1, 2), comps)
        assert traceless_mixed_torsion(A, J).is_zero()


class TestCurvature:
    def test_flat(self):
        spec = builtin("flat", 2)
        assert curvature(spec.gamma).is_zero()
        assert torsion(spec.gamma).is_zero()

    def test_bidegree_parts_sum(self):
        spec = builtin("type2", 3)
        R = curvature(spec.gamma)
        bid = curvature_bidegree(R, spec.J)
        assert (bid["(1,1)"] + bid["(2,0)+(0,2)"] - R).is_zero()

    def test_type1_n2_typing(self):
        spec = builtin("type1-n2", 2)
        R = curvature(spec.gamma)
        assert not R.is_zero()
        bid = curvature_bidegree(R, spec.J)
        assert bid["(1,1)"].is_zero()

    @pytest.mark.parametrize("name,n", [("type1", 3), ("type2", 2), ("type3-n2", 2)])
    def test_bidegree_parts_satisfy_their_invariance(self, name, n):
        # the (1,1)-part is invariant, the rest anti-invariant, under pulling
        # the complex structure through both form slots
        spec = builtin(name, n)
        R = curvature(spec.gamma)
        bid = curvature_bidegree(R, spec.J)
        p11, p20 = bid["(1,1)"], bid["(2,0)+(0,2)"]
        assert (tc.curvature_J_pulled(p11, spec.J) - p11).is_zero()
        assert (tc.curvature_J_pulled(p20, spec.J) + p20).is_zero()


class TestLieDerivative:
    def test_translation_of_constant_connection(self):
        spec = builtin("type3", 3)  # Christoffels constant in x1
        v = {0: spec.chart.const(1)}
        assert lie_derivative_connection(v, spec.gamma).is_zero()

    def test_linear_field_on_flat(self):
        spec = builtin("flat", 2)
        v = {0: spec.chart.var("x1")}
        assert lie_derivative_connection(v, spec.gamma).is_zero()

    def test_quadratic_field_on_flat_is_not_affine(self):
        spec = builtin("flat", 2)
        v = {0: spec.chart.var("x1") * spec.chart.var("x1")}
        assert not lie_derivative_connection(v, spec.gamma).is_zero()


class TestFrames:
    def p_chart(self):
        return Chart(["x", "y", "p", "q"], laurent=("p",))

    def frame_cols(self, c):
        one = c.const(1)
        pinv = parse_poly("p^(-1)", c.table)
        return {
            0: {0: one},
            1: {1: one},
            2: {2: one},
            3: {
                3: one,
                0: parse_poly("-3/2*y*p^(-1)", c.table),
                1: parse_poly("-5/2*x*p^(-1)", c.table),
            },
        }

    def test_coframe_duality(self):
        # the inverse frame matrix reproduces the printed dual coframe
        c = self.p_chart()
        cols = self.frame_cols(c)
        A = [[cols[i].get(r, c.zero()) for i in range(4)] for r in range(4)]
        B = invert_matrix_ring(A, c)
        # theta^1 = dx + (3y/2p) dq, theta^2 = dy + (5x/2p) dq
        assert B[0][0] == c.const(1)
        assert B[0][3] == parse_poly("3/2*y*p^(-1)", c.table)
        assert B[1][3] == parse_poly("5/2*x*p^(-1)", c.table)
        assert B[2][2] == c.const(1) and B[3][3] == c.const(1)
        # duality <theta^i, e_j> = delta_ij
        for i in range(4):
            for j in range(4):
                tot = c.zero()
                for r in range(4):
                    tot = tot + B[i][r] * A[r][j]
                assert tot == (c.const(1) if i == j else c.zero())

    def test_frame_roundtrip_on_catalog_model(self):
        # rebuild the frame data and check the coordinate Christoffels
        # reproduce the frame covariant derivatives exactly
        c = self.p_chart()
        cols = self.frame_cols(c)
        omega = {
            (1, 0, 3): parse_poly("1/2*p^(-1)", c.table),
            (0, 2, 0): parse_poly("-p^(-1)", c.table),
            (1, 2, 1): parse_poly("p^(-1)", c.table),
            (2, 2, 2): parse_poly("-p^(-1)", c.table),
            (3, 2, 3): parse_poly("-p^(-1)", c.table),
            (0, 2, 2): parse_poly("-3/4*x*p^(-2)", c.table),
            (0, 2, 3): parse_poly("-3/4*y*p^(-2)", c.table),
            (1, 2, 2): parse_poly("-3/4*y*p^(-2)", c.table),
            (1, 2, 3): parse_poly("-13/4*x*p^(-2)", c.table),
        }
        jf = {
            (1, 0): c.const(1),
            (0, 1): c.const(-1),
            (3, 2): c.const(1),
            (2, 3): c.const(-1),
        }
        # complete columns 1 and 3 by J-linearity
        for src, dst in ((0, 1), (2, 3)):
            for (j, i, k), w in list(omega.items()):
                if i != src:
                    continue
                for (m, j2), jw in jf.items():
                    if j2 == j:
                        key = (m, dst, k)
                        omega[key] = omega.get(key, c.zero()) + w * jw
        gamma, J = tc.frame_to_coordinates(c, cols, omega, jf)
        assert is_almost_complex(J)
        assert frame_roundtrip_check(c, cols, omega, gamma)
        assert tc.covariant_derivative_J(gamma, J).is_zero()

    def test_substitution_preserves_flatness(self):
        old = Chart(["u", "p"], laurent=("p",))
        new = Chart(["u", "s"], laurent=("s",))
        zero_gamma = Tensor(old, (1, 2), {})
        moved = substitute_chart_power(old, new, "p", "s", 2, gamma=zero_gamma)
        # the substituted connection has the 1/s inhomogeneous entry ...
        assert not moved.is_zero()
        # ... but stays flat and torsion-free
        assert curvature(moved).is_zero()
        assert torsion(moved).is_zero()
