"""Pseudo-Kahler machinery: Levi-Civita, Kahler flags, mobility, families."""

from fractions import Fraction

import pytest

from cprojver.catalog import builtin
from cprojver.metric import (
    covariant_derivative_02,
    equivalent_metric_family,
    gram_signature_at,
    kahler_check,
    levi_civita,
    metric_inverse,
    mobility_dimension,
    mobility_equation_holds,
    origin_point,
    parallel_complex_indices,
    parallel_forms,
)
from cprojver.scalars import GaussQ
from cprojver.symsolve import AnsatzSpace
from cprojver import tensorcalc as tc
from cprojver.tensorcalc import Tensor


@pytest.fixture(scope="module")
def submax2():
    return builtin("submax-metric", 2)


@pytest.fixture(scope="module")
def submax3():
    return builtin("submax-metric", 3)


class TestLeviCivita:
    def test_flat(self):
        spec = builtin("flat", 2)
        assert levi_civita(spec.metric).is_zero()

    @pytest.mark.parametrize("n,signs", [(2, None), (3, None), (3, (-1,))])
    def test_submax_equals_type2_connection(self, n, signs):
        spec = builtin("submax-metric", n, signs=signs)
        lc = levi_civita(spec.metric)
        assert lc == builtin("type2", n).gamma

    def test_characterization_oracle(self, submax2):
        # torsion-free и metric-parallel characterize the connection uniquely
        lc = levi_civita(submax2.metric)
        assert tc.torsion(lc).is_zero()
        assert covariant_derivative_02(lc, submax2.metric).is_zero()

    def test_fubini_study_denominators(self):
        spec = builtin("cp1xc", 2)
        lc = levi_civita(spec.metric)
        assert any(any(p.den) for p in lc.comps.values())
        assert tc.torsion(lc).is_zero()
        assert covariant_derivative_02(lc, spec.metric).is_zero()

    def test_inverse_failure_advice(self):
        # a degenerate symmetric tensor cannot be inverted over the ring
        spec = builtin("flat", 2)
        bad = Tensor(spec.chart, (0, 2), {(0, 0): spec.chart.var("x1")})
        with pytest.raises(Exception) as ei:
            metric_inverse(bad)
        assert "denominator" in str(ei.value)


class TestKahlerFlags:
    def test_submax(self, submax2):
        assert kahler_check(submax2.metric, submax2.J).all_pass()

    def test_flat(self):
        spec = builtin("flat", 2)
        assert kahler_check(spec.metric, spec.J).all_pass()

    def test_perturbed_metric_fails_hermitian(self, submax2):
        comps = dict(submax2.metric.comps)
        # drop the conjugate pairing of the |z1|^2 block
        comps[(1, 1)] = submax2.chart.const(1)
        bad = Tensor(submax2.chart, (0, 2), comps)
        flags = kahler_check(bad, submax2.J, levi_civita(submax2.metric))
        assert not flags.hermitian


class TestMobility:
    def test_submax_n2(self, submax2):
        mob = mobility_dimension(submax2)
        assert mob.dim == 2
        assert mob.identity_included and mob.stabilized

    def test_submax_n3_all_signs(self):
        for signs in [(1,), (-1,)]:
            spec = builtin("submax-metric", 3, signs=signs)
            mob = mobility_dimension(spec, stabilize=False)
            assert mob.dim == 5

    def test_flat_n2(self):
        spec = builtin("flat", 2)
        mob = mobility_dimension(spec)
        assert mob.dim == 9
        assert mob.identity_included and mob.stabilized

    def test_solutions_verified(self, submax2):
        mob = mobility_dimension(submax2, stabilize=False)
        for B in mob.basis:
            assert mobility_equation_holds(submax2, B)

    def test_unconstrained_dimension_reported(self, submax2):
        mob = mobility_dimension(submax2, stabilize=False)
        assert mob.dim_unconstrained >= mob.dim

    def test_solution_records_carry_trace_and_gradient(self, submax2):
        # g(grad, .) = d theta, exactly, for every solution record
        mob = mobility_dimension(submax2, stabilize=False)
        assert len(mob.records) == mob.dim
        g = submax2.metric
        for _, lam, grad in mob.records:
            for b in range(submax2.chart.dim):
                lower = submax2.chart.zero()
                for i, v in grad.items():
                    p = g.comps.get((i, b))
                    if p is not None:
                        lower = lower + v * p
                lb = lam.get(b)
                want = lb if lb is not None else submax2.chart.zero()
                assert (lower - want).is_zero()


class TestParallelForms:
    def test_submax_n2(self, submax2):
        pf = parallel_forms(submax2)
        assert len(pf) == 2
        dirs = {k[0] for b in pf for k in b.comps}
        assert dirs == {0, 1}  # the first complex direction, re and im

    def test_submax_n3(self, submax3):
        pf = parallel_forms(submax3)
        assert len(pf) == 4
        dirs = {k[0] for b in pf for k in b.comps}
        assert dirs == {0, 1, 4, 5}

    def test_flat_constants(self):
        spec = builtin("flat", 2)
        pf = parallel_forms(spec)
        assert len(pf) == 4
        for b in pf:
            for p in b.comps.values():
                assert p.is_constant()

    def test_second_direction_form_not_parallel(self, submax2):
        # the form dual to the second complex direction fails nabla alpha = 0
        lc = levi_civita(submax2.metric)
        alpha = {(2,): submax2.chart.const(1)}
        bad = False
        for (c, b, k), p in lc.comps.items():
            if c == 2 and not p.is_zero():
                bad = True
        assert bad


class TestFamily:
    def test_zero_parameters_give_base_metric(self, submax2):
        ghat, A, B = equivalent_metric_family(submax2, {})
        assert ghat == submax2.metric
        ratio = B.proportional_to(submax2.metric)
        assert ratio == GaussQ(1)

    def test_members_solve_mobility(self, submax2):
        for c in (GaussQ(1), GaussQ(-3), GaussQ(Fraction(2, 5))):
            ghat, A, B = equivalent_metric_family(submax2, {(1, 1): c})
            assert mobility_equation_holds(submax2, B)

    def test_n3_offdiagonal_member(self, submax3):
        ghat, A, B = equivalent_metric_family(submax3, {(1, 3): GaussQ(1, 2)})
        assert mobility_equation_holds(submax3, B)

    def test_parameter_count_matches_mobility(self, submax3):
        par = parallel_complex_indices(3)
        count = len(par) ** 2 + 1
        assert count == 5 == mobility_dimension(submax3, stabilize=False).dim

    def test_family_shares_levi_civita(self, submax2):
        ghat, _, _ = equivalent_metric_family(submax2, {(1, 1): GaussQ(7)})
        assert levi_civita(ghat) == levi_civita(submax2.metric)

    def test_nonparallel_direction_rejected(self, submax2):
        with pytest.raises(ValueError):
            equivalent_metric_family(submax2, {(2, 2): GaussQ(1)})

    def test_family_never_riemannian(self, submax2):
        pt = origin_point(submax2.chart)
        for c in (GaussQ(0), GaussQ(5), GaussQ(-5)):
            ghat, _, _ = equivalent_metric_family(submax2, {(1, 1): c})
            pos, neg, zero = gram_signature_at(ghat, pt)
            assert zero == 0 and pos > 0 and neg > 0


class TestFullIsometries:
    def test_full_isometry_algebra_is_eight_dimensional(self, submax2):
        # without the holomorphy constraint the Killing algebra grows from 6
        # to 8 (two non-holomorphic generators with cubic coefficients),
        # matching the printed semidirect-product presentation
        from cprojver.symsolve import killing_system

        full = killing_system(
            submax2,
            AnsatzSpace(submax2.chart, total_degree=3),
            holomorphic=False,
        )
        assert full.dim == 8
        assert full.stabilized and full.verified
        holo = killing_system(
            submax2, AnsatzSpace(submax2.chart, total_degree=3), stabilize=False
        )
        assert holo.dim == 6

    def test_full_isometry_algebra_matches_printed_presentation(self, submax2):
        # transitive (isotropy dimension 4) with perfect derived algebra,
        # like the printed sl(2,R) semidirect sum
        from fractions import Fraction

        from cprojver.algebras import builtin_algebra
        from cprojver.linalg import ExactMatrix, SpanSolver
        from cprojver.symsolve import (
            bracket_fields,
            field_coordinates,
            killing_system,
        )

        full = killing_system(
            submax2,
            AnsatzSpace(submax2.chart, total_degree=3),
            stabilize=False,
            holomorphic=False,
        )
        pt = {n: Fraction(0) for n in submax2.chart.table.names}
        rows = [
            [
                (f[i].evaluate(pt) if i in f else GaussQ(0))
                for i in range(submax2.chart.dim)
            ]
            for f in full.basis
        ]
        assert ExactMatrix(rows).rank() == submax2.chart.dim
        span = SpanSolver()
        for i in range(len(full.basis)):
            for j in range(i + 1, len(full.basis)):
                br = bracket_fields(submax2.chart, full.basis[i], full.basis[j])
                if br:
                    span.insert(field_coordinates(br))
        assert span.dim() == 8  # perfect, so not solvable
        assert builtin_algebra("s-double-prime").derived_series() == (8, 8)


class TestTransitivity:
    @pytest.mark.parametrize(
        "name,n,point",
        [
            ("type2", 2, {"x1": 0, "x2": 0, "x3": 0, "x4": 0}),
            ("type1-n2", 2, {"x1": 1, "x2": 0, "x3": 0, "x4": 0}),
            ("type3-n2", 2, {"x": 0, "y": 0, "s": 1, "q": 0}),
            ("nonminimal", 2, {"x1": 0, "x2": 0, "x3": 0, "x4": 0}),
        ],
    )
    def test_submaximal_models_act_transitively(self, name, n, point):
        from fractions import Fraction

        from cprojver.catalog import model_ansatz
        from cprojver.linalg import ExactMatrix
        from cprojver.symsolve import cproj_system

        spec = builtin(name, n)
        res = cproj_system(spec, model_ansatz(spec), stabilize=False, check_closure=False)
        pt = {k: Fraction(v) for k, v in point.items()}
        rows = [
            [
                (f[i].evaluate(pt) if i in f else GaussQ(0))
                for i in range(spec.chart.dim)
            ]
            for f in res.basis
        ]
        assert ExactMatrix(rows).rank() == spec.chart.dim


class TestSignature:
    @pytest.mark.parametrize("signs", [(1,), (-1,)])
    def test_submax_n3_indefinite(self, signs):
        spec = builtin("submax-metric", 3, signs=signs)
        pos, neg, zero = gram_signature_at(spec.metric, origin_point(spec.chart))
        assert zero == 0 and pos > 0 and neg > 0

    def test_flat_definite(self):
        spec = builtin("flat", 2)
        assert gram_signature_at(spec.metric, origin_point(spec.chart)) == (4, 0, 0)
