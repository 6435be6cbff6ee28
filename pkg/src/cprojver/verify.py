"""Check batteries: the full verification runs behind the CLI and the
acceptance suite.  Each battery returns a list of report.Check records."""

from __future__ import annotations

from .catalog import builtin, expected_symmetries, model_ansatz
from .metric import (
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
    tensor_coordinates,
)
from .linalg import SpanSolver
from .prolong import (
    CURV_TYPES,
    annihilator_closed_form,
    bound_closed_form,
    flat_dimension,
    submax_closed_form,
    submax_overall,
    theorem_table,
    upper_bound,
)
from .report import Check
from .scalars import GaussQ
from .symsolve import (
    AnsatzSpace,
    cproj_operator,
    cproj_system,
    affine_system,
    homothety_system,
    killing_system,
    phi_map,
    span_equals,
)
from .structlie import deform_by_cochain
from . import tensorcalc as tc

MODEL_TYPE = {
    "type1": "I",
    "type1-n2": "I",
    "type2": "II",
    "type3": "III",
    "type3-n2": "III",
    "nonminimal": "IV",
    "submax-metric": "II",
}


def _prov(spec, key):
    if key in spec.expected:
        return spec.expected[key][1]
    return "definition"


def model_battery(name, n, signs=None, stabilize=True, spec=None):
    """Tensor + symmetry battery for one catalog model."""
    spec = spec or builtin(name, n, signs=signs)
    name = spec.name if name is None else name
    checks = []
    J, G = spec.J, spec.gamma
    checks.append(
        Check("J.J = -Id", "almost-complex-structure", True, tc.is_almost_complex(J), tc.is_almost_complex(J))
    )
    nj_zero = tc.covariant_derivative_J(G, J).is_zero()
    checks.append(Check("nabla J = 0", "complex-connection", True, nj_zero, nj_zero))
    T = tc.torsion(G)
    R = tc.curvature(G)
    N = tc.nijenhuis(J)
    for key, got in (
        ("torsion_zero", T.is_zero()),
        ("curvature_zero", R.is_zero()),
        ("nijenhuis_zero", N.is_zero()),
    ):
        exp = spec.expect(key)
        if exp is not None:
            checks.append(
                Check(key, "model-tensor-flags", exp, got, exp == got, _prov(spec, key))
            )
    # four-projection completeness and (anti)linearity typing
    parts = {
        (e1, e2): tc.torsion_projection(T, J, e1, e2)
        for e1 in (1, -1)
        for e2 in (1, -1)
    }
    total = parts[(1, 1)] + parts[(1, -1)] + parts[(-1, 1)] + parts[(-1, -1)]
    checks.append(
        Check(
            "torsion projections sum to torsion",
            "torsion-type-decomposition",
            True,
            (total - T).is_zero(),
            (total - T).is_zero(),
        )
    )
    minimal = (T - parts[(-1, -1)]).is_zero()
    exp_min = spec.expect("minimal")
    if exp_min is not None:
        checks.append(
            Check(
                "minimal (torsion equals its totally antilinear part)",
                "minimal-connection",
                exp_min,
                minimal,
                exp_min == minimal,
                _prov(spec, "minimal"),
            )
        )
    if not N.is_zero() and minimal:
        quarter_nj = (T - N.scale(GaussQ("1/4"))).is_zero()
        checks.append(
            Check(
                "torsion = Nijenhuis/4",
                "minimal-connection",
                True,
                quarter_nj,
                quarter_nj,
            )
        )
    k4 = tc.traceless_mixed_torsion(T, J)
    exp_k4 = spec.expect("kappa4_zero")
    if exp_k4 is not None:
        checks.append(
            Check(
                "traceless mixed torsion vanishes",
                "minimality-obstruction",
                exp_k4,
                k4.is_zero(),
                exp_k4 == k4.is_zero(),
                _prov(spec, "kappa4_zero"),
            )
        )
    if name == "nonminimal":
        for (e1, e2), label in (((1, 1), "++"), ((-1, -1), "--")):
            z = parts[(e1, e2)].is_zero()
            checks.append(
                Check(
                    f"torsion {label}-part vanishes",
                    "torsion-type-decomposition",
                    True,
                    z,
                    z,
                    "published",
                )
            )
        mixed = not parts[(-1, 1)].is_zero() and not parts[(1, -1)].is_zero()
        checks.append(
            Check(
                "mixed torsion parts nonzero",
                "torsion-type-decomposition",
                True,
                mixed,
                mixed,
                "published",
            )
        )
    ctype = spec.expect("curvature_type")
    if ctype is not None:
        bid = tc.curvature_bidegree(R, J)
        if ctype == "(1,1)":
            ok = bid["(2,0)+(0,2)"].is_zero() and not bid["(1,1)"].is_zero()
        else:
            ok = bid["(1,1)"].is_zero() and not bid["(2,0)+(0,2)"].is_zero()
        checks.append(
            Check(
                "curvature bidegree type",
                "curvature-bidegree",
                ctype,
                ctype if ok else "other",
                ok,
                _prov(spec, "curvature_type"),
            )
        )
    for kind, computed in (
        ("expected_curvature", R),
        ("expected_torsion", T),
        ("expected_nijenhuis", N),
    ):
        if kind not in spec.golden:
            continue
        gold, scalar_ok = spec.golden[kind]
        if scalar_ok:
            ratio = computed.proportional_to(gold)
            ok = ratio is not None and not ratio.is_zero()
            got = f"ratio {ratio}" if ratio is not None else "no constant ratio"
        else:
            ok = computed == gold
            got = "equal" if ok else "different"
        checks.append(
            Check(
                f"{kind.replace('expected_', '')} matches printed value",
                "printed-tensor",
                "match",
                got,
                ok,
                "published",
            )
        )
    if name == "type3-n2":
        checks.append(
            Check(
                "harmonic (1,1)-curvature component",
                "harmonic-curvature-type",
                "not verifiable (out of scope)",
                "not verifiable (out of scope)",
                True,
                "definition",
                note="normal-connection extraction is outside this artifact",
            )
        )
    return spec, checks


def symmetry_battery(name, n, signs=None, stabilize=True, spec=None, max_degree=None):
    spec = spec or builtin(name, n, signs=signs)
    name = spec.name if name is None else name
    n = spec.n if n is None else n
    checks = []
    if max_degree is not None:
        spec.degrees = dict(spec.degrees)
        spec.degrees["degree"] = max_degree
    ansatz = model_ansatz(spec)
    res = cproj_system(spec, ansatz, stabilize=stabilize)
    exp = spec.expect("symmetry_dim")
    checks.append(
        Check(
            "c-projective symmetry dimension",
            "symmetry-kernel",
            exp,
            res.dim,
            res.dim == exp,
            _prov(spec, "symmetry_dim"),
        )
    )
    if stabilize:
        checks.append(
            Check(
                "kernel dimension stabilized",
                "degree-stabilization",
                True,
                res.stabilized,
                bool(res.stabilized),
            )
        )
    checks.append(
        Check(
            "kernel fields re-verified exactly",
            "post-hoc-verification",
            True,
            res.verified,
            bool(res.verified),
        )
    )
    checks.append(
        Check(
            "kernel closed under bracket",
            "bracket-closure",
            True,
            res.closed_under_bracket,
            bool(res.closed_under_bracket),
        )
    )
    if name == "flat":
        bound, anchor = flat_dimension(n), "flat-dimension"
    elif name == "cp1xc":
        bound, anchor = 2 * n * n - 2 * n + 3, "kahler-bound"
    elif name in MODEL_TYPE:
        bound, anchor = submax_closed_form(MODEL_TYPE[name], n), "algebraic-bound"
    else:
        bound = None
    if bound is not None:
        checks.append(
            Check(
                "kernel equals the published bound (exactness certificate)",
                anchor,
                bound,
                res.dim,
                res.dim == bound,
                "published",
            )
        )
    try:
        fields = expected_symmetries(name, n)
    except KeyError:
        fields = None
    if fields is not None:
        op = cproj_operator(spec)
        bad = [lbl for lbl, f in fields if any(not t.is_zero() for _, t in op(f))]
        checks.append(
            Check(
                "every printed generator satisfies the equations",
                "printed-generators",
                0,
                len(bad),
                not bad,
                "published",
            )
        )
        spans = span_equals(spec.chart, res.basis, [f for _, f in fields])
        checks.append(
            Check(
                "printed generators span the kernel",
                "printed-generators",
                True,
                spans,
                spans,
                "published",
            )
        )
    exp_aff = spec.expect("affine_dim")
    if exp_aff is not None:
        aff = affine_system(spec, ansatz, stabilize=False)
        checks.append(
            Check(
                "affine symmetry dimension",
                "affine-symmetries",
                exp_aff,
                aff.dim,
                aff.dim == exp_aff,
                _prov(spec, "affine_dim"),
            )
        )
    return res, checks


def metric_battery(name, n, signs=None, stabilize=True):
    spec = builtin(name, n, signs=signs)
    checks = []
    g, J = spec.metric, spec.J
    lc = levi_civita(g)
    if name == "submax-metric":
        conn = builtin("type2", n)
        same = lc == conn.gamma
        checks.append(
            Check(
                "Levi-Civita equals the type2 connection",
                "metrizability",
                True,
                same,
                same,
                "published",
            )
        )
    tf = tc.torsion(lc).is_zero()
    checks.append(Check("Levi-Civita is torsion-free", "levi-civita", True, tf, tf))
    from .metric import covariant_derivative_02

    par = covariant_derivative_02(lc, g).is_zero()
    checks.append(Check("metric is parallel", "levi-civita", True, par, par))
    flags = kahler_check(g, J, lc)
    checks.append(
        Check(
            "Kahler flags (hermitian, closed, parallel J, integrable)",
            "kahler-check",
            (True, True, True, True),
            (flags.hermitian, flags.closed, flags.parallel_J, flags.integrable),
            flags.all_pass(),
            "published",
        )
    )
    exp_d = spec.expect("mobility")
    if exp_d is not None:
        mob = mobility_dimension(spec, stabilize=stabilize)
        checks.append(
            Check(
                "degree of mobility",
                "mobility-kernel",
                exp_d,
                mob.dim,
                mob.dim == exp_d,
                _prov(spec, "mobility"),
            )
        )
        checks.append(
            Check(
                "identity solution included",
                "mobility-kernel",
                True,
                mob.identity_included,
                mob.identity_included,
            )
        )
        if stabilize:
            checks.append(
                Check(
                    "mobility kernel stabilized",
                    "degree-stabilization",
                    True,
                    mob.stabilized,
                    bool(mob.stabilized),
                )
            )
        checks.append(
            Check(
                "unconstrained symmetric kernel (reported)",
                "mobility-kernel",
                mob.dim_unconstrained,
                mob.dim_unconstrained,
                True,
                "recomputed",
                note="J-invariance side condition dropped",
            )
        )
    exp_pf = spec.expect("parallel_forms_dim")
    if exp_pf is not None:
        pf = parallel_forms(spec)
        checks.append(
            Check(
                "parallel 1-form space dimension",
                "parallel-forms",
                exp_pf,
                len(pf),
                len(pf) == exp_pf,
                _prov(spec, "parallel_forms_dim"),
            )
        )
        par_idx = parallel_complex_indices(n)
        expected_dirs = set()
        for a in par_idx:
            expected_dirs.add(2 * (a - 1))
            expected_dirs.add(2 * (a - 1) + 1)
        got_dirs = set()
        for b in pf:
            got_dirs.update(k[0] for k in b.comps)
        checks.append(
            Check(
                "parallel forms span the first and the k>=3 complex directions",
                "parallel-forms",
                sorted(expected_dirs),
                sorted(got_dirs),
                got_dirs == expected_dirs,
                "recomputed",
                note="printed list is index-swapped; see corrected family",
            )
        )
        fam_checks = _family_checks(spec, n)
        checks.extend(fam_checks)
    if name == "submax-metric":
        sig = gram_signature_at(g, origin_point(spec.chart))
        non_riem = sig[0] > 0 and sig[1] > 0 and sig[2] == 0
        checks.append(
            Check(
                "signature excludes the Riemannian case",
                "signature",
                "mixed signature",
                f"({sig[0]},{sig[1]})",
                non_riem,
                "published",
            )
        )
        if n == 2:
            iso = killing_system(spec, AnsatzSpace(spec.chart, total_degree=2))
            checks.append(
                Check(
                    "holomorphic isometry dimension",
                    "isometries",
                    6,
                    iso.dim,
                    iso.dim == 6,
                    "published",
                )
            )
            hom = homothety_system(spec, AnsatzSpace(spec.chart, total_degree=2))
            checks.append(
                Check(
                    "homothety dimension",
                    "homotheties",
                    7,
                    hom.dim,
                    hom.dim == 7,
                    "recomputed",
                )
            )
            res = cproj_system(
                spec, model_ansatz(spec), stabilize=False, check_closure=False
            )
            ginv = metric_inverse(g)
            span = SpanSolver()
            ident = tc.Tensor(
                spec.chart,
                (1, 1),
                {(i, i): spec.chart.const(1) for i in range(spec.chart.dim)},
            )
            span.insert(tensor_coordinates(ident))
            base = span.dim()
            for v in res.basis:
                span.insert(tensor_coordinates(phi_map(v, g, ginv)))
            ker = res.dim - (span.dim() - base)
            checks.append(
                Check(
                    "kernel of the mobility projection of the symmetry map",
                    "symmetry-to-mobility",
                    7,
                    ker,
                    ker == 7,
                    "recomputed",
                )
            )
            chain_ok = res.dim <= hom.dim + 2 - 1
            checks.append(
                Check(
                    "dimension chain cp <= homothety + mobility - 1",
                    "symmetry-to-mobility",
                    True,
                    chain_ok,
                    chain_ok,
                    "published",
                )
            )
    return checks


def _family_checks(spec, n):
    checks = []
    par = parallel_complex_indices(n)
    params = [(k, k) for k in par] + [
        (par[i], par[j]) for i in range(len(par)) for j in range(i + 1, len(par))
    ]
    count = len(par) ** 2 + 1  # hermitian parameters + the scaling of g
    exp_d = spec.expect("mobility")
    checks.append(
        Check(
            "family parameter count equals the degree of mobility",
            "equivalent-metrics",
            exp_d,
            count,
            count == exp_d,
            "published",
        )
    )
    trial = {}
    val = 2
    for (k, l) in params[: max(1, len(params))]:
        trial = {(k, l): GaussQ(val) if k == l else GaussQ(val, 1)}
        ghat, A, B = equivalent_metric_family(spec, trial)
        ok = mobility_equation_holds(spec, B)
        checks.append(
            Check(
                f"family member c[{k},{l}] solves the mobility equation",
                "equivalent-metrics",
                True,
                ok,
                ok,
                "recomputed",
            )
        )
        val += 1
    return checks


def table_battery(n_min=2, n_max=6):
    checks = []
    rows = theorem_table(n_min, n_max)
    for row in rows:
        two_routes = all(row.bounds[t] == row.closed[t] for t in CURV_TYPES)
        checks.append(
            Check(
                f"n={row.n}: computed bounds equal closed forms",
                "bound-table",
                {t: row.closed[t] for t in CURV_TYPES},
                {t: row.bounds[t] for t in CURV_TYPES},
                two_routes,
                "published",
            )
        )
        checks.append(
            Check(
                f"n={row.n}: overall submaximal dimension",
                "bound-table",
                submax_overall(row.n),
                row.overall,
                row.overall == submax_overall(row.n),
                "published",
            )
        )
        checks.append(
            Check(
                f"n={row.n}: prolongation rigidity",
                "prolongation-rigidity",
                True,
                row.rigid,
                row.rigid,
                "published",
            )
        )
        for note in row.advisories:
            checks.append(
                Check(
                    f"n={row.n}: advisory",
                    "bound-table",
                    note,
                    note,
                    True,
                    "published",
                    note=note,
                )
            )
    return rows, checks


def prolong_battery(ctype, n):
    from .prolong import (
        DIAGONAL_CONDITIONS,
        diagonal_condition_holds,
        lowest_weight_vector,
    )

    checks = []
    total, pr = upper_bound(ctype, n)
    checks.append(
        Check(
            f"type {ctype}, n={n}: annihilator dimension",
            "annihilator",
            annihilator_closed_form(ctype, n),
            pr.ann_dim,
            pr.ann_dim == annihilator_closed_form(ctype, n),
            "published",
        )
    )
    if n >= 3:
        from .prolong import annihilator as _ann

        _, psi = lowest_weight_vector(ctype, n)
        holds = diagonal_condition_holds(ctype, n, _ann(psi, ctype=ctype))
        checks.append(
            Check(
                f"type {ctype}, n={n}: diagonal condition "
                f"[{DIAGONAL_CONDITIONS[ctype]}]",
                "annihilator",
                True,
                holds,
                holds,
                "published",
            )
        )
    checks.append(
        Check(
            f"type {ctype}, n={n}: degree-one prolongation vanishes",
            "prolongation-rigidity",
            0,
            pr.plus_dim,
            pr.plus_dim == 0,
            "published",
        )
    )
    checks.append(
        Check(
            f"type {ctype}, n={n}: algebraic bound",
            "algebraic-bound",
            bound_closed_form(ctype, n),
            total,
            total == bound_closed_form(ctype, n),
            "published",
        )
    )
    return checks


def algebra_battery(name, lam=None):
    from .algebras import builtin_algebra

    alg = builtin_algebra(name)
    checks = []
    res = alg.jacobi_residual()
    checks.append(
        Check(
            f"{name}: Jacobi identity",
            "jacobi",
            "empty residual",
            "empty residual" if not res else f"{len(res)} nonzero triples",
            not res,
            "published",
        )
    )
    if alg.has_params() and lam is not None and lam != "symbolic":
        from fractions import Fraction

        alg = alg.specialize({alg.params.names[0]: Fraction(lam)})
    if not alg.has_params():
        try:
            dims = alg.derived_series()
            checks.append(
                Check(
                    f"{name}: derived series",
                    "derived-series",
                    dims,
                    dims,
                    True,
                    "recomputed",
                )
            )
        except ValueError:
            pass
        if alg.z2:
            ok, _ = alg.check_z2()
            checks.append(
                Check(f"{name}: Z2 grading", "grading", True, ok, ok, "published")
            )
        if alg.grading:
            okg, wit = alg.check_grading()
            okf, _ = alg.check_filtration()
            checks.append(
                Check(
                    f"{name}: integer grading / filtration",
                    "grading",
                    "see note",
                    f"grading {okg}, filtration {okf}",
                    okf,
                    "published",
                    note=f"violating triple {wit}" if wit else "",
                )
            )
    return checks


def deformation_battery(ctype, n):
    from .prolong import subalgebra_with_cochain
    from .structlie import StructAlgebra

    labels, grades, table, cochain = subalgebra_with_cochain(ctype, n)
    alg = StructAlgebra(labels, table, grading=grades)
    minus = [l for l in labels if l.startswith("v")]
    res = deform_by_cochain(alg, cochain, minus)
    should_close = not (ctype == "III" and n == 2)
    checks = [
        Check(
            f"type {ctype}, n={n}: deformed bracket satisfies Jacobi",
            "cochain-deformation",
            should_close,
            not res.residual,
            (not res.residual) == should_close,
            "published",
        ),
        Check(
            f"type {ctype}, n={n}: residual equals the cyclic cochain square",
            "cochain-deformation",
            True,
            res.matches_prediction,
            res.matches_prediction,
            "published",
        ),
    ]
    return checks
