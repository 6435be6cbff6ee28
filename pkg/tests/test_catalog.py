"""Model manifests: loading, validation, errors, overrides, symmetry lists."""

import os
import shutil

import pytest

from cprojver.catalog import (
    MODEL_NAMES,
    ManifestError,
    builtin,
    expected_symmetries,
    model_ansatz,
    parse_model_manifest,
)
from cprojver import tensorcalc as tc


class TestLoading:
    @pytest.mark.parametrize(
        "name,n",
        [
            ("flat", 2),
            ("type1", 3),
            ("type1-n2", 2),
            ("type2", 2),
            ("type2", 4),
            ("type3", 3),
            ("type3-n2", 2),
            ("nonminimal", 2),
            ("submax-metric", 3),
            ("cp1xc", 2),
        ],
    )
    def test_builtin_loads(self, name, n):
        spec = builtin(name, n)
        assert spec.n == n
        assert tc.is_almost_complex(spec.J)
        assert spec.gamma is not None
        assert tc.covariant_derivative_J(spec.gamma, spec.J).is_zero()

    def test_incompatible_n(self):
        with pytest.raises(ManifestError):
            builtin("type3", 2)
        with pytest.raises(ManifestError):
            builtin("type1", 2)
        with pytest.raises(ManifestError):
            builtin("type3-n2", 3)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            builtin("mystery")

    def test_deterministic_load(self):
        a = builtin("type2", 3)
        b = builtin("type2", 3)
        assert a.gamma == b.gamma and a.J == b.J
        assert a.expected == b.expected

    def test_every_model_has_tagged_expectations(self):
        for name in MODEL_NAMES:
            spec = builtin(name)
            assert spec.expected, name
            for key, (val, prov) in spec.expected.items():
                assert prov in ("published", "recomputed", "definition"), (name, key)

    def test_signs_validation(self):
        spec = builtin("submax-metric", 3, signs=(-1,))
        assert spec.signs == (-1,)
        with pytest.raises(ManifestError):
            builtin("submax-metric", 3, signs=(1, 1))


class TestManifestErrors:
    def test_missing_header(self):
        with pytest.raises(ManifestError):
            parse_model_manifest("bogus")

    def test_untagged_expectation_refused(self):
        text = (
            "cproj-model v1\nname = t\nnrange = 2\n"
            "[J]\nstandard\n[gamma]\nzero\n[expected]\nsymmetry_dim = 16\n"
        )
        with pytest.raises(ManifestError) as ei:
            parse_model_manifest(text, n=2)
        assert "provenance" in str(ei.value)

    def test_error_carries_line_number(self):
        text = (
            "cproj-model v1\nname = t\nnrange = 2\n"
            "[J]\nstandard\n[gamma]\nG(z9; z1, z1) = 1\n"
        )
        with pytest.raises(ManifestError) as ei:
            parse_model_manifest(text, n=2)
        assert "line 7" in str(ei.value)

    def test_bad_nrange(self):
        with pytest.raises(ManifestError):
            parse_model_manifest("cproj-model v1\nnrange = x\n")


class TestCatalogOverride:
    def test_env_var_override(self, tmp_path, monkeypatch):
        from cprojver.catalog import DATA_DIR, _FILES

        for f in _FILES.values():
            shutil.copy(os.path.join(DATA_DIR, f), tmp_path / f)
        # tamper with the copy to prove the override directory is used
        target = tmp_path / _FILES["type2"]
        text = target.read_text().replace("name = type2", "name = type2-override")
        target.write_text(text)
        monkeypatch.setenv("CPROJ_CATALOG", str(tmp_path))
        spec = builtin("type2", 2)
        assert spec.name == "type2-override"
        original = builtin.__wrapped__ if hasattr(builtin, "__wrapped__") else None
        monkeypatch.delenv("CPROJ_CATALOG")
        assert builtin("type2", 2).name == "type2"


class TestSymmetryLists:
    @pytest.mark.parametrize(
        "name,n",
        [
            ("flat", 2),
            ("flat", 3),
            ("type1", 3),
            ("type1", 4),
            ("type1-n2", 2),
            ("type2", 2),
            ("type2", 4),
            ("type3", 3),
            ("type3", 4),
            ("type3-n2", 2),
            ("nonminimal", 2),
            ("nonminimal", 3),
        ],
    )
    def test_counts_match_expected_dimension(self, name, n):
        spec = builtin(name, n)
        fields = expected_symmetries(name, n)
        assert len(fields) == spec.expect("symmetry_dim")

    def test_fields_linearly_independent(self):
        from cprojver.linalg import SpanSolver
        from cprojver.symsolve import field_coordinates

        fields = expected_symmetries("type3", 3)
        span = SpanSolver()
        for _, f in fields:
            assert span.insert(field_coordinates(f))

    def test_no_list_for_metric_models(self):
        with pytest.raises(KeyError):
            expected_symmetries("cp1xc", 2)


class TestAnsatz:
    def test_model_ansatz_respects_recorded_degrees(self):
        spec = builtin("type3-n2", 2)
        ans = model_ansatz(spec)
        smin = min(e[spec.chart.table.index("s")] for e in ans.monomials)
        qmax = max(e[spec.chart.table.index("q")] for e in ans.monomials)
        assert smin == -4 and qmax == 3

    def test_total_degree_default(self):
        spec = builtin("type2", 2)
        ans = model_ansatz(spec)
        assert max(sum(e) for e in ans.monomials) == 2
