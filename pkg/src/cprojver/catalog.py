"""Built-in model manifests and their text format.

Manifest grammar (``#`` comments; sections in brackets)::

    cproj-model v1
    name = type2
    nrange = 2 ..          # or "= 3" exactly, or "= 2 .. 6"

    [chart]
    vars = auto            # x1 .. x_{2n}, or an explicit list
    laurent = s            # optional
    denom D1 = 1+x1^2+x2^2 # optional, may repeat
    zdenoms = 1            # declare |z_a|^2 denominators for listed a
    subst p = s^2          # optional one-variable substitution at load

    [J]
    standard               # J d_{z a} = i d_{z a}; extra lines add terms
    J(zb3; z1) = z2

    [gamma]                # complex Christoffels, conjugate half implied
    G(z2; z1, z1) = zb1

    [frame]                # alternative presentation: moving frame
    e1 = D(x) ...
    w(2,1; 4) = 1/2*p^-1   # theta^4-coefficient of omega^2_1
    Jframe = 2 -1 4 -3     # J e_1 = e_2, J e_2 = -e_1, ...
    complete = J           # derive nabla e_{Ji} from nabla e_i

    [metric]               # real lower-triangular components
    g(1,1) = x1^2+x2^2
    rest = eps from 3      # remaining diagonal pairs carry the sign pattern

    [expected]             # values may be polynomials in n; tags required
    symmetry_dim = 2*(n^2-n+2) @published

    [expected_curvature]   # golden complex tensors ((k,l) antisymmetrized)
    R(z2; z1, z1, zb1) = 1
    scalar_ok = true
    [expected_torsion]
    [expected_nijenhuis]
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .parse import ParseError, parse_field, parse_poly
from .poly import PolyError, VarTable
from .scalars import GaussQ
from .tensorcalc import (
    Chart,
    Tensor,
    complex_table,
    complex_tensor_to_real,
    frame_to_coordinates,
    standard_J,
    substitute_chart_power,
    zero_tensor,
)

DATA_DIR = os.path.join(os.path.dirname(__file__), "catalog_data")

MODEL_NAMES = (
    "flat",
    "type1",
    "type1-n2",
    "type2",
    "type3",
    "type3-n2",
    "nonminimal",
    "submax-metric",
    "cp1xc",
)

_FILES = {
    "flat": "flat.model",
    "type1": "type1.model",
    "type1-n2": "type1_n2.model",
    "type2": "type2.model",
    "type3": "type3.model",
    "type3-n2": "type3_n2.model",
    "nonminimal": "nonminimal.model",
    "submax-metric": "submax_metric.model",
    "cp1xc": "cp1xc.model",
}


def data_dir():
    return os.environ.get("CPROJ_CATALOG", DATA_DIR)


@dataclass
class ModelSpec:
    name: str
    n: int
    chart: Chart
    J: Tensor
    gamma: Tensor = None
    metric: Tensor = None
    signs: tuple = ()
    expected: dict = field(default_factory=dict)  # key -> (value, provenance)
    golden: dict = field(default_factory=dict)  # kind -> (Tensor, scalar_ok)
    degrees: dict = field(default_factory=dict)
    source: str = ""

    def expect(self, key, default=None):
        if key in self.expected:
            return self.expected[key][0]
        return default


class ManifestError(ParseError):
    pass


_IDX = re.compile(r"(\w+)\s*\(\s*([^)]*)\)\s*$")


def _split_head(line, ln):
    if "=" not in line:
        raise ManifestError(f"expected 'key = value' in {line!r}", ln, 1)
    head, val = (t.strip() for t in line.split("=", 1))
    return head, val


def _parse_cindex(tok, n, ln):
    tok = tok.strip()
    m = re.fullmatch(r"(z|zb)(\d+)", tok)
    if not m:
        raise ManifestError(f"bad complex index {tok!r}", ln, 1)
    a = int(m.group(2)) - 1
    if not (0 <= a < n):
        raise ManifestError(f"complex index {tok!r} out of range for n", ln, 1)
    return a + (n if m.group(1) == "zb" else 0)


def _tensor_entry(head, val, n, ztab, ln):
    m = _IDX.match(head)
    if not m:
        raise ManifestError(f"bad tensor entry {head!r}", ln, 1)
    parts = m.group(2).split(";")
    if len(parts) != 2:
        raise ManifestError("tensor entry needs 'upper; lower' indices", ln, 1)
    up = [_parse_cindex(t, n, ln) for t in parts[0].split(",") if t.strip()]
    lo = [_parse_cindex(t, n, ln) for t in parts[1].split(",") if t.strip()]
    poly = parse_poly(val, ztab, line=ln)
    return tuple(up + lo), poly


def parse_model_manifest(text, n=None, signs=None, name_hint=""):
    lines = text.splitlines()
    if not lines or lines[0].strip() != "cproj-model v1":
        raise ManifestError("expected header 'cproj-model v1'", 1, 1)
    name = name_hint
    nmin = nmax = None
    section = None
    body = {}
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1]
            body.setdefault(section, [])
            continue
        if section is None:
            head, val = _split_head(s, ln)
            if head == "name":
                name = val
            elif head == "nrange":
                m = re.fullmatch(r"(\d+)(?:\s*\.\.\s*(\d+)?)?", val)
                if not m:
                    raise ManifestError(f"bad nrange {val!r}", ln, 1)
                nmin = int(m.group(1))
                nmax = int(m.group(2)) if m.group(2) else (
                    nmin if ".." not in val else None
                )
            else:
                raise ManifestError(f"unknown key {head!r}", ln, 1)
        else:
            body[section].append((ln, s))
    if nmin is None:
        raise ManifestError("manifest declares no nrange", 1, 1)
    if n is None:
        n = nmin
    if n < nmin or (nmax is not None and n > nmax):
        raise ManifestError(
            f"model {name!r} requires n in [{nmin}, {nmax if nmax else 'inf'}], got {n}"
        )
    return _build_model(name, n, signs, body)


def _build_model(name, n, signs, body):
    # chart ------------------------------------------------------------
    laurent = ()
    denoms = {}
    varnames = None
    subst = None
    zden = []
    for ln, s in body.get("chart", []):
        head, val = _split_head(s, ln)
        if head == "vars":
            varnames = None if val == "auto" else val.split()
        elif head == "laurent":
            laurent = tuple(val.split())
        elif head.startswith("denom "):
            denoms[head[len("denom "):].strip()] = ("poly", val, ln)
        elif head == "zdenoms":
            zden = [int(t) for t in val.split()]
        elif head == "subst":
            raise ManifestError("subst goes on the right: 'subst old = new^k'", ln, 1)
        elif head.startswith("subst "):
            var_old = head[len("subst "):].strip()
            m = re.fullmatch(r"(\w+)\s*\^\s*(\d+)", val)
            if not m:
                raise ManifestError(f"bad substitution {val!r}", ln, 1)
            subst = (var_old, m.group(1), int(m.group(2)))
        else:
            raise ManifestError(f"unknown chart key {head!r}", ln, 1)
    if varnames is None:
        varnames = [f"x{i+1}" for i in range(2 * n)]
    if len(varnames) != 2 * n:
        raise ManifestError(
            f"chart must have 2n = {2*n} coordinates, got {len(varnames)}"
        )
    den_dict = {}
    plain = VarTable(varnames, laurent=laurent)
    for a in zden:
        i, j = 2 * (a - 1), 2 * (a - 1) + 1
        e1 = [0] * len(varnames)
        e2 = [0] * len(varnames)
        e1[i], e2[j] = 2, 2
        den_dict[f"Q{a}"] = {tuple(e1): GaussQ(1), tuple(e2): GaussQ(1)}
    for dname, (_, val, ln) in denoms.items():
        p = parse_poly(val, plain, line=ln)
        if any(p.den):
            raise ManifestError("denominator polynomials must be polynomial", ln, 1)
        den_dict[dname] = dict(p.terms)
    chart = Chart(varnames, laurent=laurent, denominators=den_dict)
    ztab = complex_table(n, laurent_z=tuple(a - 1 for a in zden))

    # J ------------------------------------------------------------------
    jsec = body.get("J", [])
    J = None
    jcomps = {}
    use_standard = False
    for ln, s in jsec:
        if s == "standard":
            use_standard = True
            continue
        head, val = _split_head(s, ln)
        idx, poly = _tensor_entry(head, val, n, ztab, ln)
        if len(idx) != 2:
            raise ManifestError("J entries take one upper, one lower index", ln, 1)
        jcomps[idx] = poly
    frame = body.get("frame", [])
    gamma = None
    if frame:
        gamma, J = _build_frame(frame, chart, n)
    else:
        if use_standard:
            J = standard_J(chart)
        if jcomps:
            extra = complex_tensor_to_real(chart, (1, 1), jcomps)
            J = extra if J is None else J + extra
        if J is None:
            raise ManifestError("manifest declares no complex structure")

    # gamma -----------------------------------------------------------------
    if "gamma" in body and gamma is None:
        gcomps = {}
        for ln, s in body["gamma"]:
            if s == "zero":
                continue
            head, val = _split_head(s, ln)
            idx, poly = _tensor_entry(head, val, n, ztab, ln)
            if len(idx) != 3:
                raise ManifestError("gamma entries take (upper; lower, lower)", ln, 1)
            if idx in gcomps:
                raise ManifestError("duplicate gamma entry", ln, 1)
            gcomps[idx] = poly
        gamma = (
            complex_tensor_to_real(chart, (1, 2), gcomps)
            if gcomps
            else zero_tensor(chart, (1, 2))
        )
    if gamma is None and not body.get("metric"):
        gamma = zero_tensor(chart, (1, 2))

    # metric --------------------------------------------------------------------
    metric = None
    used_signs = tuple(signs) if signs else ()
    msec = body.get("metric", [])
    if msec:
        mcomps = {}
        rest = None
        for ln, s in msec:
            head, val = _split_head(s, ln)
            if head == "rest":
                m = re.fullmatch(r"(eps|one)\s+from\s+(\d+)", val)
                if not m:
                    raise ManifestError(f"bad rest clause {val!r}", ln, 1)
                rest = (m.group(1), int(m.group(2)))
                continue
            m = re.fullmatch(r"g\(\s*(\d+)\s*,\s*(\d+)\s*\)", head)
            if not m:
                raise ManifestError(f"bad metric entry {head!r}", ln, 1)
            a, b = int(m.group(1)) - 1, int(m.group(2)) - 1
            p = parse_poly(val, chart.table, line=ln)
            mcomps[(a, b)] = p
            if a != b:
                mcomps[(b, a)] = p
        if rest:
            kind, start = rest
            if kind == "eps":
                if not used_signs:
                    used_signs = tuple(1 for _ in range(start, n + 1))
                if len(used_signs) != n + 1 - start:
                    raise ManifestError(
                        f"sign pattern needs {n + 1 - start} entries, got {len(used_signs)}"
                    )
            for k in range(start, n + 1):
                eps = used_signs[k - start] if kind == "eps" else 1
                for r in (2 * k - 2, 2 * k - 1):
                    mcomps[(r, r)] = chart.const(eps)
        metric = Tensor(chart, (0, 2), mcomps)

    if gamma is None and metric is not None:
        from .metric import levi_civita

        gamma = levi_civita(metric)

    # substitution ------------------------------------------------------------------
    if subst is not None:
        var_old, var_new, power = subst
        new_names = [var_new if v == var_old else v for v in varnames]
        new_lau = tuple(var_new if v == var_old else v for v in laurent)
        new_chart = Chart(new_names, laurent=new_lau, denominators=den_dict or None)
        gamma, J = substitute_chart_power(
            chart, new_chart, var_old, var_new, power, gamma=gamma, J=J
        )
        if metric is not None:
            metric = substitute_chart_power(
                chart, new_chart, var_old, var_new, power, g=metric
            )
        chart = new_chart

    # expected ------------------------------------------------------------------------
    ntab = VarTable(["n"])
    expected = {}
    degrees = {}
    for ln, s in body.get("expected", []):
        head, val = _split_head(s, ln)
        prov = None
        if "@" in val:
            val, prov = (t.strip() for t in val.rsplit("@", 1))
        if head in ("degree", "stab_extra"):
            degrees[head] = int(val)
            continue
        if head == "laurent_window":
            lo, hi = val.split()
            degrees[head] = (int(lo), int(hi))
            continue
        if head == "bounds":
            toks = val.split()
            degrees[head] = {
                toks[i]: (int(toks[i + 1]), int(toks[i + 2]))
                for i in range(0, len(toks), 3)
            }
            continue
        if prov is None:
            raise ManifestError(
                f"expected value {head!r} carries no provenance tag", ln, 1
            )
        if val in ("true", "false"):
            parsed = val == "true"
        elif re.fullmatch(r"\(\d,\d\)(\+\(\d,\d\))?", val):
            parsed = val
        else:
            parsed = int(
                parse_poly(val, ntab, line=ln).evaluate({"n": Fraction(n)}).re
            )
        expected[head] = (parsed, prov)

    golden = {}
    for kind, valence, formslots in (
        ("expected_curvature", (1, 3), (2, 3)),
        ("expected_torsion", (1, 2), (1, 2)),
        ("expected_nijenhuis", (1, 2), (1, 2)),
    ):
        sec = body.get(kind, [])
        if not sec:
            continue
        comps = {}
        scalar_ok = False
        for ln, s in sec:
            head, val = _split_head(s, ln)
            if head == "scalar_ok":
                scalar_ok = val == "true"
                continue
            idx, poly = _tensor_entry(head, val, n, ztab, ln)
            if len(idx) != sum(valence):
                raise ManifestError(f"{kind} entry has wrong index count", ln, 1)
            comps[idx] = poly
            a, b = formslots
            swapped = list(idx)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            comps[tuple(swapped)] = -poly
        golden[kind] = (
            complex_tensor_to_real(chart, valence, comps),
            scalar_ok,
        )

    return ModelSpec(
        name=name,
        n=n,
        chart=chart,
        J=J,
        gamma=gamma,
        metric=metric,
        signs=used_signs,
        expected=expected,
        golden=golden,
        degrees=degrees,
    )


def _build_frame(frame_lines, chart, n):
    d = chart.dim
    cols = {}
    omega = {}
    jframe_spec = None
    complete = None
    for ln, s in frame_lines:
        head, val = _split_head(s, ln)
        if re.fullmatch(r"e\d+", head):
            i = int(head[1:]) - 1
            f = parse_field(val, chart.table, line=ln)
            cols[i] = {chart.table.index(k): v for k, v in f.items()}
        elif head.startswith("w("):
            m = re.fullmatch(r"w\(\s*(\d+)\s*,\s*(\d+)\s*;\s*(\d+)\s*\)", head)
            if not m:
                raise ManifestError(f"bad connection form entry {head!r}", ln, 1)
            j, i, k = (int(t) - 1 for t in m.groups())
            omega[(j, i, k)] = parse_poly(val, chart.table, line=ln)
        elif head == "Jframe":
            jframe_spec = [int(t) for t in val.split()]
        elif head == "complete":
            complete = val
        else:
            raise ManifestError(f"unknown frame key {head!r}", ln, 1)
    if len(cols) != d or jframe_spec is None:
        raise ManifestError("frame section must define every e_i and Jframe")
    jf = {}
    for i, tgt in enumerate(jframe_spec):
        jf[(abs(tgt) - 1, i)] = chart.const(1 if tgt > 0 else -1)
    if complete == "J":
        src_cols = sorted({i for (_, i, _) in omega})
        for i, tgt in enumerate(jframe_spec):
            if tgt > 0 and i in src_cols:
                dst = tgt - 1
                for (j, i2, k), w in list(omega.items()):
                    if i2 != i:
                        continue
                    for (m2, j2), jw in jf.items():
                        if j2 != j:
                            continue
                        key = (m2, dst, k)
                        cur = omega.get(key)
                        term = w * jw
                        omega[key] = term if cur is None else cur + term
    gamma, J = frame_to_coordinates(chart, cols, omega, jf)
    return gamma, J


def builtin(name, n=None, signs=None) -> ModelSpec:
    if name not in _FILES:
        raise KeyError(f"unknown model {name!r}; available: {sorted(_FILES)}")
    path = os.path.join(data_dir(), _FILES[name])
    with open(path, "r", encoding="ascii") as fh:
        spec = parse_model_manifest(fh.read(), n=n, signs=signs, name_hint=name)
    spec.source = path
    return spec


def model_ansatz(spec: ModelSpec):
    """The model's recorded acceptance ansatz space."""
    from .symsolve import AnsatzSpace

    deg = spec.degrees.get("degree", 2)
    lw = spec.degrees.get("laurent_window")
    extra_bounds = spec.degrees.get("bounds")
    if lw is None and extra_bounds is None:
        return AnsatzSpace(spec.chart, total_degree=deg)
    bounds = {}
    t = spec.chart.table
    for name, lau in zip(t.names, t.laurent):
        if extra_bounds and name in extra_bounds:
            bounds[name] = extra_bounds[name]
        elif lau and lw is not None:
            bounds[name] = lw
        else:
            bounds[name] = (0, deg)
    return AnsatzSpace(spec.chart, bounds=bounds)


# -- printed symmetry generators -------------------------------------------------


def expected_symmetries(name, n):
    """The published generator list, as real vector fields on the chart.

    Complex-valued generators contribute a (real part, imaginary part) pair.
    Returns a list of (label, field dict direction-index -> LaurentPoly).
    """
    spec = builtin(name, n)
    chart = spec.chart
    ztab = complex_table(n)

    def C(label, text):
        out = []
        f = parse_field(text, ztab)
        comps = {_parse_cindex(k, n, 0): v for k, v in f.items()}
        for tag, scaled in (("re", comps), ("im", _scale_field(comps, GaussQ(0, 1)))):
            out.append((f"{label}.{tag}", _realify_field(scaled, chart, n)))
        return out

    def R(label, text):
        f = parse_field(text, chart.table)
        return [(label, {chart.table.index(k): v for k, v in f.items()})]

    fields = []
    if name == "flat":
        for a in range(1, n + 1):
            fields += C(f"t{a}", f"D(z{a})")
            for b in range(1, n + 1):
                fields += C(f"l{a}{b}", f"z{a}*D(z{b})")
            fields += C(f"q{a}", f"z{a}*(" + "+".join(
                f"z{c}*D(z{c})" for c in range(1, n + 1)) + ")")
    elif name == "type1":
        for a in range(1, n + 1):
            if a != 2:
                fields += C(f"t{a}", f"D(z{a})")
        for i in range(2, n + 1):
            for j in range(1, n + 1):
                if j not in (2, 3):
                    fields += C(f"l{i}{j}", f"z{i}*D(z{j})")
        fields += C("e1", "2*z1*D(z1)+z2*D(z2)")
        fields += C("e2", "z1*D(z1)+z3*D(z3)")
        fields += C("c1", "z2*z3*D(z1)-D(z2)")
        fields += C("c2", "z2^3*D(z1)-3*z2*D(z3)")
    elif name == "type1-n2":
        fields += C("t2", "D(z2)")
        fields += C("e", "z1*D(z1)+z2*D(z2)")
        fields += C("c", "z1*z2*D(z1)+1/2*z2^2*D(z2)")
    elif name == "type2":
        for a in range(2, n + 1):
            fields += C(f"t{a}", f"D(z{a})")
        for i in range(1, n + 1):
            for j in range(2, n + 1):
                if i != 2:
                    fields += C(f"l{i}{j}", f"z{i}*D(z{j})")
        fields += C("e", "z1*D(z1)+2*z2*D(z2)+zb2*D(zb2)")
        fields += C("x", "D(z1)-1/2*zb1^2*D(zb2)")
    elif name == "type3":
        for a in range(1, n + 1):
            if a != 2:
                fields += C(f"t{a}", f"D(z{a})")
        for i in range(1, n + 1):
            for j in range(3, n + 1):
                if i != 3:
                    fields += C(f"l{i}{j}", f"z{i}*D(z{j})")
        fields += C("e1", "z1*D(z1)+zb3*D(zb3)")
        fields += C("e2", "z2*D(z2)+zb3*D(zb3)")
        fields += C("c1", "D(z2)-1/2*I*z1*(D(z3)+D(zb3))")
        fields += C("c2", "z1*D(z2)-1/4*I*z1^2*D(zb3)")
        fields += C("c3", "z2*D(z1)-1/4*I*z2^2*D(zb3)")
    elif name == "type3-n2":
        fields += R("v1", "x*D(x)+y*D(y)")
        fields += R("v2", "s^(-3)*D(y)")
        fields += R("v3", "1/2*s*D(s)+q*D(q)")
        fields += R("v4", "D(q)")
        fields += R("v5", "s^2*y*D(x)-s^2*x*D(y)-q*s*D(s)+(s^4-q^2)*D(q)")
        fields += R("v6", "(s^4+q^2)*s^(-3)*(s^2*D(x)-q*D(y))")
        fields += R("v7", "(s^4+q^2)*1/2*s^(-3)*D(y)+q*s^(-3)*(q*D(y)-s^2*D(x))")
        fields += R("v8", "s^(-3)*(q*D(y)-1/3*s^2*D(x))")
    elif name == "nonminimal":
        for a in range(1, n + 1):
            fields += C(f"t{a}", f"D(z{a})")
        for i in range(1, n + 1):
            for j in range(2, n + 1):
                if i != 2:
                    fields += C(f"l{i}{j}", f"z{i}*D(z{j})")
        fields += C("e", "z1*D(z1)+z2*D(z2)+zb2*D(zb2)")
    else:
        raise KeyError(f"no published symmetry list for {name!r}")
    return fields


def _scale_field(comps, c):
    return {k: v * c for k, v in comps.items()}


def _realify_field(comps, chart, n):
    """Real field of v + conj(v) for a complex field over z/zb directions."""
    from .tensorcalc import _real_poly_from_complex

    out = {}
    for a, p in comps.items():
        rp = _real_poly_from_complex(p, chart)
        barred = a >= n
        base = 2 * (a % n)
        half = GaussQ("1/2")
        ih = GaussQ(0, Fraction(1, 2)) if barred else GaussQ(0, Fraction(-1, 2))
        for r, c in ((base, half), (base + 1, ih)):
            v = rp * c
            s = out.get(r)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(r, None)
            else:
                out[r] = s
    real = {}
    for r, p in out.items():
        q = p + p.conj()
        if not q.is_zero():
            real[r] = q
    # validate: the conjugate part must have produced a real field
    for r, p in real.items():
        if not p.is_real():
            raise PolyError(f"realified field has non-real component: {p}")
    return real
