"""Coordinate-chart tensor calculus over exact Laurent polynomial rings.

All computation happens in real coordinates.  Complex-notation input (models
printed in z-coordinates, with the conjugate half implied) is expanded at
ingestion through the fixed dictionary z^a = x^{2a-1} + i x^{2a}; results are
validated to be real.

Index conventions (all 0-based internally):

* connection: comp (i, j, k) is the coefficient of d_i in nabla_{d_j} d_k;
* torsion, Nijenhuis: comp (i, j, k) = value^i with arguments (d_j, d_k);
* curvature: comp (i, j, k, l) = coefficient of d_i in R(d_k, d_l) d_j;
* metric: comp (a, b) symmetric; J: comp (i, j) with J d_j = J^i_j d_i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import LaurentPoly, PolyError, VarTable
from .scalars import GaussQ


class Chart:
    """Real coordinates with laurent flags, denominators, complex pairing."""

    def __init__(self, names, laurent=(), denominators=None):
        self.table = VarTable(names, laurent=laurent, denominators=denominators)
        self.dim = len(names)

    def zero(self):
        return LaurentPoly.zero(self.table)

    def const(self, c):
        return LaurentPoly.const(self.table, c)

    def var(self, name):
        return LaurentPoly.var(self.table, name)

    def n_complex(self):
        if self.dim % 2:
            raise PolyError("chart dimension is odd; no complex pairing")
        return self.dim // 2

    def __eq__(self, other):
        return isinstance(other, Chart) and self.table == other.table

    def __repr__(self):
        return f"Chart({' '.join(self.table.names)})"


@dataclass
class Tensor:
    """Sparse exact tensor: components keyed by full index tuples."""

    chart: Chart
    valence: tuple  # (upper, lower)
    comps: dict

    def __post_init__(self):
        self.comps = {k: v for k, v in self.comps.items() if not v.is_zero()}

    def get(self, *idx):
        return self.comps.get(tuple(idx), self.chart.zero())

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        out = dict(self.comps)
        for k, v in other.comps.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Tensor(self.chart, self.valence, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Tensor(self.chart, self.valence, {k: v * c for k, v in self.comps.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.valence == other.valence
            and (self - other).is_zero()
        )

    def proportional_to(self, other):
        """Exact constant ratio self = c*other, or None."""
        if other.is_zero():
            return GaussQ(0) if self.is_zero() else None
        key = next(iter(other.comps))
        num = self.comps.get(key)
        if num is None:
            return None
        if not num.is_constant() and other.comps[key].is_constant():
            return None
        try:
            ratio = num / other.comps[key]
        except PolyError:
            return None
        if not ratio.is_constant():
            return None
        c = ratio.constant_value()
        return c if (other.scale(c) - self).is_zero() else None


def zero_tensor(chart, valence):
    return Tensor(chart, valence, {})


def standard_J(chart) -> Tensor:
    """J d_{2a} = d_{2a+1}, J d_{2a+1} = -d_{2a} (0-based pairs)."""
    n = chart.n_complex()
    comps = {}
    for a in range(n):
        comps[(2 * a + 1, 2 * a)] = chart.const(1)
        comps[(2 * a, 2 * a + 1)] = chart.const(-1)
    return Tensor(chart, (1, 1), comps)


def compose_J(J: Tensor, K: Tensor) -> Tensor:
    chart = J.chart
    out = {}
    for (i, a), p in J.comps.items():
        for (a2, j), q in K.comps.items():
            if a2 != a:
                continue
            key = (i, j)
            s = out.get(key)
            v = p * q
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return Tensor(chart, (1, 1), out)


def is_almost_complex(J: Tensor) -> bool:
    chart = J.chart
    jj = compose_J(J, J)
    ident = Tensor(
        chart, (1, 1), {(i, i): chart.const(-1) for i in range(chart.dim)}
    )
    return jj == ident


def nijenhuis(J: Tensor) -> Tensor:
    chart = J.chart
    d = chart.dim
    names = chart.table.names
    dJ = {}  # (a, i, j) -> d_a J^i_j
    for (i, j), p in J.comps.items():
        for a in range(d):
            q = p.derivative(names[a])
            if not q.is_zero():
                dJ[(a, i, j)] = q
    out = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (a, i, k), q in dJ.items():
        # J^a_j d_a J^i_k  and  - J^a_k d_a J^i_j
        for (a2, j), p in J.comps.items():
            if a2 != a:
                continue
            acc((i, j, k), p * q)
            acc((i, k, j), -(p * q))
    for (i, a), p in J.comps.items():
        # + J^i_a d_k J^a_j - J^i_a d_j J^a_k
        for (k, a2, j), q in dJ.items():
            if a2 != a:
                continue
            acc((i, j, k), p * q)
            acc((i, k, j), -(p * q))
    return Tensor(chart, (1, 2), out)


def torsion(G: Tensor) -> Tensor:
    out = {}
    for (i, j, k), p in G.comps.items():
        for key, v in (((i, j, k), p), ((i, k, j), -p)):
            s = out.get(key)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return Tensor(G.chart, (1, 2), out)


def curvature(G: Tensor) -> Tensor:
    chart = G.chart
    d = chart.dim
    names = chart.table.names
    out = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (i, l, j), p in G.comps.items():
        for k in range(d):
            q = p.derivative(names[k])
            if not q.is_zero():
                acc((i, j, k, l), q)   # d_k G^i_{lj}
                acc((i, j, l, k), -q)  # antisymmetrized
    items = list(G.comps.items())
    by_upper = {}
    for (a, l, j), p in items:
        by_upper.setdefault(a, []).append((l, j, p))
    for (i, k, a), p in items:
        for (l, j, q_) in by_upper.get(a, []):
            v = p * q_
            acc((i, j, k, l), v)   # G^i_{ka} G^a_{lj}
            acc((i, j, l, k), -v)
    return Tensor(chart, (1, 3), out)


def apply_J_value(J: Tensor, T: Tensor) -> Tensor:
    """(J T)(X,Y) componentwise on the value slot of a (1,2)-tensor."""
    out = {}
    for (a, j, k), p in T.comps.items():
        for (i, a2), q in J.comps.items():
            if a2 != a:
                continue
            key = (i, j, k)
            v = p * q
            s = out.get(key)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return Tensor(T.chart, (1, 2), out)


def pull_J_slot(T: Tensor, J: Tensor, slot) -> Tensor:
    """T(JX, Y) (slot=1) or T(X, JY) (slot=2) for a (1,2)-tensor."""
    out = {}
    for (i, j, k), p in T.comps.items():
        if slot == 1:
            for (j2, b), q in J.comps.items():
                if j2 != j:
                    continue
                key = (i, b, k)
                v = p * q
                s = out.get(key)
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        else:
            for (k2, b), q in J.comps.items():
                if k2 != k:
                    continue
                key = (i, j, b)
                v = p * q
                s = out.get(key)
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return Tensor(T.chart, (1, 2), out)


def torsion_projection(T: Tensor, J: Tensor, e1: int, e2: int) -> Tensor:
    """The (e1, e2) in {+1,-1}^2 linearity-type component of a (1,2)-tensor:

    P(X,Y) = 1/4 [ T(X,Y) - e1 J T(JX,Y) - e2 J T(X,JY) - e1 e2 T(JX,JY) ].
    """
    tJ1 = pull_J_slot(T, J, 1)
    tJ2 = pull_J_slot(T, J, 2)
    tJJ = pull_J_slot(tJ1, J, 2)
    out = (
        T
        + apply_J_value(J, tJ1).scale(-e1)
        + apply_J_value(J, tJ2).scale(-e2)
        + tJJ.scale(-e1 * e2)
    )
    return out.scale(GaussQ("1/4"))


def torsion_trace_form(T: Tensor, J: Tensor) -> Tensor:
    """sigma(X) = 1/2 Tr( T(X, .) + J T(JX, .) ) as a 1-form."""
    chart = T.chart
    out = {}
    for (i, j, k), p in T.comps.items():
        if i == k:  # T^b_{ab} with a = j
            key = (j,)
            s = out.get(key)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    jt = apply_J_value(J, pull_J_slot(T, J, 1))
    for (i, j, k), p in jt.comps.items():
        if i == k:
            key = (j,)
            s = out.get(key)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return Tensor(chart, (0, 1), {k: v * GaussQ("1/2") for k, v in out.items()})


def traceless_mixed_torsion(T: Tensor, J: Tensor) -> Tensor:
    """The antilinear-linear traceless torsion component:
    P^{-+}(T) - (1/2n)(sigma(X) Y + sigma(JX) JY)."""
    chart = T.chart
    n = chart.n_complex()
    part = torsion_projection(T, J, -1, +1)
    sig = torsion_trace_form(T, J)
    corr = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = corr.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            corr.pop(key, None)
        else:
            corr[key] = s

    for (j,), p in sig.comps.items():
        for k in range(chart.dim):
            acc((k, j, k), p)  # sigma(X) Y
    for (a, j), q in J.comps.items():
        sa = sig.comps.get((a,))
        if sa is None:
            continue
        for (i, k2), r in J.comps.items():
            acc((i, j, k2), sa * q * r)  # sigma(JX) JY = sigma_a J^a_j J^i_k
    correction = Tensor(chart, (1, 2), corr)
    return part - correction.scale(GaussQ(1) / GaussQ(2 * n))


def curvature_J_pulled(R: Tensor, J: Tensor) -> Tensor:
    """R(J., J.) on the 2-form slots (k, l)."""
    out = {}
    for (i, j, k, l), p in R.comps.items():
        for (k2, a), q in J.comps.items():
            if k2 != k:
                continue
            for (l2, b), r in J.comps.items():
                if l2 != l:
                    continue
                key = (i, j, a, b)
                v = p * q * r
                s = out.get(key)
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return Tensor(R.chart, (1, 3), out)


def curvature_bidegree(R: Tensor, J: Tensor):
    """Split on the form slots: (1,1)-part and the (2,0)+(0,2)-part."""
    pulled = curvature_J_pulled(R, J)
    half = GaussQ("1/2")
    p11 = (R + pulled).scale(half)
    p20 = (R - pulled).scale(half)
    return {"(1,1)": p11, "(2,0)+(0,2)": p20}


def lie_derivative_connection(v: dict, G: Tensor) -> Tensor:
    """Omega^i_{jk} for the vector field v (dict direction -> poly)."""
    chart = G.chart
    d = chart.dim
    names = chart.table.names
    out = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    dv = {}
    for i, p in v.items():
        for a in range(d):
            q = p.derivative(names[a])
            if not q.is_zero():
                dv[(a, i)] = q
    for i, p in v.items():
        for j in range(d):
            pj = p.derivative(names[j])
            if pj.is_zero():
                continue
            for k in range(d):
                q = pj.derivative(names[k])
                if not q.is_zero():
                    acc((i, j, k), q)
    for (i, j, k), p in G.comps.items():
        for a, q in v.items():
            r = p.derivative(names[a]) * q
            if not r.is_zero():
                acc((i, j, k), r)
    for (a, j, k), p in G.comps.items():
        # - G^a_{jk} d_a v^i
        for (a2, i), qq in dv.items():
            if a2 != a:
                continue
            acc((i, j, k), -(p * qq))
    for (i, a, k), p in G.comps.items():
        # + G^i_{ak} d_j v^a
        for (j, a2), qq in dv.items():
            if a2 != a:
                continue
            acc((i, j, k), p * qq)
    for (i, j, a), p in G.comps.items():
        # + G^i_{ja} d_k v^a
        for (k, a2), qq in dv.items():
            if a2 != a:
                continue
            acc((i, j, k), p * qq)
    return Tensor(chart, (1, 2), out)


def lie_derivative_J(v: dict, J: Tensor) -> Tensor:
    chart = J.chart
    d = chart.dim
    names = chart.table.names
    out = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (i, j), p in J.comps.items():
        for a, q in v.items():
            r = p.derivative(names[a]) * q
            if not r.is_zero():
                acc((i, j), r)
    for (a, j), p in J.comps.items():
        for i, q in v.items():
            r = q.derivative(names[a])
            if not r.is_zero():
                acc((i, j), -(p * r))
    for (i, a), p in J.comps.items():
        for b, q in v.items():
            if b != a:
                continue
            for j in range(d):
                r = q.derivative(names[j])
                if not r.is_zero():
                    acc((i, j), p * r)
    return Tensor(chart, (1, 1), out)


def lie_derivative_metric(v: dict, g: Tensor) -> Tensor:
    chart = g.chart
    names = chart.table.names
    d = chart.dim
    out = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (a, b), p in g.comps.items():
        for c, q in v.items():
            r = p.derivative(names[c]) * q
            if not r.is_zero():
                acc((a, b), r)
    for (c, b), p in g.comps.items():
        for a in range(d):
            for c2, q in v.items():
                if c2 != c:
                    continue
                r = q.derivative(names[a])
                if not r.is_zero():
                    acc((a, b), p * r)
    for (a, c), p in g.comps.items():
        for b in range(d):
            for c2, q in v.items():
                if c2 != c:
                    continue
                r = q.derivative(names[b])
                if not r.is_zero():
                    acc((a, b), p * r)
    return Tensor(chart, (0, 2), out)


def covariant_derivative_J(G: Tensor, J: Tensor) -> Tensor:
    """(nabla J)^i_{kj} = d_k J^i_j + G^i_{ka} J^a_j - G^a_{kj} J^i_a."""
    chart = G.chart
    d = chart.dim
    names = chart.table.names
    out = {}

    def acc(key, val):
        if val.is_zero():
            return
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (i, j), p in J.comps.items():
        for k in range(d):
            q = p.derivative(names[k])
            if not q.is_zero():
                acc((i, k, j), q)
    for (i, k, a), p in G.comps.items():
        for (a2, j), q in J.comps.items():
            if a2 != a:
                continue
            acc((i, k, j), p * q)
    for (a, k, j), p in G.comps.items():
        for (i, a2), q in J.comps.items():
            if a2 != a:
                continue
            acc((i, k, j), -(p * q))
    return Tensor(chart, (1, 2), out)


# -- ring matrix inversion ------------------------------------------------------


def invert_matrix_ring(rows, chart):
    """Exact inverse of a matrix of ring elements (det must be a unit)."""
    d = len(rows)
    aug = [[rows[i][j] for j in range(d)] + [
        chart.const(1) if k == i else chart.zero() for k in range(d)
    ] for i in range(d)]
    # fraction-free forward elimination is wasteful here; use exact division
    # via adjugate: compute det by cofactor expansion for small d
    det = _det(rows, chart)
    inv_det = det.inverse_if_unit()
    if inv_det is None:
        raise PolyError(
            "matrix determinant is not invertible over the chart ring; "
            "declare the needed denominators"
        )
    adj = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [
                [rows[r][c] for c in range(d) if c != j]
                for r in range(d)
                if r != i
            ]
            cof = _det(minor, chart)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof * inv_det
    return adj


def _det(rows, chart):
    d = len(rows)
    if d == 0:
        return chart.const(1)
    if d == 1:
        return rows[0][0]
    out = chart.zero()
    for j in range(d):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[r][c] for c in range(d) if c != j] for r in range(1, d)]
        term = rows[0][j] * _det(minor, chart)
        out = out + term if j % 2 == 0 else out - term
    return out


def frame_to_coordinates(chart, frame_cols, omega, J_frame):
    """Coordinate Christoffels and J from a moving frame.

    frame_cols[i] is the coefficient dict of e_i over the coordinate fields;
    omega[(j, i, k)] is the theta^k-coefficient of the connection form with
    nabla e_i = sum_j e_j (x) omega^j_i; J_frame[(j, i)] gives J e_i = sum_j
    J^j_i e_j (constant coefficients).
    """
    d = chart.dim
    A = [[frame_cols[i].get(r, chart.zero()) for i in range(d)] for r in range(d)]
    B = invert_matrix_ring(A, chart)  # B[i][r]: theta^i = sum_r B[i][r] dx^r
    names = chart.table.names
    gamma = {}
    for a in range(d):
        for b in range(d):
            for c in range(d):
                tot = chart.zero()
                for i in range(d):
                    tot = tot + A[c][i] * B[i][b].derivative(names[a])
                for (j, i, k), w in omega.items():
                    tot = tot + A[c][j] * w * B[k][a] * B[i][b]
                if not tot.is_zero():
                    gamma[(c, a, b)] = tot
    jc = {}
    for c in range(d):
        for a in range(d):
            tot = chart.zero()
            for (j, i), w in J_frame.items():
                tot = tot + A[c][j] * w * B[i][a]
            if not tot.is_zero():
                jc[(c, a)] = tot
    return Tensor(chart, (1, 2), gamma), Tensor(chart, (1, 1), jc)


def frame_roundtrip_check(chart, frame_cols, omega, gamma: Tensor):
    """Recompute nabla e_i in the frame from the coordinate Christoffels."""
    d = chart.dim
    names = chart.table.names
    A = [[frame_cols[i].get(r, chart.zero()) for i in range(d)] for r in range(d)]
    B = invert_matrix_ring(A, chart)
    for i in range(d):
        for a in range(d):
            # nabla_{d_a} e_i = sum_c [ d_a A^c_i + Gamma^c_{a b} A^b_i ] d_c
            for c in range(d):
                tot = A[c][i].derivative(names[a])
                for b in range(d):
                    g = gamma.comps.get((c, a, b))
                    if g is not None:
                        tot = tot + g * A[b][i]
                # expected: sum_j omega^j_i(d_a) A^c_j
                exp = chart.zero()
                for (j, i2, k), w in omega.items():
                    if i2 != i:
                        continue
                    exp = exp + A[c][j] * w * B[k][a]
                if not (tot - exp).is_zero():
                    return False
    return True


def substitute_chart_power(chart_old, chart_new, var_old, var_new, power, gamma=None, J=None, g=None):
    """Transform under the coordinate substitution var_old = var_new**power."""
    iv = chart_old.table.index(var_old)
    tn = chart_new.table
    sn = chart_new.var(var_new)
    deriv = sn ** (power - 1) * power  # d var_old / d var_new

    def sub(p):
        return p.substitute_power(var_old, tn, var_new, power)

    def dfac(idx, up):
        # multiply by deriv for the substituted slot: lower index gains deriv,
        # upper index gains deriv^{-1}
        return idx == iv

    out = []
    if gamma is not None:
        comps = {}
        for (i, a, b), p in gamma.comps.items():
            q = sub(p)
            if dfac(a, False):
                q = q * deriv
            if dfac(b, False):
                q = q * deriv
            if dfac(i, True):
                q = q / deriv
            key = (i, a, b)
            comps[key] = comps.get(key, chart_new.zero()) + q
        # inhomogeneous term: (1/D_i) d^2 x_old / dx_new^2 at i=a=b=iv
        second = sn ** (power - 2) * (power * (power - 1))
        key = (iv, iv, iv)
        comps[key] = comps.get(key, chart_new.zero()) + second / deriv
        out.append(Tensor(chart_new, (1, 2), comps))
    if J is not None:
        comps = {}
        for (i, a), p in J.comps.items():
            q = sub(p)
            if dfac(a, False):
                q = q * deriv
            if dfac(i, True):
                q = q / deriv
            comps[(i, a)] = q
        out.append(Tensor(chart_new, (1, 1), comps))
    if g is not None:
        comps = {}
        for (a, b), p in g.comps.items():
            q = sub(p)
            if dfac(a, False):
                q = q * deriv
            if dfac(b, False):
                q = q * deriv
            comps[(a, b)] = q
        out.append(Tensor(chart_new, (0, 2), comps))
    return out[0] if len(out) == 1 else tuple(out)


# -- complex ingestion -------------------------------------------------------------


def complex_table(n, laurent_z=(), name_prefix=("z", "zb")):
    names = [f"{name_prefix[0]}{a+1}" for a in range(n)] + [
        f"{name_prefix[1]}{a+1}" for a in range(n)
    ]
    lau = [f"{name_prefix[0]}{a+1}" for a in laurent_z] + [
        f"{name_prefix[1]}{a+1}" for a in laurent_z
    ]
    return VarTable(names, laurent=lau)


def _real_poly_from_complex(p: LaurentPoly, chart: Chart):
    """Substitute z_a -> x_{2a} + i x_{2a+1}, zb_a -> conjugate; negative
    exponents become conjugate powers over the declared denominator
    x_{2a}^2 + x_{2a+1}^2."""
    n = chart.n_complex()
    t = chart.table
    zs = []
    zbs = []
    for a in range(n):
        xr = chart.var(t.names[2 * a])
        xi = chart.var(t.names[2 * a + 1])
        zs.append(xr + xi * GaussQ(0, 1))
        zbs.append(xr - xi * GaussQ(0, 1))
    mods = []
    for a in range(n):
        mod = None
        target = (zs[a] * zbs[a]).terms
        for k in range(len(t.den_names)):
            if dict(t.den_terms[k]) == target:
                mod = k
                break
        mods.append(mod)
    out = LaurentPoly.zero(t)
    for exps, c in p.terms.items():
        term = LaurentPoly.const(t, c)
        for a in range(n):
            ez, ezb = exps[a], exps[n + a]
            for e, base, conj_base in ((ez, zs[a], zbs[a]), (ezb, zbs[a], zs[a])):
                if e > 0:
                    term = term * base**e
                elif e < 0:
                    if mods[a] is None:
                        raise PolyError(
                            f"negative power of complex coordinate {a+1} needs the "
                            f"declared denominator |z{a+1}|^2 on the chart"
                        )
                    term = term * conj_base ** (-e)
                    den = [0] * len(t.den_names)
                    den[mods[a]] = -e
                    term = LaurentPoly(t, term.terms, tuple(
                        m + dnew for m, dnew in zip(term.den, den)
                    ))
        out = out + term
    return out


def complex_tensor_to_real(chart, valence, comps, add_conjugate=True):
    """Expand a complex-index tensor into real components.

    Complex indices: 0..n-1 unbarred, n..2n-1 barred.  `comps` maps complex
    index tuples (upper slots first) to polynomials over `complex_table(n)`.
    The result must be real, which is validated.
    """
    n = chart.n_complex()
    up, lo = valence
    full = dict(comps)
    if add_conjugate:
        for idx, p in comps.items():
            cidx = tuple((a + n) % (2 * n) for a in idx)
            q = _swap_bars(p)
            if cidx in full:
                full[cidx] = full[cidx] + q
            else:
                full[cidx] = q
    out = {}
    for idx, p in full.items():
        rp = _real_poly_from_complex(p, chart)
        if rp.is_zero():
            continue
        _expand(out, idx, rp, chart, n, up)
    real = {}
    for k, v in out.items():
        if not v.is_zero():
            if not v.is_real():
                raise PolyError(
                    f"complex ingestion produced a non-real component at {k}: {v}"
                )
            real[k] = v
    return Tensor(chart, valence, real)


def _expand(out, idx, rp, chart, n, up):
    """Distribute one complex component over real index tuples."""
    i = GaussQ(0, 1)
    half = GaussQ("1/2")

    def conv(slot_pos, a):
        barred = a >= n
        base = 2 * (a % n)
        if slot_pos < up:
            # vector slot: d_{z} = 1/2 d_x - i/2 d_y ; barred: + i/2
            return [(base, half), (base + 1, i * half if barred else -(i * half))]
        # form slot: dz = dx + i dy ; barred: dx - i dy
        return [(base, GaussQ(1)), (base + 1, -i if barred else i)]

    stack = [((), GaussQ(1))]
    for pos, a in enumerate(idx):
        new = []
        for prefix, coef in stack:
            for r, c in conv(pos, a):
                new.append((prefix + (r,), coef * c))
        stack = new
    for key, coef in stack:
        v = rp * coef
        if v.is_zero():
            continue
        s = out.get(key)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s


def _swap_bars(p: LaurentPoly) -> LaurentPoly:
    """z <-> zb and conjugate coefficients (the conjugate polynomial)."""
    t = p.table
    n = t.nvars() // 2
    out = {}
    for exps, c in p.terms.items():
        ne = tuple(list(exps[n:]) + list(exps[:n]))
        out[ne] = c.conj()
    return LaurentPoly(t, out, p.den)
