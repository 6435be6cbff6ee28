"""Finite-dimensional Lie algebras given by structure constants.

Coefficients are exact scalars or polynomials in declared commuting parameters
(so a Jacobi residual with a free parameter is a polynomial identity).  The
bracket table stores only pairs (i, j) with i < j; antisymmetry is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import SpanSolver
from .poly import LaurentPoly
from .scalars import GaussQ


def _is_zero(c):
    if isinstance(c, LaurentPoly):
        return c.is_zero()
    return GaussQ.of(c).is_zero()


class StructAlgebra:
    """Labeled basis + sparse bracket table, with optional gradings."""

    def __init__(self, labels, bracket, params=None, grading=None, z2=None, name=""):
        self.labels = tuple(labels)
        self.name = name or "algebra"
        self.params = params  # VarTable of parameters, or None
        self.index = {l: i for i, l in enumerate(self.labels)}
        self.grading = dict(grading) if grading else None
        self.z2 = dict(z2) if z2 else None
        table = {}
        for (i, j), vec in bracket.items():
            if i == j:
                raise ValueError(f"bracket [{i},{i}] must vanish by antisymmetry")
            if i > j:
                i, j, vec = j, i, {k: self._neg(c) for k, c in vec.items()}
            clean = {k: c for k, c in vec.items() if not _is_zero(c)}
            if clean:
                table[(i, j)] = clean
        self.table = table

    def _neg(self, c):
        return -c

    def dim(self):
        return len(self.labels)

    def has_params(self):
        return self.params is not None and self.params.nvars() > 0

    # -- bracket of coordinate vectors ---------------------------------------

    def bracket_units(self, i, j):
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), {}))
        return {k: self._neg(c) for k, c in self.table.get((j, i), {}).items()}

    def bracket_vec(self, x, y):
        out = {}
        for i, ci in x.items():
            if _is_zero(ci):
                continue
            for j, cj in y.items():
                if _is_zero(cj):
                    continue
                for k, c in self.bracket_units(i, j).items():
                    v = ci * cj * c
                    s = out.get(k)
                    s = v if s is None else s + v
                    if _is_zero(s):
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    # -- validity ---------------------------------------------------------------

    def jacobi_residual(self):
        """All nonzero cyclic sums Jac(e_i,e_j,e_k); empty table <=> Lie algebra."""
        bad = {}
        dim = self.dim()
        for i in range(dim):
            for j in range(i + 1, dim):
                bij = self.bracket_units(i, j)
                for k in range(j + 1, dim):
                    r = self.bracket_vec(bij, {k: _one_like(self, 1)})
                    for t, c in self.bracket_vec(
                        self.bracket_units(j, k), {i: _one_like(self, 1)}
                    ).items():
                        _acc(r, t, c)
                    for t, c in self.bracket_vec(
                        self.bracket_units(k, i), {j: _one_like(self, 1)}
                    ).items():
                        _acc(r, t, c)
                    r = {t: c for t, c in r.items() if not _is_zero(c)}
                    if r:
                        bad[(self.labels[i], self.labels[j], self.labels[k])] = {
                            self.labels[t]: c for t, c in r.items()
                        }
        return bad

    def is_valid(self):
        return not self.jacobi_residual()

    # -- derived series -----------------------------------------------------------

    def derived_series(self):
        if self.has_params():
            raise ValueError(
                "derived series needs numeric coefficients; specialize parameters first"
            )
        dims = [self.dim()]
        basis = [{i: GaussQ(1)} for i in range(self.dim())]
        while True:
            span = SpanSolver()
            new_basis = []
            for a in range(len(basis)):
                for b in range(a + 1, len(basis)):
                    v = self.bracket_vec(basis[a], basis[b])
                    v = {k: GaussQ.of(c) for k, c in v.items() if not _is_zero(c)}
                    if v and span.insert(dict(v)):
                        new_basis.append(v)
            d = span.dim()
            dims.append(d)
            if d == 0 or d == dims[-2]:
                break
            basis = new_basis
        return tuple(dims)

    # -- gradings ------------------------------------------------------------------

    def check_grading(self):
        """Integer grading check; returns (ok, violating (i,j,label) or None)."""
        if not self.grading:
            raise ValueError("no integer grading declared")
        for (i, j), vec in self.table.items():
            gij = self.grading[self.labels[i]] + self.grading[self.labels[j]]
            for k, c in vec.items():
                if self.grading[self.labels[k]] != gij:
                    return False, (self.labels[i], self.labels[j], self.labels[k])
        return True, None

    def check_filtration(self):
        """[F_i, F_j] subset F_{i+j} for the decreasing filtration F_i = sum_{k>=i} g_k."""
        if not self.grading:
            raise ValueError("no integer grading declared")
        for (i, j), vec in self.table.items():
            gij = self.grading[self.labels[i]] + self.grading[self.labels[j]]
            for k, c in vec.items():
                if self.grading[self.labels[k]] < gij:
                    return False, (self.labels[i], self.labels[j], self.labels[k])
        return True, None

    def check_z2(self):
        if not self.z2:
            raise ValueError("no Z2 grading declared")
        for (i, j), vec in self.table.items():
            sign = self.z2[self.labels[i]] * self.z2[self.labels[j]]
            for k, c in vec.items():
                if self.z2[self.labels[k]] != sign:
                    return False, (self.labels[i], self.labels[j], self.labels[k])
        return True, None

    # -- parameters -------------------------------------------------------------------

    def specialize(self, values):
        """Substitute rational values for parameters; returns a numeric algebra."""
        if not self.has_params():
            return self
        point = {n: values[n] for n in self.params.names}
        out = {}
        for key, vec in self.table.items():
            nv = {}
            for k, c in vec.items():
                cv = c.evaluate(point) if isinstance(c, LaurentPoly) else GaussQ.of(c)
                if not cv.is_zero():
                    nv[k] = cv
            if nv:
                out[key] = nv
        return StructAlgebra(
            self.labels, out, grading=self.grading, z2=self.z2, name=self.name
        )

    def transport(self, scaling):
        """Structure constants transported along the diagonal map
        e_i -> scaling[label]*e_i (an isomorphism test helper)."""
        s = {self.index[l]: GaussQ.of(v) for l, v in scaling.items()}
        for i in range(self.dim()):
            s.setdefault(i, GaussQ(1))
        out = {}
        for (i, j), vec in self.table.items():
            nv = {}
            for k, c in vec.items():
                nv[k] = GaussQ.of(c) * s[i] * s[j] / s[k]
            out[(i, j)] = nv
        return StructAlgebra(
            self.labels, out, grading=self.grading, z2=self.z2, name=self.name
        )

    def same_table(self, other):
        if self.labels != other.labels:
            return False
        keys = set(self.table) | set(other.table)
        for key in keys:
            a = self.table.get(key, {})
            b = other.table.get(key, {})
            for k in set(a) | set(b):
                ca, cb = a.get(k), b.get(k)
                da = ca if ca is not None else _zero_like(ca, cb)
                db = cb if cb is not None else _zero_like(cb, ca)
                if not _is_zero(da - db):
                    return False
        return True


def _zero_like(c, other):
    ref = c if c is not None else other
    if isinstance(ref, LaurentPoly):
        return LaurentPoly.zero(ref.table)
    return GaussQ(0)


def _one_like(alg, v):
    if alg.has_params():
        return LaurentPoly.const(alg.params, v)
    return GaussQ(v)


def _acc(d, k, c):
    s = d.get(k)
    s = c if s is None else s + c
    if _is_zero(s):
        d.pop(k, None)
    else:
        d[k] = s


@dataclass
class DeformationResult:
    deformed: StructAlgebra
    residual: dict
    predicted: dict
    matches_prediction: bool


def deform_by_cochain(alg: StructAlgebra, cochain, minus_labels):
    """Deformed bracket [x,y] - psi(x,y) and its Jacobi residual.

    `cochain` maps pairs (i, j) of minus-part basis indices (i < j) to sparse
    value vectors over the algebra basis.  The residual must coincide with the
    cyclic sum psi(psi(x,y),z) on minus-part triples (psi extended by zero),
    which is also returned.
    """
    minus = {alg.index[l] for l in minus_labels}
    for (i, j), vec in cochain.items():
        if i not in minus or j not in minus:
            raise ValueError("cochain must be supported on the minus part")
        for k in vec:
            if not (0 <= k < alg.dim()):
                raise ValueError("cochain value outside the algebra")

    def psi_units(i, j):
        if i == j:
            return {}
        if i < j:
            return dict(cochain.get((i, j), {}))
        return {k: -c for k, c in cochain.get((j, i), {}).items()}

    def psi_vec(x, y):
        out = {}
        for i, ci in x.items():
            if i not in minus or _is_zero(ci):
                continue
            for j, cj in y.items():
                if j not in minus or _is_zero(cj):
                    continue
                for k, c in psi_units(i, j).items():
                    _acc(out, k, ci * cj * c)
        return out

    new_table = {}
    dim = alg.dim()
    for i in range(dim):
        for j in range(i + 1, dim):
            vec = dict(alg.bracket_units(i, j))
            for k, c in psi_units(i, j).items():
                _acc(vec, k, -c)
            vec = {k: c for k, c in vec.items() if not _is_zero(c)}
            if vec:
                new_table[(i, j)] = vec
    deformed = StructAlgebra(
        alg.labels, new_table, params=alg.params, name=alg.name + "+deform"
    )
    residual = deformed.jacobi_residual()

    one = _one_like(alg, 1)
    predicted = {}
    ml = sorted(minus)
    for a in range(len(ml)):
        for b in range(a + 1, len(ml)):
            for c in range(b + 1, len(ml)):
                i, j, k = ml[a], ml[b], ml[c]
                r = {}
                for t, v in psi_vec(psi_units(i, j), {k: one}).items():
                    _acc(r, t, v)
                for t, v in psi_vec(psi_units(j, k), {i: one}).items():
                    _acc(r, t, v)
                for t, v in psi_vec(psi_units(k, i), {j: one}).items():
                    _acc(r, t, v)
                r = {t: v for t, v in r.items() if not _is_zero(v)}
                if r:
                    predicted[
                        (alg.labels[i], alg.labels[j], alg.labels[k])
                    ] = {alg.labels[t]: v for t, v in r.items()}
    matches = _tables_equal(residual, predicted)
    return DeformationResult(deformed, residual, predicted, matches)


def _tables_equal(a, b):
    keys = set(a) | set(b)
    for key in keys:
        va, vb = a.get(key, {}), b.get(key, {})
        for k in set(va) | set(vb):
            ca = va.get(k)
            cb = vb.get(k)
            da = ca if ca is not None else _zero_like(ca, cb)
            db = cb if cb is not None else _zero_like(cb, ca)
            if not _is_zero(da - db):
                return False
    return True
