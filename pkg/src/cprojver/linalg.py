"""Exact linear algebra: ranks, kernels, span reduction, signatures.

Two elimination routes are provided and must agree:

* sparse exact Gaussian elimination on integer-scaled rows (the default; it
  also produces the canonical reduced-echelon kernel basis), and
* dense fraction-free Bareiss elimination for small integer-heavy matrices.

Kernel bases are deterministic: columns are eliminated in their natural order,
free columns are enumerated ascending, and every kernel vector is scaled so
its first nonzero coordinate equals 1.
"""

from __future__ import annotations

from fractions import Fraction

from . import _backend
from .scalars import GaussQ

# matrices at most this wide take the dense Bareiss route in rank()
BAREISS_MAX_DIM = 24


def _scale_row_to_int(row):
    """dict col->(Fraction|int) -> dict col->int, scaled by the lcm of
    denominators and divided by the content."""
    lcm = 1
    for v in row.values():
        if isinstance(v, Fraction):
            d = v.denominator
            if d != 1:
                g = _gcd(lcm, d)
                lcm = lcm // g * d
    out = {}
    for k, v in row.items():
        iv = int(v * lcm) if isinstance(v, Fraction) else v * lcm
        if iv:
            out[k] = iv
    g = _backend.row_content(out)
    if g > 1:
        for k in out:
            out[k] //= g
    return out


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


class LinearSystem:
    """Sparse homogeneous system over Q; rows are added incrementally.

    Column keys may be any sortable hashables; the fixed elimination order is
    the sorted order of all keys ever seen.
    """

    def __init__(self):
        self.pivots = {}  # col -> integer row dict whose minimal column is col
        self.columns = set()
        self.nrows = 0

    def register_columns(self, cols):
        self.columns.update(cols)

    def add_row(self, row):
        """Insert one equation; returns True if it was independent."""
        self.nrows += 1
        self.columns.update(row.keys())
        r = _scale_row_to_int(row)
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                self.pivots[c] = r
                return True
            _backend.row_update(r, p, p[c], r[c])
        return False

    def rank(self):
        return len(self.pivots)

    def kernel_dim(self):
        return len(self.columns) - len(self.pivots)

    def _reduced_pivots(self):
        """Back-substitute so each pivot row is zero on the other pivot cols."""
        cols = sorted(self.pivots, reverse=True)
        reduced = {}
        for c in cols:
            r = dict(self.pivots[c])
            for c2 in sorted(k for k in r if k != c and k in reduced):
                if c2 in r:
                    p = reduced[c2]
                    _backend.row_update(r, p, p[c2], r[c2])
            reduced[c] = r
        return reduced

    def kernel(self):
        """Canonical kernel basis: list of dict col -> Fraction."""
        reduced = self._reduced_pivots()
        cols = sorted(self.columns)
        free = [c for c in cols if c not in reduced]
        basis = []
        for f in free:
            vec = {f: Fraction(1)}
            for c, row in reduced.items():
                if f in row:
                    vec[c] = Fraction(-row[f], row[c])
            first = min(vec)
            lead = vec[first]
            if lead != 1:
                vec = {k: v / lead for k, v in vec.items()}
            basis.append(vec)
        return basis


class ComplexLinearSystem:
    """Homogeneous system over Q(i), eliminated with field arithmetic."""

    def __init__(self):
        self._field_pivots = {}
        self._field_cols = set()

    def add_row_complex_unknowns(self, row):
        r = {k: GaussQ.of(v) for k, v in row.items() if GaussQ.of(v)}
        self._field_cols.update(r.keys())
        while r:
            c = min(r)
            p = self._field_pivots.get(c)
            if p is None:
                lead = r[c]
                self._field_pivots[c] = {k: v / lead for k, v in r.items()}
                return True
            factor = r[c]
            for k, v in p.items():
                s = r.get(k, GaussQ(0)) - factor * v
                if s.is_zero():
                    r.pop(k, None)
                else:
                    r[k] = s
        return False

    def complex_kernel(self):
        cols = sorted(self._field_cols)
        reduced = {}
        for c in sorted(self._field_pivots, reverse=True):
            r = dict(self._field_pivots[c])
            for c2 in sorted(k for k in list(r) if k != c and k in reduced):
                if c2 in r:
                    f = r.pop(c2)
                    for k, v in reduced[c2].items():
                        if k == c2:
                            continue
                        s = r.get(k, GaussQ(0)) - f * v
                        if s.is_zero():
                            r.pop(k, None)
                        else:
                            r[k] = s
            reduced[c] = r
        free = [c for c in cols if c not in reduced]
        basis = []
        for f in free:
            vec = {f: GaussQ(1)}
            for c, row in reduced.items():
                if f in row:
                    vec[c] = -row[f]
            first = min(vec)
            lead = vec[first]
            if not lead.is_one():
                vec = {k: v / lead for k, v in vec.items()}
            basis.append(vec)
        return basis


class ExactMatrix:
    """Dense exact matrix over Q or Q(i)."""

    def __init__(self, rows, ncols=None):
        self.rows = [[GaussQ.of(c) for c in r] for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
        else:
            self.ncols = 0 if ncols is None else ncols
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    def is_real(self):
        return all(c.is_real() for r in self.rows for c in r)

    def _int_rows(self):
        out = []
        for r in self.rows:
            row = {j: c.re for j, c in enumerate(r) if c.re}
            out.append(_scale_row_to_int(row))
        return [[r.get(j, 0) for j in range(self.ncols)] for r in out]

    def rank(self):
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if self.is_real() and max(self.nrows, self.ncols) <= BAREISS_MAX_DIM:
            return _backend.bareiss_rank(self._int_rows(), self.ncols)
        return self.rank_sparse()

    def rank_sparse(self):
        if self.is_real():
            sys = LinearSystem()
            for r in self.rows:
                row = {j: c.re for j, c in enumerate(r) if c.re}
                if row:
                    sys.add_row(row)
            return sys.rank()
        sys = ComplexLinearSystem()
        for r in self.rows:
            row = {j: c for j, c in enumerate(r) if not c.is_zero()}
            if row:
                sys.add_row_complex_unknowns(row)
        return len(sys._field_pivots)

    def rank_bareiss(self):
        if not self.is_real():
            raise ValueError("Bareiss route is for rational matrices")
        return _backend.bareiss_rank(self._int_rows(), self.ncols)

    def kernel(self):
        """Canonical kernel basis as lists of GaussQ, first nonzero = 1."""
        if self.ncols == 0:
            return []
        if self.is_real():
            sys = LinearSystem()
            sys.columns.update(range(self.ncols))
            for r in self.rows:
                row = {j: c.re for j, c in enumerate(r) if c.re}
                if row:
                    sys.add_row(row)
            vecs = sys.kernel()
            return [
                [GaussQ(v.get(j, Fraction(0))) for j in range(self.ncols)]
                for v in vecs
            ]
        sys = ComplexLinearSystem()
        sys._field_cols.update(range(self.ncols))
        for r in self.rows:
            row = {j: c for j, c in enumerate(r) if not c.is_zero()}
            if row:
                sys.add_row_complex_unknowns(row)
        vecs = sys.complex_kernel()
        return [[v.get(j, GaussQ(0)) for j in range(self.ncols)] for v in vecs]

    def mul_vector(self, vec):
        return [
            sum((c * v for c, v in zip(r, vec)), GaussQ(0)) for r in self.rows
        ]


class SpanSolver:
    """Incremental span of exact vectors with membership/decomposition.

    Vectors are dicts keyed by sortable hashables with Fraction/GaussQ values.
    Decomposition coefficients refer to the vectors as inserted.
    """

    def __init__(self):
        self._rows = []  # (pivot key, row dict, combo dict gen_index -> GaussQ)
        self.ngen = 0

    def _reduce(self, vec, combo):
        v = {k: GaussQ.of(x) for k, x in vec.items() if GaussQ.of(x)}
        for pk, row, rcombo in self._rows:
            if pk in v:
                f = v[pk]
                for k, x in row.items():
                    s = v.get(k, GaussQ(0)) - f * x
                    if s.is_zero():
                        v.pop(k, None)
                    else:
                        v[k] = s
                for g, x in rcombo.items():
                    s = combo.get(g, GaussQ(0)) - f * x
                    if s.is_zero():
                        combo.pop(g, None)
                    else:
                        combo[g] = s
        return v, combo

    def insert(self, vec):
        """Add a generator; returns True if it enlarged the span."""
        combo = {self.ngen: GaussQ(1)}
        self.ngen += 1
        v, combo = self._reduce(vec, combo)
        if not v:
            return False
        pk = min(v)
        lead = v[pk]
        v = {k: x / lead for k, x in v.items()}
        combo = {g: x / lead for g, x in combo.items()}
        self._rows.append((pk, v, combo))
        self._rows.sort(key=lambda t: t[0])
        return True

    def dim(self):
        return len(self._rows)

    def contains(self, vec):
        v, _ = self._reduce(vec, {})
        return not v

    def decompose(self, vec):
        """Coefficients over the inserted generators, or None if outside."""
        combo = {}
        v, combo = self._reduce(vec, combo)
        if v:
            return None
        return {g: -c for g, c in combo.items()}


def signature(sym_rows):
    """(n_plus, n_minus, n_zero) of an exact symmetric rational matrix."""
    m = [[Fraction(x) if not isinstance(x, Fraction) else x for x in r] for r in sym_rows]
    n = len(m)
    for r in m:
        if len(r) != n:
            raise ValueError("not square")
    pos = neg = zero = 0
    alive = list(range(n))
    while alive:
        i = next((a for a in alive if m[a][a] != 0), None)
        if i is None:
            pair = None
            for a in alive:
                for b in alive:
                    if b != a and m[a][b] != 0:
                        pair = (a, b)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(alive)
                break
            a, b = pair
            # e_a += e_b makes the diagonal entry 2*m[a][b] != 0
            for y in range(n):
                m[a][y] = m[a][y] + m[b][y]
            for x in range(n):
                m[x][a] = m[x][a] + m[x][b]
            continue
        d = m[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(i)
        fs = {a: m[a][i] / d for a in alive}
        for a in alive:
            fa = fs[a]
            row_i = m[i]
            row_a = m[a]
            mai = row_a[i]
            for b in alive:
                row_a[b] = row_a[b] - fa * row_i[b] - fs[b] * mai + fa * fs[b] * d
        for a in alive:
            m[a][i] = Fraction(0)
            m[i][a] = Fraction(0)
    return pos, neg, zero
