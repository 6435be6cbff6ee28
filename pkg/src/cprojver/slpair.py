"""The graded real Lie algebra sl(n+1,C)_R and its complexified double.

The real algebra g is realized as pairs (x, conj(x)) of complex trace-free
(n+1)x(n+1) matrices inside the double g_C = sl(n+1,C) x sl(n+1,C) (an
"unbarred" and a "barred" commuting copy, swapped by conjugation).  The
|1|-grading comes from the block sizes (1, n):

    g_{-1} = lower-left block,  g_0 = block diagonal,  g_{+1} = upper-right,

with real dimensions 2n, 2n^2, 2n.  The grading element is
Z = diag(n/(n+1), -1/(n+1), ..., -1/(n+1)).

Real basis enumeration (deterministic, row-major on (j,k), 1-based):

* off-diagonal: ``E j k`` = realify(E_jk) and ``F j k`` = realify(i E_jk);
* diagonal: ``H j`` = realify(E_jj - E_22) and ``G j`` = realify(i(E_jj - E_22))
  for j != 2, i.e. the (2,2) entry carries the trace dependency.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussQ


_ZERO = GaussQ(0)


class Mat:
    """Dense (n+1)x(n+1) matrix over Q(i)."""

    __slots__ = ("n1", "a")

    def __init__(self, n1, a=None):
        self.n1 = n1
        self.a = a if a is not None else [[_ZERO] * n1 for _ in range(n1)]

    @staticmethod
    def unit(n1, j, k, c=GaussQ(1)):
        m = Mat(n1)
        m.a[j - 1][k - 1] = GaussQ.of(c)
        return m

    @staticmethod
    def diag(n1, entries):
        m = Mat(n1)
        for j, c in enumerate(entries):
            m.a[j][j] = GaussQ.of(c)
        return m

    def __add__(self, o):
        out = Mat(self.n1)
        out.a = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.a, o.a)]
        return out

    def __sub__(self, o):
        out = Mat(self.n1)
        out.a = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.a, o.a)]
        return out

    def __neg__(self):
        out = Mat(self.n1)
        out.a = [[-x for x in r] for r in self.a]
        return out

    def scale(self, c):
        c = GaussQ.of(c)
        out = Mat(self.n1)
        out.a = [[(x * c if (x.re or x.im) else x) for x in r] for r in self.a]
        return out

    def mul(self, o):
        n1 = self.n1
        out = Mat(n1)
        for i in range(n1):
            ai = self.a[i]
            oi = out.a[i]
            for k in range(n1):
                c = ai[k]
                if c.is_zero():
                    continue
                ok = o.a[k]
                for j in range(n1):
                    if not ok[j].is_zero():
                        oi[j] = oi[j] + c * ok[j]
        return out

    def bracket(self, o):
        return self.mul(o) - o.mul(self)

    def conj(self):
        out = Mat(self.n1)
        out.a = [[x.conj() for x in r] for r in self.a]
        return out

    def trace(self):
        t = GaussQ(0)
        for j in range(self.n1):
            t = t + self.a[j][j]
        return t

    def is_zero(self):
        return all(x.is_zero() for r in self.a for x in r)

    def entries(self):
        for j in range(self.n1):
            for k in range(self.n1):
                if not self.a[j][k].is_zero():
                    yield (j + 1, k + 1), self.a[j][k]

    def __eq__(self, o):
        return isinstance(o, Mat) and self.n1 == o.n1 and self.a == o.a

    def __repr__(self):
        return "Mat[" + "; ".join(" ".join(str(x) for x in r) for r in self.a) + "]"


class CD:
    """Element of the complex double: a pair (unbarred, barred) of matrices."""

    __slots__ = ("u", "b")

    def __init__(self, u: Mat, b: Mat):
        self.u = u
        self.b = b

    def __add__(self, o):
        return CD(self.u + o.u, self.b + o.b)

    def __sub__(self, o):
        return CD(self.u - o.u, self.b - o.b)

    def __neg__(self):
        return CD(-self.u, -self.b)

    def scale(self, c):
        return CD(self.u.scale(c), self.b.scale(c))

    def bracket(self, o):
        return CD(self.u.bracket(o.u), self.b.bracket(o.b))

    def conj(self):
        """Swap the copies and conjugate entries; real elements are fixed."""
        return CD(self.b.conj(), self.u.conj())

    def is_zero(self):
        return self.u.is_zero() and self.b.is_zero()

    def is_real(self):
        d = self - self.conj()
        return d.is_zero()

    def __eq__(self, o):
        return isinstance(o, CD) and self.u == o.u and self.b == o.b

    def __repr__(self):
        return f"CD(u={self.u!r}, b={self.b!r})"


def realify(x: Mat) -> CD:
    return CD(x, x.conj())


class SlPair:
    """sl(n+1,C)_R with grading, real basis, and root data."""

    def __init__(self, n):
        if n < 2:
            raise ValueError(f"complex dimension n must be >= 2, got {n}")
        self.n = n
        self.n1 = n + 1
        self.basis_labels = []
        self.basis = []  # CD elements, realify image
        self._build_basis()
        self.Z = Mat.diag(
            self.n1,
            [Fraction(n, n + 1)] + [Fraction(-1, n + 1)] * n,
        )

    # -- basis ------------------------------------------------------------

    def _build_basis(self):
        n1 = self.n1
        for j in range(1, n1 + 1):
            for k in range(1, n1 + 1):
                if j == k:
                    continue
                self.basis_labels.append(f"E{j}{k}" if n1 < 10 else f"E{j}_{k}")
                self.basis.append(realify(Mat.unit(n1, j, k)))
                self.basis_labels.append(f"F{j}{k}" if n1 < 10 else f"F{j}_{k}")
                self.basis.append(realify(Mat.unit(n1, j, k, GaussQ(0, 1))))
        for j in range(1, n1 + 1):
            if j == 2:
                continue
            d = Mat.unit(n1, j, j) - Mat.unit(n1, 2, 2)
            self.basis_labels.append(f"H{j}")
            self.basis.append(realify(d))
            self.basis_labels.append(f"G{j}")
            self.basis.append(realify(d.scale(GaussQ(0, 1))))

    def dim(self):
        return len(self.basis)

    def grade_of_label(self, label):
        """Grading from the block shape: lower-left = -1, upper-right = +1."""
        if label[0] in "HG":
            return 0
        body = label[1:]
        if "_" in body:
            j, k = (int(t) for t in body.split("_"))
        else:
            j, k = int(body[0]), int(body[1])
        if k == 1 and j > 1:
            return -1
        if j == 1 and k > 1:
            return 1
        return 0

    def graded_parts(self):
        parts = {-1: [], 0: [], 1: []}
        for lbl in self.basis_labels:
            parts[self.grade_of_label(lbl)].append(lbl)
        return parts

    # -- coordinates --------------------------------------------------------

    def coordinates(self, x: CD):
        """Real coordinates of a real element (= realify image) in the basis."""
        if not x.is_real():
            raise ValueError("element is not in the real form")
        u = x.u
        n1 = self.n1
        coords = []
        for lbl in self.basis_labels:
            if lbl[0] in "EF":
                body = lbl[1:]
                if "_" in body:
                    j, k = (int(t) for t in body.split("_"))
                else:
                    j, k = int(body[0]), int(body[1])
                c = u.a[j - 1][k - 1]
                coords.append(c.re if lbl[0] == "E" else c.im)
            else:
                j = int(lbl[1:])
                c = u.a[j - 1][j - 1]
                coords.append(c.re if lbl[0] == "H" else c.im)
        return coords

    def from_coordinates(self, coords):
        x = Mat(self.n1)
        for lbl, c in zip(self.basis_labels, coords):
            if not c:
                continue
            el = self.element_of_label(lbl)
            x = x + el.u.scale(c)
        return realify(x)

    def element_of_label(self, lbl) -> CD:
        i = self.basis_labels.index(lbl)
        return self.basis[i]

    # -- root data ------------------------------------------------------------

    def root_vector(self, lo, hi, sign=+1, barred=False) -> CD:
        """Root vector for +/-(alpha_lo + ... + alpha_hi) as a double element
        living in one copy only (lo..hi is a consecutive run, 1-based)."""
        if not (1 <= lo <= hi <= self.n):
            raise ValueError(f"not a root: indices {lo}..{hi} for n={self.n}")
        j, k = lo, hi + 1
        m = Mat.unit(self.n1, j, k) if sign > 0 else Mat.unit(self.n1, k, j)
        z = Mat(self.n1)
        return CD(z, m) if barred else CD(m, z)

    def weight_of_matrix_position(self, j, k, diag):
        """eps_j - eps_k evaluated on a diagonal matrix."""
        return diag.a[j - 1][j - 1] - diag.a[k - 1][k - 1]

    def grading_eigenvalue_check(self):
        """[Z, x] = j*x for x in g_j, for every basis element."""
        zz = realify(self.Z)
        for lbl, x in zip(self.basis_labels, self.basis):
            j = self.grade_of_label(lbl)
            d = zz.bracket(x) - x.scale(j)
            if not d.is_zero():
                return False, lbl
        return True, None

    # -- export to structure constants ------------------------------------------

    def structure_constants(self):
        """Sparse real structure constants over the deterministic basis."""
        table = {}
        dim = self.dim()
        for i in range(dim):
            for j in range(i + 1, dim):
                br = self.basis[i].bracket(self.basis[j])
                if br.is_zero():
                    continue
                coords = self.coordinates(br)
                vec = {k: c for k, c in enumerate(coords) if c}
                if vec:
                    table[(i, j)] = vec
        return table
