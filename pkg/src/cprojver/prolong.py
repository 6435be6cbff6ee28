"""Curvature modules, annihilators, Tanaka prolongations, dimension tables.

Elements of the curvature module live in Lambda^2(g_{-1})* (x) g_C, written in
the complexified double of `slpair`.  A dual slot is a pair (copy, j) meaning
the functional dual to u_j = E_{j+1,1} in the unbarred (0) or barred (1) copy.

The four irreducible module types are identified by their extremal vectors:

* ``I``   : u1* ^ u2* (unbarred pair) (x) E_{n+1,2}   (E_{1,2} value when n=2)
* ``II``  : u1* ^ u1bar*             (x) E_{n+1,2}
* ``III`` : u1bar* ^ u2bar*          (x) E_{n+1,1}
* ``IV``  : u1* ^ u1bar*             (x) E_{n+1,1}

``IV`` is the traceless antilinear-linear torsion module (the obstruction to
minimality); I--III are the harmonic curvature types of the minimal theory.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import LinearSystem, SpanSolver
from .scalars import GaussQ
from .slpair import CD, Mat, SlPair, realify

CURV_TYPES = ("I", "II", "III", "IV")


class CurvElement:
    """Sparse element of Lambda^2(g_{-1})* (x) g_C."""

    __slots__ = ("n", "entries")

    def __init__(self, n, entries=None):
        self.n = n
        self.entries = {}
        for slots, w in (entries or {}).items():
            if w.is_zero():
                continue
            self._accum(slots, w)

    def _accum(self, slots, w):
        sA, sB = slots
        if sA == sB:
            return
        if sA > sB:
            sA, sB = sB, sA
            w = -w
        key = (sA, sB)
        cur = self.entries.get(key)
        tot = w if cur is None else cur + w
        if tot.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = tot

    def __add__(self, other):
        out = CurvElement(self.n, dict(self.entries))
        for slots, w in other.entries.items():
            out._accum(slots, w)
        return out

    def __neg__(self):
        return self.scale(GaussQ(-1))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = GaussQ.of(c)
        out = CurvElement(self.n)
        if c.is_zero():
            return out
        for slots, w in self.entries.items():
            out.entries[slots] = w.scale(c)
        return out

    def conj(self):
        out = CurvElement(self.n)
        for (sA, sB), w in self.entries.items():
            nA = (1 - sA[0], sA[1])
            nB = (1 - sB[0], sB[1])
            out._accum((nA, nB), w.conj())
        return out

    def is_zero(self):
        return not self.entries

    def is_real(self):
        return (self - self.conj()).is_zero()

    def coordinates(self):
        """Sparse coordinate dict keyed by (slots, copy, row, col) -> GaussQ."""
        out = {}
        for slots, w in self.entries.items():
            for copy, mat in ((0, w.u), (1, w.b)):
                for (r, c), v in mat.entries():
                    out[(slots, copy, r, c)] = v
        return out

    def evaluate(self, a: CD, b: CD) -> CD:
        """Evaluate on two elements of (the complexification of) g_{-1}."""
        n1 = self.n + 1
        out = CD(Mat(n1), Mat(n1))

        def pairing(slot, x: CD):
            copy, j = slot
            m = x.u if copy == 0 else x.b
            return m.a[j][0]  # coefficient of E_{j+1,1}

        for (sA, sB), w in self.entries.items():
            c = pairing(sA, a) * pairing(sB, b) - pairing(sA, b) * pairing(sB, a)
            if not c.is_zero():
                out = out + w.scale(c)
        return out

    def __eq__(self, other):
        return isinstance(other, CurvElement) and (self - other).is_zero()


def _minus_part_action(x: Mat, n):
    """Matrix M with [x, u_j] = sum_k M[k][j] u_k on the -1 block."""
    a0 = x.a[0][0]
    return [
        [x.a[k + 1][j + 1] - (a0 if j == k else GaussQ(0)) for j in range(n)]
        for k in range(n)
    ]


def g0_action(x: CD, psi: CurvElement) -> CurvElement:
    """Standard tensorial action of a grade-0 double element on the module."""
    n = psi.n
    M0 = _minus_part_action(x.u, n)
    M1 = _minus_part_action(x.b, n)
    out = CurvElement(n)
    for (sA, sB), w in psi.entries.items():
        out._accum((sA, sB), x.bracket(w))
        Ma = M0 if sA[0] == 0 else M1
        jA = sA[1] - 1
        for k in range(n):
            c = Ma[jA][k]
            if not c.is_zero():
                out._accum(((sA[0], k + 1), sB), w.scale(-c))
        Mb = M0 if sB[0] == 0 else M1
        jB = sB[1] - 1
        for k in range(n):
            c = Mb[jB][k]
            if not c.is_zero():
                out._accum((sA, (sB[0], k + 1)), w.scale(-c))
    return out


def lowest_weight_vector(ctype, n):
    """Returns (phi0, phi0 + conj(phi0)) for the requested module type."""
    if ctype not in CURV_TYPES:
        raise ValueError(f"unknown curvature type {ctype!r}")
    if n < 2:
        raise ValueError("n must be >= 2")
    g = SlPair(n)
    zero = Mat(n + 1)

    def unbarred(m):
        return CD(m, Mat(n + 1))

    if ctype == "I":
        slots = ((0, 1), (0, 2))
        value = Mat.unit(n + 1, 1, 2) if n == 2 else Mat.unit(n + 1, n + 1, 2)
    elif ctype == "II":
        slots = ((0, 1), (1, 1))
        value = Mat.unit(n + 1, n + 1, 2)
    elif ctype == "III":
        slots = ((1, 1), (1, 2))
        value = Mat.unit(n + 1, n + 1, 1)
    else:  # IV
        slots = ((0, 1), (1, 1))
        value = Mat.unit(n + 1, n + 1, 1)
    phi0 = CurvElement(n, {slots: unbarred(value)})
    psi = phi0 + phi0.conj()
    assert psi.is_real()
    return phi0, psi


@dataclass
class AnnihilatorResult:
    ctype: str
    n: int
    dim: int
    basis: list = field(repr=False)  # CD elements of the real g_0
    coords: list = field(repr=False)  # coordinates in the g_0 real basis


@dataclass
class ProlongationResult:
    ctype: str
    n: int
    minus_dim: int
    ann_dim: int
    plus_dim: int
    total: int
    rigid: bool


def _module_rows(sys, elem: CurvElement, col):
    for key, v in elem.coordinates().items():
        if v.re:
            sys.setdefault(("re",) + key, {})[col] = v.re
        if v.im:
            sys.setdefault(("im",) + key, {})[col] = v.im


def annihilator(psi: CurvElement, g: SlPair = None, ctype="?", gram=None):
    """Exact kernel of X |-> X.psi over the real grade-0 part."""
    n = psi.n
    g = g or SlPair(n)
    labels = [l for l in g.basis_labels if g.grade_of_label(l) == 0]
    cols = list(range(len(labels)))
    rows = {}
    for col, lbl in enumerate(labels):
        x = g.element_of_label(lbl)
        _module_rows(rows, g0_action(x, psi), col)
    sys = LinearSystem()
    sys.register_columns(cols)
    for row in rows.values():
        sys.add_row(row)
    kernel = sys.kernel()
    basis = []
    coords = []
    for vec in kernel:
        coords.append(vec)
        x = Mat(n + 1)
        for c, v in vec.items():
            x = x + g.element_of_label(labels[c]).u.scale(v)
        basis.append(realify(x))
    return AnnihilatorResult(ctype, n, len(kernel), basis, coords)


def tanaka_prolongation(psi: CurvElement, g: SlPair = None, ctype="?"):
    """Degree-one prolongation a_1 = {X in g_1 : [v,X].psi = 0 for all v}."""
    n = psi.n
    g = g or SlPair(n)
    plus = [l for l in g.basis_labels if g.grade_of_label(l) == 1]
    minus = [l for l in g.basis_labels if g.grade_of_label(l) == -1]
    rows = {}
    for col, lbl in enumerate(plus):
        x = g.element_of_label(lbl)
        for vl in minus:
            v = g.element_of_label(vl)
            _module_rows_tag(rows, g0_action(v.bracket(x), psi), col, vl)
    sys = LinearSystem()
    sys.register_columns(range(len(plus)))
    for row in rows.values():
        sys.add_row(row)
    plus_dim = sys.kernel_dim()
    ann = annihilator(psi, g, ctype)
    total = 2 * n + ann.dim + plus_dim
    return ProlongationResult(
        ctype, n, 2 * n, ann.dim, plus_dim, total, plus_dim == 0
    )


def _module_rows_tag(rows, elem, col, tag):
    for key, v in elem.coordinates().items():
        if v.re:
            rows.setdefault((tag, "re") + key, {})[col] = v.re
        if v.im:
            rows.setdefault((tag, "im") + key, {})[col] = v.im


DIAGONAL_CONDITIONS = {
    "I": "2(a0 - a1) - a2 + a_n = 0",
    "II": "2 Re(a0 - a1) = a1 - a_n",
    "III": "2 conj(a0) - a0 = conj(a1) + conj(a2) - a_n",
    "IV": "a1 + conj(a1) = conj(a0) + a_n",
}


def diagonal_condition_holds(ctype, n, ann: AnnihilatorResult) -> bool:
    """Check the published diagonal relation on every annihilator basis
    element (a_j denotes the (j+1,j+1) entry; valid for n >= 3, and for the
    types using a_2 also at n = 2 where a_2 = a_n)."""
    two = GaussQ(2)
    for x in ann.basis:
        a = [x.u.a[j][j] for j in range(n + 1)]
        if ctype == "I":
            cond = (a[0] - a[1]) * two - a[2] + a[n]
        elif ctype == "II":
            cond = GaussQ(two.re * (a[0].re - a[1].re)) - (a[1] - a[n])
        elif ctype == "III":
            cond = a[0].conj() * two - a[0] - (a[1].conj() + a[2].conj() - a[n])
        else:
            cond = a[1] + a[1].conj() - (a[0].conj() + a[n])
        if not cond.is_zero():
            return False
    return True


# -- published closed forms (cross-check route) -------------------------------


def annihilator_closed_form(ctype, n):
    if ctype == "I":
        return 4 if n == 2 else 2 * (n * n - 3 * n + 5)
    if ctype == "II":
        return 2 * (n * n - 2 * n + 2)
    if ctype == "III":
        return 4 if n == 2 else 2 * (n * n - 3 * n + 6)
    if ctype == "IV":
        return 2 * (n - 1) ** 2 + 2
    raise ValueError(ctype)


def bound_closed_form(ctype, n):
    """Algebraic symmetry bound 2n + dim ann (prolongation-rigid case)."""
    return 2 * n + annihilator_closed_form(ctype, n)


def submax_closed_form(ctype, n):
    """Realizable submaximal dimension per curvature type."""
    if ctype == "I":
        return 6 if n == 2 else 2 * n * n - 4 * n + 10
    if ctype == "II":
        return 2 * n * n - 2 * n + 4
    if ctype == "III":
        return 8 if n == 2 else 2 * n * n - 4 * n + 12
    if ctype == "IV":
        return 2 * n * n - 2 * n + 4
    raise ValueError(ctype)


def submax_overall(n):
    return 2 * n * n - 2 * n + 4 + (2 if n == 3 else 0)


def flat_dimension(n):
    return 2 * n * n + 4 * n


def upper_bound(ctype, n, g=None):
    """Computed bound: 2n + dim ann(phi0 + conj), checked rigid."""
    _, psi = lowest_weight_vector(ctype, n)
    pr = tanaka_prolongation(psi, g or SlPair(n), ctype)
    return pr.total, pr


@dataclass
class TableRow:
    n: int
    bounds: dict  # ctype -> computed algebraic bound
    closed: dict  # ctype -> closed-form bound
    submax: dict  # ctype -> realizable submaximal dimension
    overall: int
    rigid: bool
    advisories: list


def theorem_table(n_min=2, n_max=6):
    """One row per n: both routes for the bounds plus the realizable values."""
    if not (2 <= n_min <= n_max <= 8):
        raise ValueError("table range must satisfy 2 <= n_min <= n_max <= 8")
    rows = []
    for n in range(n_min, n_max + 1):
        g = SlPair(n)
        bounds = {}
        rigid = True
        advisories = []
        for ctype in CURV_TYPES:
            total, pr = upper_bound(ctype, n, g)
            bounds[ctype] = total
            rigid = rigid and pr.rigid
        closed = {t: bound_closed_form(t, n) for t in CURV_TYPES}
        submax = {t: submax_closed_form(t, n) for t in CURV_TYPES}
        if n == 2:
            advisories.append(
                "type I at n=2: algebraic bound 8 is not realizable; "
                "the submaximal dimension is 6"
            )
        overall = max(submax["I"], submax["II"], submax["III"])
        rows.append(TableRow(n, bounds, closed, submax, overall, rigid, advisories))
    return rows


# -- module span and generic elements (sanity routes) ---------------------------


def module_span(ctype, n, max_iter=60):
    """Basis of the g_0-submodule generated by the real extremal vector."""
    g = SlPair(n)
    _, psi = lowest_weight_vector(ctype, n)
    g0 = [g.element_of_label(l) for l in g.basis_labels if g.grade_of_label(l) == 0]
    span = SpanSolver()
    basis = []
    queue = [psi]
    span_add(span, basis, psi)
    it = 0
    while queue and it < max_iter:
        it += 1
        cur = queue.pop(0)
        for x in g0:
            nxt = g0_action(x, cur)
            if span_add(span, basis, nxt):
                queue.append(nxt)
    return basis


def span_add(span, basis, elem):
    if elem.is_zero():
        return False
    vec = {}
    for key, v in elem.coordinates().items():
        if v.re:
            vec[("re",) + key] = v.re
        if v.im:
            vec[("im",) + key] = v.im
    if span.insert(vec):
        basis.append(elem)
        return True
    return False


def generic_element(ctype, n, seed=1):
    """A pseudo-random rational combination of the module span."""
    basis = module_span(ctype, n)
    out = CurvElement(n)
    state = seed
    for b in basis:
        state = (state * 48271 + 11) % 2147483647
        c = (state % 19) - 9
        if c:
            out = out + b.scale(GaussQ(c))
    if out.is_zero():
        return basis[0]
    return out


def subalgebra_with_cochain(ctype, n):
    """The graded algebra g_{-1} (+) ann with the extremal cochain.

    Returns (labels, grades, bracket table, cochain table) in a form directly
    consumable by `structlie.StructAlgebra`: brackets and cochain values are
    sparse coefficient dicts over the returned labels.
    """
    g = SlPair(n)
    _, psi = lowest_weight_vector(ctype, n)
    ann = annihilator(psi, g, ctype)
    minus_labels = [l for l in g.basis_labels if g.grade_of_label(l) == -1]
    elements = [g.element_of_label(l) for l in minus_labels] + list(ann.basis)
    labels = [f"v{i+1}" for i in range(len(minus_labels))] + [
        f"a{i+1}" for i in range(ann.dim)
    ]
    grades = {lbl: (-1 if lbl.startswith("v") else 0) for lbl in labels}
    span = SpanSolver()
    for el in elements:
        vec = {i: c for i, c in enumerate(g.coordinates(el)) if c}
        if not span.insert(vec):
            raise RuntimeError("subalgebra basis is degenerate")

    def expand(el: CD):
        vec = {i: c for i, c in enumerate(g.coordinates(el)) if c}
        coeffs = span.decompose(vec)
        if coeffs is None:
            raise RuntimeError("bracket escapes the subalgebra")
        return {k: v for k, v in coeffs.items() if not v.is_zero()}

    table = {}
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            br = elements[i].bracket(elements[j])
            if br.is_zero():
                continue
            table[(i, j)] = expand(br)
    cochain = {}
    nm = len(minus_labels)
    for i in range(nm):
        for j in range(i + 1, nm):
            val = psi.evaluate(elements[i], elements[j])
            if val.is_zero():
                continue
            cochain[(i, j)] = expand(val)
    return labels, grades, table, cochain
