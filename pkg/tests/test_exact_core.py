"""Exact scalar, polynomial, parser, and linear-algebra substrate."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cprojver.linalg import ExactMatrix, LinearSystem, SpanSolver, signature
from cprojver.parse import ParseError, format_poly, parse_field, parse_poly
from cprojver.poly import LaurentPoly, PolyError, VarTable
from cprojver.scalars import GaussQ


XY = VarTable(["x", "y"])
XS = VarTable(["x", "s"], laurent=("s",))
XYD = VarTable(["x", "y"], denominators={"D1": {(2, 0): 1, (0, 2): 1, (0, 0): 1}})


def P(text, table=XY):
    return parse_poly(text, table)


class TestScalars:
    def test_gaussian_product(self):
        # (1 + i)*(1 - i) = 2 over Q(i)
        assert GaussQ(1, 1) * GaussQ(1, -1) == GaussQ(2)

    def test_division(self):
        a = GaussQ(Fraction(3, 4), Fraction(-2, 5))
        assert a / a == GaussQ(1)
        assert (GaussQ(1) / GaussQ(0, 1)) == GaussQ(0, -1)

    def test_lowest_terms_and_reality(self):
        a = GaussQ(Fraction(6, 4))
        assert a.re == Fraction(3, 2)
        assert a.is_real()
        assert (a - a).is_zero()


class TestPoly:
    def test_product_difference_of_squares(self):
        # (x + y)*(x - y) = x^2 - y^2
        assert P("(x+y)*(x-y)") == P("x^2-y^2")

    def test_laurent_cancellation(self):
        one = parse_poly("s^(-1)*s", XS)
        assert one == LaurentPoly.const(XS, 1)

    def test_negative_exponent_rejected_on_ordinary_var(self):
        with pytest.raises((PolyError, ParseError)):
            parse_poly("x^(-1)", XY)

    def test_partial_derivative(self):
        assert P("x^2*y").derivative("x") == P("2*x*y")
        assert P("x^2").derivative("y") == P("0")
        ps = parse_poly("s^(-2)", XS)
        assert ps.derivative("s") == parse_poly("-2*s^(-3)", XS)

    def test_unknown_variable(self):
        with pytest.raises((PolyError, ParseError)):
            P("x").derivative("q")

    def test_registry_mismatch_names_both(self):
        with pytest.raises(PolyError) as ei:
            P("x") + parse_poly("x", XS)
        msg = str(ei.value)
        assert "x" in msg and "s" in msg

    def test_denominator_tag_reduction(self):
        d1 = XYD.denominator_poly(0)
        q = parse_poly("x", XYD) / d1
        assert q.den == (1,)
        back = q * d1
        assert back == parse_poly("x", XYD) and back.den == (0,)

    def test_denominator_add(self):
        d1 = XYD.denominator_poly(0)
        one = parse_poly("1", XYD)
        s = one / d1 + one
        # (1 + D1)/D1 stays a reduced tagged fraction
        assert s.den == (1,)
        assert s * d1 == one + d1

    def test_derivative_with_denominator(self):
        d1 = XYD.denominator_poly(0)
        f = parse_poly("1", XYD) / d1
        df = f.derivative("x")
        # d/dx (1/D1) = -2x/D1^2
        assert df * d1 * d1 == parse_poly("-2*x", XYD)

    def test_evaluate(self):
        f = P("x^2+y/2")
        v = f.evaluate({"x": Fraction(2), "y": Fraction(3)})
        assert v == GaussQ(Fraction(11, 2))


coef = st.integers(min_value=-6, max_value=6)


def small_poly(draw, table):
    n = draw(st.integers(min_value=0, max_value=4))
    terms = {}
    for _ in range(n):
        e = (
            draw(st.integers(min_value=0, max_value=3)),
            draw(st.integers(min_value=0, max_value=3)),
        )
        c = draw(coef)
        if c:
            terms[e] = terms.get(e, 0) + c
    return LaurentPoly(table, {e: GaussQ(c) for e, c in terms.items() if c})


@st.composite
def poly_strategy(draw):
    return small_poly(draw, XY)


class TestPolyProperties:
    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(), poly_strategy(), poly_strategy())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(), poly_strategy())
    def test_leibniz(self, a, b):
        lhs = (a * b).derivative("x")
        rhs = a * b.derivative("x") + b * a.derivative("x")
        assert lhs == rhs

    @settings(max_examples=40, deadline=None)
    @given(poly_strategy())
    def test_print_parse_roundtrip(self, a):
        assert parse_poly(format_poly(a), XY) == a


class TestParser:
    def test_gaussian_coefficient(self):
        p = P("1/2+3/4*I")
        assert p.constant_value() == GaussQ(Fraction(1, 2), Fraction(3, 4))

    def test_whitespace_insensitive(self):
        assert P(" x +  2*y ") == P("x+2*y")

    def test_error_position(self):
        with pytest.raises(ParseError):
            P("x + ?")

    def test_division_by_declared_denominator(self):
        q = parse_poly("(x+y)/D1", XYD)
        assert q.den == (1,)
        assert parse_poly(format_poly(q), XYD) == q

    def test_field_parse(self):
        f = parse_field("x*D(y) - 2*D(x)", XY)
        assert f["y"] == P("x")
        assert f["x"] == P("-2")

    def test_field_product_rejected(self):
        with pytest.raises((ParseError, PolyError)):
            parse_field("D(x)*D(y)", XY)


class TestKernels:
    def test_rank_one_kernel(self):
        # [[1,1],[2,2]] -> kernel dim 1, canonical basis {(1,-1)}
        m = ExactMatrix([[1, 1], [2, 2]])
        assert m.rank() == 1
        k = m.kernel()
        assert len(k) == 1
        assert k[0] == [GaussQ(1), GaussQ(-1)]

    def test_identity_kernel_trivial(self):
        m = ExactMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert m.rank() == 3
        assert m.kernel() == []

    def test_gaussian_proportional_rows(self):
        # [[i,1],[1,-i]] over Q(i): rows proportional, kernel dim 1
        i = GaussQ(0, 1)
        m = ExactMatrix([[i, GaussQ(1)], [GaussQ(1), -i]])
        assert m.rank() == 1
        k = m.kernel()
        assert len(k) == 1
        for v in k:
            prod = m.mul_vector(v)
            assert all(x.is_zero() for x in prod)

    def test_empty_matrix_full_space(self):
        m = ExactMatrix([], ncols=3)
        assert m.rank() == 0
        assert len(m.kernel()) == 3

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=4, max_size=4),
            min_size=1,
            max_size=6,
        )
    )
    def test_rank_nullity_and_verification(self, rows):
        m = ExactMatrix(rows)
        k = m.kernel()
        assert m.rank() + len(k) == m.ncols
        for v in k:
            assert all(x.is_zero() for x in m.mul_vector(v))

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=5, max_size=5),
            min_size=1,
            max_size=7,
        )
    )
    def test_bareiss_agrees_with_sparse_gauss(self, rows):
        m = ExactMatrix(rows)
        assert m.rank_bareiss() == m.rank_sparse()

    def test_fraction_rows(self):
        sys = LinearSystem()
        sys.register_columns([0, 1, 2])
        sys.add_row({0: Fraction(1, 2), 1: Fraction(1, 3)})
        sys.add_row({1: Fraction(2), 2: Fraction(-1)})
        basis = sys.kernel()
        assert len(basis) == 1

    def test_deterministic_kernel(self):
        rows = [[1, 2, 3, 4], [0, 0, 1, 1]]
        k1 = ExactMatrix(rows).kernel()
        k2 = ExactMatrix(rows).kernel()
        assert k1 == k2
        for v in k1:
            lead = next(x for x in v if not x.is_zero())
            assert lead == GaussQ(1)


class TestSpanSolver:
    def test_membership_and_decomposition(self):
        s = SpanSolver()
        assert s.insert({"a": Fraction(1), "b": Fraction(2)})
        assert s.insert({"b": Fraction(1)})
        assert not s.insert({"a": Fraction(2), "b": Fraction(1)})
        coeffs = s.decompose({"a": Fraction(3), "b": Fraction(4)})
        assert coeffs == {0: GaussQ(3), 1: GaussQ(-2)}
        assert s.decompose({"c": Fraction(1)}) is None


class TestSignature:
    def test_definite(self):
        assert signature([[2, 0], [0, 3]]) == (2, 0, 0)

    def test_hyperbolic_plane(self):
        assert signature([[0, 1], [1, 0]]) == (1, 1, 0)

    def test_degenerate(self):
        assert signature([[1, 1], [1, 1]]) == (1, 0, 1)

    def test_split_block_with_tail(self):
        m = [
            [0, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, -5, 0],
            [0, 0, 0, 7],
        ]
        assert signature(m) == (2, 2, 0)
