
import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from svbullet.errors import ParseError
from svbullet.kernel.linalg import complete_basis, matrix_det, matrix_inverse, matrix_rank
from svbullet.kernel.orders import GREVLEX, LEX, block_order
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import Poly, PolyRing
from svbullet.kernel.rand import (
    random_coordinate_change,
    random_linear_combination,
    random_ints,
    stream,
)

R = PolyRing.projective(2)
exps3 = st.tuples(*[st.integers(0, 4)] * 3)
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
polys = st.dictionaries(exps3, coeffs, max_size=5).map(
    lambda d: Poly(R, {m: mpq(c.numerator, c.denominator) for m, c in d.items()})
)


def test_parse_and_print():
    f = R.parse("x1^3 - x0*x2^2")
    assert str(f) == "x1^3 - x0*x2^2"
    assert f.degree() == 3 and f.is_homogeneous()
    assert R.parse("2(x0 + x1)x2") == R("2*x0*x2 + 2*x1*x2")
    assert str(R("3/4*x0 - x1/2")) == "3/4*x0 - 1/2*x1"


def test_parse_errors():
    with pytest.raises(ParseError):
        R.parse("x0 + ")
    with pytest.raises(ParseError):
        R.parse("y7")


@given(polys)
def test_print_round_trip(f):
    assert R.parse(str(f)) == f


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()


@given(polys, polys)
def test_degree_of_product(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert (f * g).degree() == f.degree() + g.degree()


@given(polys, st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_evaluate_is_a_homomorphism(f, pt):
    g = f * f + R("x0")
    assert g.evaluate(pt) == f.evaluate(pt) ** 2 + pt[0]


def test_homogenize_dehomogenize():
    f = R("x1^2 + x2 + 1")
    h = f.homogenize(0)
    assert h == R("x1^2 + x0*x2 + x0^2")
    assert h.dehomogenize(0) == f


def test_ring_map_and_diff():
    f = R("x0*x1^2")
    g = f.ring_map([R("x0 + x1"), R("x2"), R("x1")])
    assert g == R("x0*x2^2 + x1*x2^2")
    assert f.diff(1) == R("2*x0*x1")


def test_join_ring_names():
    J = PolyRing.join(1, 2)
    assert J.names == ("x0_1", "x1_1", "x0_2", "x1_2")


def test_points():
    p = ProjPoint.parse("[2, 4, 0]")
    assert p == ProjPoint([1, 2, 0])
    assert str(p) == "[1,2,0]"
    assert ProjPoint([0, 3, 1]).chart() == 1
    with pytest.raises(ValueError):
        ProjPoint([0, 0])
    with pytest.raises(ParseError):
        ProjPoint.parse("1,2")


@given(st.lists(st.tuples(*[st.integers(0, 5)] * 3), min_size=2, max_size=6, unique=True))
def test_orders_are_consistent(ms):
    for order in (GREVLEX, LEX, block_order(1)):
        codec = order.codec(3)
        enc = [codec.encode(m) for m in ms]
        assert [codec.decode(e) for e in enc] == ms
        # multiplicative: a < b  =>  a*c < b*c
        c = (1, 2, 0)
        for a, b in zip(enc, enc[1:]):
            ac = codec.encode(tuple(x + y for x, y in zip(codec.decode(a), c)))
            bc = codec.encode(tuple(x + y for x, y in zip(codec.decode(b), c)))
            assert (a < b) == (ac < bc)


def test_grevlex_leading_term():
    f = R("x0^2 + x0*x1 + x1^2 + x2^3")
    assert f.sorted_terms()[0][0] == (0, 0, 3)
    codec = GREVLEX.codec(3)
    # among degree-2 monomials grevlex prefers small powers of the last variable
    assert codec.encode((1, 1, 0)) < codec.encode((1, 0, 1))


def test_linalg():
    assert matrix_det([[1, 2], [3, 4]]) == -2
    assert matrix_inverse([[2, 0], [0, 4]]) == [[mpq(1, 2), 0], [0, mpq(1, 4)]]
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    basis = complete_basis([[1, 1, 0]], 3)
    assert len(basis) == 3 and matrix_rank(basis) == 3


def test_streams_are_deterministic_and_independent():
    a = random_ints(stream(5, "x", 1), 4)
    assert a == random_ints(stream(5, "x", 1), 4)
    assert a != random_ints(stream(5, "x", 2), 4)
    assert all(-9999 <= v <= 9999 for v in a)


def test_random_linear_combination():
    forms = [R("x0"), R("x1")]
    h = random_linear_combination(forms, 3, 0)
    assert h == random_linear_combination(forms, 3, 0)
    assert h.is_linear() and not h.is_zero()
    with pytest.raises(ValueError):
        random_linear_combination([R("x0^2")], 3, 0)


def test_coordinate_change_round_trip():
    T = random_coordinate_change(R, 11)
    f = R("x1^3 - x0*x2^2")
    assert T.invert(T.apply(f)) == f
    p = [1, 0, 0]
    q = T.point_image(p)
    assert T.apply(f).evaluate(q) == 0
