import numpy as np
import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from conftest import FIXTURES
from svbullet.cycles import (
    Chunk,
    cut_with_divisor,
    cycle_degree,
    format_cycle,
    is_proper_cut,
    make_full_space,
    make_hypersurface,
    make_linear_space,
    make_point,
    multiplicity_at,
    parse_cycle,
    point_on_support,
    split_by,
    support_contained,
    supports_equal,
    total_degree,
)
from svbullet.cycles.canonical import canonical_chunks, rational_points
from svbullet.errors import ImproperCutError, InputError, ParseError
from svbullet.ideals.ideal import Ideal
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import PolyRing

R = PolyRing.projective(2)
R3 = PolyRing.projective(3)


def ch(ring, *gens, coeff=1):
    return Chunk(Ideal(ring, [ring(g) for g in gens]), coeff)


# ------------------------------------------------------------ builders


def test_builders():
    assert cycle_degree(make_hypersurface(R("x1^3 - x0*x2^2"))) == {1: 3}
    assert cycle_degree(make_hypersurface(R("x0"), 4)) == {1: 4}
    assert cycle_degree(make_linear_space([R3("x0"), R3("x1 + x2")])) == {1: 1}
    assert cycle_degree(make_point(ProjPoint([1, 2, 3]), 2)) == {0: 2}
    assert cycle_degree(make_full_space(3)) == {3: 1}
    assert make_linear_space([], R).is_pure()


def test_builder_errors():
    with pytest.raises(InputError):
        make_hypersurface(R("x0^2 + x1"))
    with pytest.raises(InputError):
        make_hypersurface(R("0"))
    with pytest.raises(InputError):
        make_linear_space([R("x0"), R("2*x0")])
    with pytest.raises(InputError):
        make_linear_space([R("x0*x1")])
    with pytest.raises(InputError):
        Chunk(Ideal(R, [R("x0")]), 0)
    with pytest.raises(InputError):
        Chunk(Ideal.irrelevant(R))


def test_cycle_algebra():
    a = make_hypersurface(R("x0"))
    b = make_point(ProjPoint([0, 0, 1]))
    s = a + b
    assert sorted(s.dims()) == [0, 1]
    assert not s.is_pure()
    assert total_degree(s.scaled(3)) == 6
    assert s.part(0).equivalent(b)


# ------------------------------------------------------------ multiplicity


def _sym_order(expr, syms, p):
    """Order of vanishing of a plane curve at p, by expansion in the chart of p."""
    i = next(k for k, c in enumerate(p) if c != 0)
    sub = {syms[i]: 1}
    loc = [s for k, s in enumerate(syms) if k != i]
    t = sympy.symbols("t0:2")
    for s, tt, k in zip(loc, t, [k for k in range(3) if k != i]):
        sub[s] = tt + sympy.Rational(p[k], p[i])
    f = sympy.Poly(sympy.expand(expr.subs(sub, simultaneous=True)), *t)
    return min(sum(m) for m in f.monoms()) if not f.is_zero else None


@pytest.mark.parametrize("seed", range(20))
def test_multiplicity_matches_order_of_vanishing(seed):
    rng = np.random.default_rng(seed)
    x = sympy.symbols("x0:3")
    m = int(rng.integers(1, 4))
    F0 = sum(
        int(rng.integers(-5, 6)) * x[0] ** i * x[1] ** j * x[2] ** (3 - i - j)
        for i in range(4)
        for j in range(4 - i)
        if i + j >= m
    )
    if F0 == 0:
        F0 = x[0] ** m * x[2] ** (3 - m)
    while True:
        M = sympy.Matrix(3, 3, [int(v) for v in rng.integers(-3, 4, 9)])
        if M.det() != 0:
            break
    y = M * sympy.Matrix(x)
    F = sympy.expand(F0.subs(dict(zip(x, y)), simultaneous=True))
    p = list(M.inv() * sympy.Matrix([0, 0, 1]))
    expect = _sym_order(F, x, p)
    point = ProjPoint([mpq(int(c.p), int(c.q)) for c in p])
    assert multiplicity_at(make_hypersurface(R(str(F).replace("**", "^"))), point) == expect
    other = ProjPoint([1, 1, 1])
    expect_other = _sym_order(F, x, [1, 1, 1])
    assert multiplicity_at(make_hypersurface(R(str(F).replace("**", "^"))), other) == expect_other


def test_multiplicity_examples():
    cusp = make_hypersurface(R("x1^3 - x0*x2^2"))
    assert multiplicity_at(cusp, ProjPoint([1, 0, 0])) == 2
    assert multiplicity_at(cusp, ProjPoint([1, 1, 1])) == 1
    assert multiplicity_at(cusp, ProjPoint([0, 1, 1])) == 0
    assert multiplicity_at(make_full_space(2), ProjPoint([1, 2, 3])) == 1
    line = make_linear_space([R3("x2"), R3("x3")])
    assert multiplicity_at(line.scaled(3), ProjPoint([1, 5, 0, 0])) == 3


def test_zero_dimensional_mass_equals_degree():
    c = ch(R, "x1^2*(x1 - x0)", "x2*(x2 - x0)")
    assert c.degree == 6
    pts = rational_points(c.ideal)
    assert len(pts) == 4
    assert sum(multiplicity_at(c, p) for p in pts) == 6
    assert sorted(multiplicity_at(c, p) for p in pts) == [1, 1, 2, 2]
    parts = canonical_chunks(c)
    assert sum(q.degree for q in parts) == 6 and all(q.hilbert_degree == 1 for q in parts)


def test_canonical_hypersurface_split():
    c = ch(R3, "x3", "x0^2*x1")
    parts = canonical_chunks(c)
    assert sorted((q.coefficient, str(q.ideal.reduced().gens)) for q in parts)[0][0] == 1
    assert sum(q.degree for q in parts) == 3 and len(parts) == 2


# ------------------------------------------------------------ split / cut


def test_split_by():
    c = ch(R, "x0^2*x1")
    inside, outside = split_by(c, Ideal(R, [R("x0")]))
    assert inside.ideal == Ideal(R, [R("x0^2")]) and outside.ideal == Ideal(R, [R("x1")])
    assert split_by(c, Ideal.zero(R)) == (c, None)
    assert split_by(c, Ideal.unit(R)) == (None, c)
    assert split_by(c, Ideal(R, [R("x2")])) == (None, c)
    # a point contains no component of the curve
    assert split_by(c, Ideal(R, [R("x0"), R("x1")])) == (None, c)


def test_cut_double_line():
    c = ch(R, "x0^2")
    cut = cut_with_divisor(c, R("x1"))
    assert cut.dim == 0 and cut.degree == 2
    assert multiplicity_at(cut, ProjPoint([0, 0, 1])) == 2


def test_cut_embedded_point_removed():
    # the plane conic meets the plane x0 = 0 in a double point
    c = ch(R3, "x3", "x1^2 - x0*x2")
    cut = cut_with_divisor(c, R3("x0"))
    assert cut.degree == 2 and multiplicity_at(cut, ProjPoint([0, 0, 1, 0])) == 2


def test_improper_cut():
    c = ch(R, "x0*x1")
    assert not is_proper_cut(c, R("x0"))
    with pytest.raises(ImproperCutError):
        cut_with_divisor(c, R("x0"))


def test_cut_points_is_none():
    assert cut_with_divisor(ch(R, "x0", "x1"), R("x0 + x2")) is None


def test_supports():
    dbl = Ideal(R, [R("x0^2")])
    line = Ideal(R, [R("x0")])
    assert supports_equal(dbl, line)
    assert support_contained(Ideal(R, [R("x0"), R("x1")]), line)
    assert not support_contained(line, Ideal(R, [R("x0"), R("x1")]))
    assert point_on_support(dbl, ProjPoint([0, 1, 1]))


# ------------------------------------------------------------ text format


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.cyc")), ids=lambda p: p.name)
def test_round_trip_fixtures(path):
    c = parse_cycle(path.read_text())
    back = parse_cycle(format_cycle(c))
    assert back.equivalent(c)
    assert format_cycle(back) == format_cycle(c)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "line 1"),
        ("ambient x\n", "line 1"),
        ("ambient 2\nx0\n", "line 2"),
        ("ambient 2\n# c\ncomponent coeff=0\nx0\n", "line 3"),
        ("ambient 2\ncomponent\nx0^2 + x1\n", "line 3"),
        ("ambient 2\ncomponent\nx0^2\nx0*x1\n", "line 2"),
        ("ambient 2\ncomponent dim=0\nx0\n", "line 2"),
        ("ambient 2\npoint [1,0]\n", "line 2"),
        ("ambient 2\nhypersurface x0 + + x1\n", "line 2"),
        ("ambient 2\ncomponent\nx0\nx1\nx2\n", "line 2"),
        ("ambient 2\nfull colour=3\n", "line 2"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises((ParseError, InputError)) as info:
        parse_cycle(text)
    assert fragment in str(info.value)


def test_parse_shorthand():
    c = parse_cycle("ambient 2\npoint [1,0,0] coeff=2\nhypersurface x0*x2 - x1^2 degree=2\nfull\n")
    assert cycle_degree(c) == {0: 2, 1: 2, 2: 1}


@given(st.integers(1, 5), st.integers(1, 3))
def test_coefficients_scale_degree(k, d):
    c = make_hypersurface(R(f"x0^{d} - x1^{d}"), k)
    assert total_degree(parse_cycle(format_cycle(c))) == k * d


def test_canonical_keeps_irrational_points_together():
    c = ch(R, "x1", "x0^2 - 2*x2^2")
    assert canonical_chunks(c) == [c]
    mixed = ch(R, "x1", "x0*(x0^2 - 2*x2^2)")
    assert rational_points(mixed.ideal) == [ProjPoint([0, 0, 1])]
    # the hypersurface-in-a-line split still separates the rational point
    parts = sorted(canonical_chunks(mixed), key=lambda q: q.degree)
    assert [q.degree for q in parts] == [1, 2]
    assert parts[0].ideal == Ideal(R, [R("x0"), R("x1")])
