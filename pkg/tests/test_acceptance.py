"""The twelve acceptance criteria, exact integers throughout.

Each test appends one PASS/FAIL line; the lines are printed in the
"acceptance criteria" section of the terminal summary.
"""

import functools
import importlib
import itertools
import subprocess
import sys
from pathlib import Path

from gmpy2 import mpq

from conftest import ACCEPTANCE_LINES, FIXTURES
from svbullet.cycles import (
    Chunk,
    Cycle,
    make_full_space,
    make_hypersurface,
    make_point,
    multiplicity_at,
    read_cycle,
    supports_equal,
    total_degree,
)
from svbullet.cycles.canonical import rational_points
from svbullet.ideals.ideal import Ideal
from svbullet.intersect.bullet import bullet, bullet_direct_linear, cycle_support
from svbullet.intersect.join import ruled_join
from svbullet.intersect.local import epsilon, polar_self_intersection_oracle
from svbullet.kernel.linalg import matrix_det, rref
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import PolyRing
from svbullet.kernel.rand import DEFAULT_SEED, random_ints, stream

bullet_mod = importlib.import_module("svbullet.intersect.bullet")
sv_mod = importlib.import_module("svbullet.intersect.sv")

REPORTS: list = []  # (label, report, inputs) of every product computed here


def criterion(number: int, title: str):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                ACCEPTANCE_LINES.append(f"criterion {number:2d}: FAIL  {title}  ({type(exc).__name__}: {exc})")
                raise
            ACCEPTANCE_LINES.append(f"criterion {number:2d}: PASS  {title}")

        return wrapper

    return deco


def cyc(name: str) -> Cycle:
    return read_cycle(FIXTURES / f"{name}.cyc")


def product(*cycles, label="", direct=False, seed=DEFAULT_SEED):
    rep = bullet_direct_linear(*cycles, seed=seed) if direct else bullet(*cycles, seed=seed)
    REPORTS.append((label, rep, cycles))
    return rep


def fixed_of(rep, dim=None):
    """(dim, degree, coefficient, ideal) of each fixed component."""
    return sorted((c.dim, c.degree, c.coefficient, c.chunks[0].ideal.key()) for c in rep.fixed(dim))


def ideal_key(ring, *gens):
    return Ideal(ring, [ring(g) for g in gens]).key()


P2, P3, P6 = PolyRing.projective(2), PolyRing.projective(3), PolyRing.projective(6)


@criterion(1, "three distinct lines through a in P^3: fixed [a], total 1 = bezout 1, eps_0 = 1")
def test_c01_lines():
    lines = [cyc(f"line{i}") for i in (1, 2, 3)]
    rep = product(*lines, label="lines")
    a = ProjPoint([1, 0, 0, 0])
    assert rep.rho == -3
    assert fixed_of(rep) == [(0, 1, 1, ideal_key(P3, "x1", "x2", "x3"))]
    assert not rep.moving()
    assert rep.total_degree == 1 and rep.bezout_product == 1
    assert epsilon(*lines, x=a, report=rep).values[0] == 1


CUSP_POINTS = [[u**3, u, 1] for u in (mpq(0), mpq(1), mpq(2), mpq(-1), mpq(1, 2))]


@criterion(2, "cusp self-intersection: cusp + 3[a] fixed, moving deg 3 with mult 0 on the cusp, total 9")
def test_c02_cusp():
    c = cyc("cusp")
    rep = product(c, c, label="cusp.cusp")
    assert fixed_of(rep) == [
        (0, 3, 3, ideal_key(P2, "x1", "x2")),
        (1, 3, 1, ideal_key(P2, "x1^3 - x0*x2^2")),
    ]
    moving = rep.moving()
    assert [(m.dim, m.degree) for m in moving] == [(0, 3)]
    assert rep.total_degree == 9 == 3 * 3
    F = P2("x1^3 - x0*x2^2")
    for p in CUSP_POINTS:
        x = ProjPoint(p)
        assert F.evaluate(list(x)) == 0
        for run in range(len(moving[0].witnesses)):
            assert moving[0].multiplicity_at(x, run) == 0


@criterion(3, "graph closure: deg Z = 4, A.Z = P + moving line + 2[a], eps at a = (2,1,1)")
def test_c03_graph():
    A, Z = cyc("graph_a"), cyc("graph_z")
    assert total_degree(Z) == 4
    rep = product(A, Z, label="graph", direct=True)
    assert fixed_of(rep) == [
        (0, 2, 2, ideal_key(P6, *(f"x{i}" for i in range(1, 7)))),
        (2, 1, 1, ideal_key(P6, "x3", "x4", "x5", "x6")),
    ]
    assert [(m.dim, m.degree) for m in rep.moving()] == [(1, 1)]
    assert rep.total_degree == 4
    a = ProjPoint([1, 0, 0, 0, 0, 0, 0])
    assert epsilon(A, Z, x=a, report=rep, direct_linear=True).values == [2, 1, 1]


@criterion(4, "non-associativity (m = 3): H3.(H2.Z) = 2A + 2[b] but (H3.H2).Z = A + 3[a]")
def test_c04_non_associativity():
    H2, H3, Z = cyc("h2"), cyc("h3"), cyc("surface_z")
    r1 = product(H2, Z, label="H2.Z")
    assert not r1.moving()
    assert fixed_of(r1) == sorted([(1, 2, 2, ideal_key(P3, "x2", "x3")), (1, 2, 2, ideal_key(P3, "x0", "x2"))])
    r2 = product(H3, r1.fixed_cycle(), label="H3.(H2.Z)")
    assert not r2.moving()
    assert fixed_of(r2) == sorted(
        [(1, 2, 2, ideal_key(P3, "x2", "x3")), (0, 2, 2, ideal_key(P3, "x0", "x2", "x3"))]
    )
    r3 = product(H3, H2, label="H3.H2")
    assert fixed_of(r3) == [(1, 1, 1, ideal_key(P3, "x2", "x3"))] and not r3.moving()
    r4 = product(r3.fixed_cycle(), Z, label="(H3.H2).Z")
    assert not r4.moving()
    assert fixed_of(r4) == sorted(
        [(1, 1, 1, ideal_key(P3, "x2", "x3")), (0, 3, 3, ideal_key(P3, "x1", "x2", "x3"))]
    )
    # both cycles live on A (b and a are points of A), but the cycles differ,
    # and so do the supports of their zero-dimensional parts
    assert not r2.fixed_cycle().equivalent(r4.fixed_cycle())
    assert not supports_equal(cycle_support(r2.fixed_cycle().part(0)), cycle_support(r4.fixed_cycle().part(0)))


@criterion(5, "smooth conic: conic.conic = conic + moving of degree d^2 - d = 2")
def test_c05_conic():
    c = cyc("conic")
    rep = product(c, c, label="conic.conic")
    assert fixed_of(rep) == [(1, 2, 1, ideal_key(P2, "x0*x2 - x1^2"))]
    assert [(m.dim, m.degree) for m in rep.moving()] == [(0, 2)]


@criterion(6, "join degrees: deg of the ruled join = product of degrees on 20 random pairs/triples")
def test_c06_join():
    pool = ["cusp", "conic", "nodal", "conic_a", "conic_b", "point_a2", "line_x1", "full2"]
    rng = stream(DEFAULT_SEED, "acceptance-join")
    for _ in range(20):
        r = int(rng.integers(2, 4))
        cycles = [cyc(pool[int(i)]) for i in rng.integers(0, len(pool), r)]
        J = ruled_join(*cycles)
        expect = 1
        for c in cycles:
            expect *= total_degree(c)
        assert total_degree(J) == expect


def _random_pencil_pair(seed):
    rng = stream(seed, "acceptance-pencil")
    while True:
        pts = [ProjPoint([1] + random_ints(rng, 2, bound=5)) for _ in range(4)]
        # no three collinear, so every pair of distinct pencil members meets properly
        if any(matrix_det([list(p) for p in trio]) == 0 for trio in itertools.combinations(pts, 3)):
            continue
        # conics through the four points: kernel of the evaluation map
        monos = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
        rows = [[p[0] ** m[0] * p[1] ** m[1] * p[2] ** m[2] for m in monos] for p in pts]
        red, pivots = rref(rows)
        free = [j for j in range(6) if j not in pivots]
        if len(free) != 2:
            continue
        basis = []
        for f in free:
            v = [mpq(0)] * 6
            v[f] = mpq(1)
            for i, pc in enumerate(pivots):
                v[pc] = -red[i][f]
            basis.append(P2.from_terms({m: c for m, c in zip(monos, v)}))
        s = random_ints(rng, 4, bound=9)
        F = basis[0] * s[0] + basis[1] * s[1]
        G = basis[0] * s[2] + basis[1] * s[3]
        if s[0] * s[3] - s[1] * s[2] == 0:
            continue
        return F, G, pts


@criterion(7, "proper Bezout: two random conics meet in 4 fixed points, colength multiplicities sum to 4")
def test_c07_bezout():
    F, G, pts = _random_pencil_pair(DEFAULT_SEED)
    rep = product(make_hypersurface(F), make_hypersurface(G), label="random conics")
    assert rep.rho == 0 and not rep.moving() and rep.total_degree == 4
    assert len(rep.fixed(0)) == 4
    ci = Chunk(Ideal(P2, [F, G]))
    assert sorted(rational_points(ci.ideal), key=str) == sorted(pts, key=str)
    oracle = [multiplicity_at(ci, p) for p in pts]
    assert sum(oracle) == 4
    for p, m in zip(pts, oracle):
        assert sum(c.multiplicity_at(p) for c in rep.fixed(0)) == m


@criterion(8, "identity and point laws: full.mu = mu and a.mu = mult_a(mu)[a] on 5 fixtures")
def test_c08_laws():
    a = ProjPoint([1, 0, 0])
    pa = make_point(a)
    for name in ("cusp", "nodal", "conic", "line_x1", "point_b2"):
        mu = cyc(name)
        rep = product(make_full_space(2), mu, label=f"full.{name}")
        assert not rep.moving()
        assert rep.fixed_cycle().equivalent(mu)
        rep = product(pa, mu, label=f"a.{name}")
        m = multiplicity_at(mu, a)
        assert not rep.moving()
        if m == 0:
            assert rep.components == []
        else:
            assert fixed_of(rep) == [(0, m, m, ideal_key(P2, "x1", "x2"))]


@criterion(9, "mass audits: every SV run balances exactly; two distinct points leave deficit 1")
def test_c09_mass(monkeypatch):
    audits = []
    original = sv_mod.sv_mass_check

    def recording(out, input_degree=None):
        res = original(out, input_degree)
        audits.append(res)
        return res

    monkeypatch.setattr(bullet_mod, "sv_mass_check", recording)
    for names in [("cusp", "cusp"), ("nodal", "conic"), ("point_a2", "cusp"), ("line_x1", "line_x2")]:
        product(*(cyc(n) for n in names), label=".".join(names))
    rep = product(cyc("point_a2"), cyc("point_b2"), label="two points")
    assert rep.components == [] and rep.residual_degree == 1 and rep.bezout_product == 1
    assert audits and all(a.balanced and a.inside_degree + a.residual_term == a.input_degree for a in audits)
    assert audits[-1].residual_term == 1


@criterion(10, "polar oracle: cusp 6 = 3 + 3; moving degree = d^2 - d - sum m_i on cusp and conic")
def test_c10_polar():
    for name, singular in (("cusp", 3), ("conic", 0)):
        c = cyc(name)
        F = c.chunks[0].generators()[0]
        d = F.degree()
        res = polar_self_intersection_oracle(F)
        assert res.degree == d * d - d
        assert res.singular_mass == singular
        rep = product(c, c, label=f"{name}.{name} (polar)")
        assert sum(m.degree for m in rep.moving()) == d * d - d - res.singular_mass
    assert res.degree == 2
    cusp = polar_self_intersection_oracle(cyc("cusp").chunks[0].generators()[0])
    assert (cusp.degree, cusp.singular_mass, cusp.moving) == (6, 3, 3)


@criterion(11, "degree level: fulton_degree(cusp.cusp) = 9 and equals bezout whenever rho >= 0")
def test_c11_fulton():
    c = cyc("cusp")
    rep = product(c, c, label="cusp.cusp (fulton)")
    assert rep.fulton_degree == 9 == rep.bezout_product
    checked = 0
    for label, r, inputs in REPORTS:
        if r.rho >= 0 and all(x.is_pure() for x in inputs):
            assert r.fulton_degree == r.bezout_product, label
            checked += 1
    assert checked >= 5


@criterion(12, "property suites (invariance, commutativity, seed stability, path consistency) with 3 seeds")
def test_c12_properties():
    here = Path(__file__).resolve().parent
    names = ["test_linear_invariance", "test_commutativity", "test_seed_stability", "test_path_consistency"]
    res = subprocess.run(
        [sys.executable, "-m", "pytest", str(here / "test_properties.py"), "-q", "-p", "no:cacheprovider",
         "-k", " or ".join(names)],
        capture_output=True,
        text=True,
        cwd=here.parent,
    )
    assert res.returncode == 0, res.stdout[-2000:]
    assert " passed" in res.stdout and "failed" not in res.stdout
