"""Rewrite a chunk as a sum of reduced components when that is cheap.

Two shapes are recognized: a hypersurface inside a linear space (factor
the single nonlinear generator) and a zero-dimensional chunk all of whose
points are rational.  Anything else is returned unchanged.
"""

from __future__ import annotations

from gmpy2 import mpq
from sympy import Poly as SymPoly
from sympy import QQ, factor_list, symbols

from svbullet.cycles.chunk import Chunk, multiplicity_at, point_ideal
from svbullet.ideals.groebner import groebner_polys
from svbullet.ideals.ideal import Ideal, hilbert
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import Poly, PolyRing


def _to_sympy(f: Poly, syms) -> SymPoly:
    terms = {m: QQ(int(c.numerator), int(c.denominator)) for m, c in f.terms.items()}
    return SymPoly.from_dict(terms, *syms, domain=QQ)


def _from_sympy(p: SymPoly, ring: PolyRing) -> Poly:
    return Poly(ring, {tuple(m): mpq(int(c.numerator), int(c.denominator)) for m, c in p.terms()})


def factor_poly(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible factors over Q with exponents (constants dropped)."""
    syms = symbols(f"v0:{f.ring.nvars}")
    _, facs = factor_list(_to_sympy(f, syms).as_expr(), *syms)
    out = []
    for g, e in facs:
        p = _from_sympy(SymPoly(g, *syms, domain=QQ), f.ring)
        if not p.is_constant():
            out.append((p.primitive(), int(e)))
    return out


def _hypersurface_in_linear(ch: Chunk) -> list[Chunk] | None:
    gens = ch.generators()
    lin = [g for g in gens if g.is_linear()]
    rest = [g for g in gens if not g.is_linear()]
    if len(rest) != 1:
        return None
    facs = factor_poly(rest[0])
    if len(facs) == 1 and facs[0][1] == 1:
        return [ch]
    out = [Chunk(Ideal(ch.ring, lin + [p]), ch.coefficient * e) for p, e in facs]
    return out


def _rational_roots(f: Poly, var: int) -> list[mpq]:
    roots = []
    x = f.ring.gen(var)
    for p, _ in factor_poly(f):
        if p.degree() == 1:
            a = p.diff(var).evaluate([0] * f.ring.nvars)
            b = (p - x * a).evaluate([0] * f.ring.nvars)
            roots.append(-b / a)
    return roots


def _eliminant(gb, var: int, bound: int) -> Poly | None:
    """Minimal polynomial of x_var modulo the ideal of gb (None past bound)."""
    ring = gb.ring
    x = ring.gen(var)
    rows: list[tuple[dict, dict]] = []  # (reduced normal form, combination of powers)
    power = ring.one()
    for k in range(bound + 1):
        vec = dict(gb.normal_form(power).terms)
        comb = {k: mpq(1)}
        for pv, (prow, pcomb) in rows:
            c = vec.get(pv)
            if c:
                for m, a in prow.items():
                    vec[m] = vec.get(m, 0) - c * a
                    if not vec[m]:
                        del vec[m]
                for j, a in pcomb.items():
                    comb[j] = comb.get(j, 0) - c * a
        if not vec:
            return Poly(ring, {tuple(j if i == var else 0 for i in range(ring.nvars)): c for j, c in comb.items()})
        pv = min(vec)
        inv = 1 / vec[pv]
        rows.append((pv, ({m: a * inv for m, a in vec.items()}, {j: a * inv for j, a in comb.items()})))
        power = power * x
    return None


def _affine_points(polys: list[Poly], ring: PolyRing, free: list[int], bound: int) -> list[dict]:
    """Rational solutions (as {var: value}) of a zero-dimensional affine system in the free variables."""
    if not free:
        return [{}] if all(p.is_zero() for p in polys) else []
    gb = groebner_polys(polys, ring)
    if gb.is_unit():
        return []
    last = free[-1]
    uni = _eliminant(gb, last, bound)
    if uni is None:
        return []
    out = []
    for r in _rational_roots(uni, last):
        sub = [ring.gen(i) for i in range(ring.nvars)]
        sub[last] = ring.constant(r)
        reduced = [g.ring_map(sub, ring) for g in gb.polys]
        reduced = [g for g in reduced if not g.is_zero()]
        if any(g.is_constant() for g in reduced):
            continue
        for sol in _affine_points(reduced, ring, free[:-1], bound):
            sol = dict(sol)
            sol[last] = r
            out.append(sol)
    return out


def rational_points(I: Ideal) -> list[ProjPoint]:
    """Rational points of a zero-dimensional projective scheme."""
    ring = I.ring
    n = ring.nvars
    bound = hilbert(I).degree  # the affine coordinate ring has at most this dimension
    found = []
    for i in range(n):
        sub = [ring.gen(j) for j in range(n)]
        for j in range(i):
            sub[j] = ring.zero()
        sub[i] = ring.one()
        polys = [g.ring_map(sub, ring) for g in I.gb().polys]
        polys = [p for p in polys if not p.is_zero()]
        if any(p.is_constant() for p in polys):
            continue
        for sol in _affine_points(polys, ring, list(range(i + 1, n)), bound):
            coords = [mpq(0)] * i + [mpq(1)] + [sol[j] for j in range(i + 1, n)]
            found.append(ProjPoint(coords))
    return found


def _zero_dim_points(ch: Chunk) -> list[Chunk] | None:
    pts = rational_points(ch.ideal)
    out = []
    total = 0
    for p in pts:
        m = multiplicity_at(ch.with_coefficient(1), p)
        if m:
            out.append(Chunk(point_ideal(p, ch.ring), ch.coefficient * m))
            total += ch.coefficient * m
    if total != ch.degree:
        return None
    return out


def canonical_chunks(ch: Chunk) -> list[Chunk]:
    """Same cycle as ch, split into reduced pieces where recognizable."""
    if ch.dim == 0:
        pts = _zero_dim_points(ch)
        if pts is not None:
            return pts
    parts = _hypersurface_in_linear(ch)
    if parts is not None:
        return parts
    return [ch]
