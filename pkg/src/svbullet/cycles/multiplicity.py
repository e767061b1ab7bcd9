"""Hilbert-Samuel multiplicity of a homogeneous ideal at a rational point.

The point is moved to the origin of an affine chart and the colength
H(s) = dim_Q Q[y]/(J + m^s) is sampled for s = 1, 2, ...; the d-th finite
difference of H is eventually the multiplicity, d the local dimension.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from svbullet.errors import StabilizationError
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import Poly, PolyRing

WINDOW = 3
MAX_S = 40


def on_zero_set(gens: Sequence[Poly], x: ProjPoint) -> bool:
    return all(g.evaluate(x.coords) == 0 for g in gens)


def local_generators(gens: Sequence[Poly], x: ProjPoint) -> tuple[list[dict], int]:
    """Generators in the chart x_i = 1 with x moved to the origin.

    Exactly linear generators are used to eliminate variables first, so the
    returned polynomials live in fewer variables.  Each is a dict
    {exponent tuple: mpq} in a common set of variables.
    """
    if not gens:
        return [], 0
    ring = gens[0].ring
    i = x.chart()
    names = [nm for k, nm in enumerate(ring.names) if k != i]
    aff = PolyRing(names)
    images = []
    k = 0
    for j in range(ring.nvars):
        if j == i:
            images.append(aff.one())
        else:
            images.append(aff.gen(k) + aff.constant(x[j]))
            k += 1
    polys = [g.ring_map(images, aff) for g in gens]
    polys = [p for p in polys if not p.is_zero()]
    # eliminate variables using generators that are exactly linear
    while True:
        lin = next((p for p in polys if p.degree() == 1), None)
        if lin is None:
            break
        coeffs = lin.linear_coeffs()
        v = max(j for j in range(aff.nvars) if coeffs[j])
        # v = -(rest)/coeff; note lin has no constant term since x lies on it
        sub = (aff.gen(v) * coeffs[v] - lin) / coeffs[v]
        keep = [nm for j, nm in enumerate(aff.names) if j != v]
        small = PolyRing(keep)
        imgs = []
        kk = 0
        for j in range(aff.nvars):
            if j == v:
                imgs.append(None)
            else:
                imgs.append(small.gen(kk))
                kk += 1
        sub_small = sub.ring_map([small.zero() if im is None else im for im in imgs], small)
        imgs[v] = sub_small
        polys = [p.ring_map(imgs, small) for p in polys if p is not lin]
        polys = [p for p in polys if not p.is_zero()]
        aff = small
    return [dict(p.terms) for p in polys], aff.nvars


def _monomials_below(nvars: int, s: int) -> list[tuple]:
    """All exponent vectors of total degree < s."""
    out = []
    for deg in range(s):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


def _count_below(nvars: int, s: int) -> int:
    return comb(nvars + s - 1, nvars) if nvars else 1


def colength(polys: list[dict], nvars: int, s: int) -> int:
    """dim_Q Q[y]/(J + m^s) for J generated by polys (all vanishing at 0)."""
    total = _count_below(nvars, s)
    if nvars == 0:
        # zero-dimensional affine space: the quotient is Q unless J is the unit ideal
        return 0 if any(polys) else (1 if s > 0 else 0)
    pivots: dict = {}
    for p in polys:
        low = min(sum(m) for m in p)
        if low == 0:
            return 0
        if low >= s:
            continue
        trunc = {m: c for m, c in p.items() if sum(m) < s}
        for mono in _monomials_below(nvars, s - low):
            row = {}
            for m, c in trunc.items():
                e = tuple(a + b for a, b in zip(m, mono))
                if sum(e) < s:
                    row[(sum(e), e)] = c
            _insert(row, pivots)
    return total - len(pivots)


def _insert(row: dict, pivots: dict) -> None:
    """Reduce row against the echelon rows; keep it if something is left.

    Pivots are the lowest columns (lowest degree first), each pivot row
    normalized to coefficient 1 at its pivot.
    """
    while row:
        col = min(row)
        prow = pivots.get(col)
        if prow is None:
            c = row[col]
            if c != 1:
                inv = 1 / c
                row = {k: v * inv for k, v in row.items()}
            pivots[col] = row
            return
        c = row[col]
        for k, v in prow.items():
            w = row.get(k, 0) - c * v
            if w:
                row[k] = w
            else:
                row.pop(k, None)


def hilbert_samuel(polys: list[dict], nvars: int, d: int, start: int = 1) -> int:
    """Stabilized d-th difference of the colength function."""
    values = [0]  # H(0) = 0
    diffs: list[int] = []
    for s in range(1, MAX_S + 1):
        values.append(colength(polys, nvars, s))
        if s < d:
            continue
        delta = [values[s - k] for k in range(d + 1)]
        # d-th backward difference at s
        dd = sum((-1) ** k * comb(d, k) * delta[k] for k in range(d + 1))
        diffs.append(dd if s >= start else None)
        tail = diffs[-WINDOW:]
        if len(tail) == WINDOW and tail[0] is not None and all(t == tail[0] for t in tail):
            return tail[0]
    raise StabilizationError(f"Hilbert-Samuel sampling did not stabilize by s = {MAX_S}")


def ideal_multiplicity(gens: Sequence[Poly], x: ProjPoint, d: int) -> int:
    """e_HS of the local ring of V(gens) at x (0 off the zero set)."""
    if gens and gens[0].ring.nvars != len(x):
        raise ValueError("point and ring have different dimensions")
    if not on_zero_set(gens, x):
        return 0
    if not gens:
        return 1
    polys, nvars = local_generators(gens, x)
    start = max((max(sum(m) for m in p) for p in polys), default=0) + 1
    return hilbert_samuel(polys, nvars, d, start)
