"""Ruled join, the diagonal linear system and pullback along the diagonal."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from svbullet.cycles.chunk import Chunk, Cycle
from svbullet.errors import AuditError, InputError, NotInDiagonalError
from svbullet.ideals.ideal import Ideal, equidim_hull, hilbert, quotient_element, saturate_element
from svbullet.kernel.poly import Poly, PolyRing


@dataclass(frozen=True)
class LinearSystem:
    """Linear forms eta_1..eta_m; their common zero set is the center."""

    forms: tuple
    ring: PolyRing

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        for f in self.forms:
            if f.ring != self.ring or not (f.is_linear() and f.is_homogeneous()):
                raise InputError(f"{f} is not a linear form of {self.ring}")

    @property
    def center(self) -> Ideal:
        return Ideal(self.ring, self.forms)

    def __len__(self):
        return len(self.forms)


def block_positions(n: int, r: int, j: int) -> list[int]:
    """Indices of the block-j variables (j = 0..r-1) in the join ring."""
    return [j * (n + 1) + i for i in range(n + 1)]


def ruled_join(*cycles: Cycle) -> Cycle:
    """Join of cycles in P^n: one chunk per choice of a chunk from each factor."""
    if len(cycles) < 1:
        raise InputError("ruled_join needs at least one cycle")
    n = cycles[0].n
    for c in cycles:
        if c.n != n:
            raise InputError(f"ambient mismatch: P^{c.n} vs P^{n}")
    r = len(cycles)
    ring = PolyRing.join(n, r)
    chunks = []
    for choice in product(*(c.chunks for c in cycles)):
        gens: list[Poly] = []
        coeff = 1
        for j, ch in enumerate(choice):
            pos = block_positions(n, r, j)
            gens.extend(g.rename(ring, pos) for g in ch.ideal.gens)
            coeff *= ch.coefficient
        J = Chunk(Ideal(ring, gens), coeff)
        expect_dim = sum(ch.dim for ch in choice) + r - 1
        expect_deg = 1
        for ch in choice:
            expect_deg *= ch.degree
        if J.dim != expect_dim or J.degree != expect_deg:
            raise AuditError(f"join chunk has (dim, degree) ({J.dim}, {J.degree}), expected ({expect_dim}, {expect_deg})")
        chunks.append(J)
    return Cycle(r * (n + 1) - 1, chunks, "join")


def diagonal_system(r: int, n: int) -> LinearSystem:
    """The (r-1)(n+1) forms x_k^(j+1) - x_k^j cutting out the join diagonal."""
    if r < 2:
        raise InputError("diagonal_system needs r >= 2")
    ring = PolyRing.join(n, r)
    X = ring.gens
    forms = []
    for k in range(n + 1):
        for j in range(r - 1):
            forms.append(X[(j + 1) * (n + 1) + k] - X[j * (n + 1) + k])
    return LinearSystem(tuple(forms), ring)


def _diag_coordinates(n: int, r: int):
    """Ring maps for the coordinates x = x^1, e^j = x^(j+1) - x^j (j = 1..r-1).

    In the new ring (same variable layout) block 0 holds x and block j holds
    e^j; the diagonal is e = 0.
    """
    ring = PolyRing.join(n, r)
    X = ring.gens
    # old variable x^j_k = x_k + e^1_k + ... + e^(j-1)_k
    to_new = []
    for j in range(r):
        for k in range(n + 1):
            f = X[k]
            for t in range(1, j + 1):
                f = f + X[t * (n + 1) + k]
            to_new.append(f)
    return ring, to_new


def diagonal_pullback(c: Chunk, r: int, seed: int = 0) -> Cycle:
    """The cycle on P^n whose diagonal image is c.

    The naive substitution x^j -> x loses multiplicity along directions
    transverse to the diagonal.  Instead, in coordinates (x, e) with
    e = 0 the diagonal, filter the coordinate ring by powers of one e
    variable at a time: the graded pieces (I + e^(k+1)) : e^k, restricted to
    e = 0, add up to the same cycle.
    """
    n = (c.ring.nvars // r) - 1
    if c.ring != PolyRing.join(n, r):
        raise InputError("diagonal_pullback: chunk is not in a join ring")
    ring, to_new = _diag_coordinates(n, r)
    I = Ideal(ring, [g.ring_map(to_new, ring) for g in c.ideal.gens])
    e_vars = list(range(n + 1, ring.nvars))
    for v in e_vars:
        if not _in_radical_power(I, ring.gen(v)):
            raise NotInDiagonalError("chunk is not supported in the join diagonal")
    small = PolyRing.projective(n)
    out: dict = {}
    for J, coeff in _filter(I, len(e_vars), c.coefficient, seed):
        if J.ring.nvars != n + 1:
            raise AuditError("filtration left transverse variables behind")
        J = Ideal(small, [Poly(small, g.terms) for g in J.gens])
        key = J.key()
        out[key] = (J, out[key][1] + coeff) if key in out else (J, coeff)
    chunks = [Chunk(J, k) for J, k in out.values()]
    total = sum(ch.degree for ch in chunks)
    if any(ch.dim != c.dim for ch in chunks) or total != c.degree:
        raise AuditError(f"diagonal pullback changed degree {c.degree} -> {total}")
    return Cycle(n, chunks, "pullback")


def _in_radical_power(I: Ideal, e: Poly) -> bool:
    """Some power of e lies in the saturation of I."""
    S = saturate_element(I, e)
    return S.is_unit() or hilbert(S).dim < 0


def _drop_last(I: Ideal) -> Ideal:
    """I + (v) viewed in the ring without its last variable v."""
    ring = I.ring
    small = PolyRing(ring.names[:-1])
    gens = [Poly(small, {m[:-1]: c for m, c in g.terms.items() if not m[-1]}) for g in I.gens]
    return Ideal(small, gens)


def _filter(I: Ideal, count: int, coeff: int, seed: int) -> list[tuple[Ideal, int]]:
    """Top-dimensional pieces of the filtration by the last `count` variables.

    With e the last variable, R/I has the same top cycle as the sum of the
    R/((I : e^k) + e) over k >= 0, each of which lives on e = 0.
    """
    if count == 0:
        return [(I, coeff)]
    ring = I.ring
    e = ring.gen(ring.nvars - 1)
    dim = hilbert(I).dim
    out = []
    current = I
    while True:
        piece = _drop_last(current)
        h = hilbert(piece)
        if h.dim == dim:
            out.extend(_filter(_top(piece, seed), count - 1, coeff, seed))
        elif h.dim > dim:
            raise AuditError("filtration piece of larger dimension")
        nxt = quotient_element(current, e)
        if nxt.is_unit() or hilbert(nxt).dim < 0:
            return out
        if nxt == current:
            raise NotInDiagonalError("chunk is not supported in the join diagonal")
        current = nxt


def _top(I: Ideal, seed: int) -> Ideal:
    return equidim_hull(I, seed)
