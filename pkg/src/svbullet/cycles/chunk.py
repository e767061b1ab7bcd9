"""Pure-dimensional cycles carried by unmixed ideals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from svbullet.cycles.multiplicity import ideal_multiplicity, on_zero_set
from svbullet.errors import AuditError, ImproperCutError, InputError
from svbullet.ideals.ideal import (
    Ideal,
    equidim_hull,
    hilbert,
    quotient_element,
    radical_contains,
    saturate_element,
    saturate_irrelevant,
)
from svbullet.kernel.linalg import matrix_rank
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import Poly, PolyRing
from svbullet.kernel.rand import random_ints, stream


class Chunk:
    """coefficient x (top-dimensional cycle of an unmixed homogeneous ideal).

    Scheme multiplicities of the ideal carry the cycle multiplicities, so a
    double line is the ideal (x0^2) with coefficient 1.
    """

    __slots__ = ("ideal", "coefficient", "dim", "hilbert_degree")

    def __init__(self, ideal: Ideal, coefficient: int = 1, *, hull: bool = False):
        if not ideal.is_homogeneous:
            raise InputError("chunk ideals must be homogeneous")
        if int(coefficient) != coefficient or coefficient <= 0:
            raise InputError(f"chunk coefficient must be a positive integer, got {coefficient}")
        if hull:
            ideal = equidim_hull(ideal)
        h = hilbert(ideal)
        if h.dim < 0:
            raise InputError("chunk ideal defines the empty scheme")
        self.ideal = ideal
        self.coefficient = int(coefficient)
        self.dim = h.dim
        self.hilbert_degree = h.degree

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    @property
    def degree(self) -> int:
        return self.coefficient * self.hilbert_degree

    def with_coefficient(self, coefficient: int) -> "Chunk":
        out = object.__new__(Chunk)
        out.ideal = self.ideal
        out.coefficient = int(coefficient)
        out.dim = self.dim
        out.hilbert_degree = self.hilbert_degree
        return out

    def generators(self) -> list[Poly]:
        return list(self.ideal.reduced().gens)

    def __eq__(self, other):
        if not isinstance(other, Chunk):
            return NotImplemented
        return self.coefficient == other.coefficient and self.ideal == other.ideal

    def __hash__(self):
        return hash((self.coefficient, self.ideal))

    def __repr__(self):
        return f"Chunk(dim={self.dim}, degree={self.degree}, coeff={self.coefficient}, ideal={self.ideal})"


@dataclass(frozen=True)
class Cycle:
    n: int
    chunks: tuple = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "chunks", tuple(self.chunks))
        for c in self.chunks:
            if c.n != self.n:
                raise InputError(f"chunk lives in P^{c.n}, cycle in P^{self.n}")

    @property
    def ring(self) -> PolyRing:
        return self.chunks[0].ring if self.chunks else PolyRing.projective(self.n)

    def is_zero(self) -> bool:
        return not self.chunks

    def dims(self) -> list[int]:
        return sorted({c.dim for c in self.chunks})

    def is_pure(self) -> bool:
        return len(self.dims()) <= 1

    def part(self, dim: int) -> "Cycle":
        return Cycle(self.n, [c for c in self.chunks if c.dim == dim], self.label)

    def __add__(self, other: "Cycle") -> "Cycle":
        if other.n != self.n:
            raise InputError("adding cycles in different ambient spaces")
        return Cycle(self.n, self.chunks + other.chunks, self.label)

    def scaled(self, k: int) -> "Cycle":
        return Cycle(self.n, [c.with_coefficient(c.coefficient * k) for c in self.chunks], self.label)

    def equivalent(self, other: "Cycle") -> bool:
        """Same chunks up to order, with identical ideals merged."""
        return merged(self) == merged(other)


def merged(c: Cycle) -> dict:
    """{(dim, ideal key): total coefficient}."""
    out: dict = {}
    for ch in c.chunks:
        k = (ch.dim, ch.ideal.key())
        out[k] = out.get(k, 0) + ch.coefficient
    return out


# ---------------------------------------------------------------- builders


def _ring(n: int) -> PolyRing:
    return PolyRing.projective(n)


def make_hypersurface(F: Poly, coeff: int = 1) -> Cycle:
    if F.is_zero():
        raise InputError("hypersurface of the zero polynomial")
    if F.is_constant():
        raise InputError("hypersurface of a constant")
    if not F.is_homogeneous():
        raise InputError(f"{F} is not homogeneous")
    return Cycle(F.ring.nvars - 1, [Chunk(Ideal(F.ring, [F]), coeff)], "hypersurface")


def make_linear_space(forms: Sequence[Poly], ring: PolyRing | None = None) -> Cycle:
    """Linear subspace cut out by independent linear forms (none: the whole space)."""
    if not forms:
        if ring is None:
            raise InputError("make_linear_space needs forms or a ring")
        return make_full_space(ring.nvars - 1)
    ring = forms[0].ring
    for f in forms:
        if f.is_zero():
            raise InputError("zero linear form")
        if not f.is_linear() or not f.is_homogeneous():
            raise InputError(f"{f} is not a linear form")
    if matrix_rank([f.linear_coeffs() for f in forms]) != len(forms):
        raise InputError("linear forms are dependent")
    return Cycle(ring.nvars - 1, [Chunk(Ideal(ring, forms))], "linear")


def make_point(p: ProjPoint, coeff: int = 1) -> Cycle:
    ring = _ring(p.n)
    return Cycle(p.n, [Chunk(point_ideal(p, ring), coeff)], "point")


def point_ideal(p: ProjPoint, ring: PolyRing) -> Ideal:
    """Linear ideal of a point: x_j - p_j x_i with i the chart index."""
    i = p.chart()
    X = ring.gens
    return Ideal(ring, [X[j] - X[i] * p[j] for j in range(ring.nvars) if j != i])


def make_full_space(n: int) -> Cycle:
    return Cycle(n, [Chunk(Ideal.zero(_ring(n)))], "full")


# ---------------------------------------------------------------- queries


def multiplicity_at(c, x: ProjPoint) -> int:
    """Sum over chunks of coefficient x Hilbert-Samuel multiplicity at x."""
    chunks = c.chunks if isinstance(c, Cycle) else [c]
    total = 0
    for ch in chunks:
        if ch.n != x.n:
            raise InputError(f"point in P^{x.n}, chunk in P^{ch.n}")
        gens = ch.generators()
        if not on_zero_set(gens, x):
            continue
        total += ch.coefficient * ideal_multiplicity(gens, x, ch.dim)
    return total


def support_contained(I: Ideal, J: Ideal) -> bool:
    """V(I) inside V(J)."""
    return all(radical_contains(I, g) for g in J.gens)


def supports_equal(I: Ideal, J: Ideal) -> bool:
    return support_contained(I, J) and support_contained(J, I)


def point_on_support(I: Ideal, p: ProjPoint) -> bool:
    return on_zero_set(I.gens, p)


def cycle_degree(c: Cycle) -> dict[int, int]:
    out: dict[int, int] = {}
    for ch in c.chunks:
        out[ch.dim] = out.get(ch.dim, 0) + ch.degree
    return dict(sorted(out.items()))


def total_degree(c: Cycle) -> int:
    return sum(cycle_degree(c).values())


# ------------------------------------------------------- split / cut


def generic_element(I: Ideal, rng) -> Poly:
    """Homogeneous random element of I: sum a_i g_i l^(D - deg g_i), l a random linear form."""
    gens = I.reduced().gens
    D = max(g.degree() for g in gens)
    ring = I.ring
    if all(g.degree() == D for g in gens):
        lin = None
    else:
        lin = ring.linear_form(random_ints(rng, ring.nvars))
    out = ring.zero()
    for a, g in zip(random_ints(rng, len(gens)), gens):
        if a:
            out = out + (g if lin is None else g * lin ** (D - g.degree())) * a
    return out


def _empty(I: Ideal) -> bool:
    return I.is_unit() or hilbert(I).dim < 0


def split_by(c: Chunk, Z: Ideal, seed: int = 0) -> tuple[Chunk | None, Chunk | None]:
    """(part of c supported in V(Z), part with no component in V(Z)).

    The outside part is the saturation of c by Z and the inside part the
    colon of c by the outside part.  Because c is unmixed both reduce to a
    single generic element: I : Z^oo = I : g^oo for g generic in Z, and
    I : J = I : f for f generic in J when J is the outside part of I.
    """
    I = c.ideal
    if Z.ring != I.ring:
        raise InputError("split_by: ring mismatch")
    if Z.is_zero():
        return c, None
    if Z.is_unit():
        return None, c
    rng = stream(seed, "split")
    g = generic_element(Z, rng)
    out_ideal = saturate_element(I, g)
    if _empty(out_ideal):
        return c, None
    outside = Chunk(out_ideal, c.coefficient)
    if outside.dim != c.dim:
        raise AuditError("saturation of an unmixed chunk changed dimension")
    if outside.hilbert_degree == c.hilbert_degree:
        return None, c
    f = generic_element(out_ideal, rng)
    in_ideal = quotient_element(I, f)
    inside = Chunk(in_ideal, c.coefficient)
    if inside.dim != c.dim or inside.degree + outside.degree != c.degree:
        raise AuditError(
            f"split_by degree additivity failed: {c.degree} != {inside.degree} + {outside.degree}"
        )
    return inside, outside


def is_proper_cut(c: Chunk, h: Poly) -> bool:
    """h vanishes on no component of c (equivalently: h is a non-zerodivisor)."""
    return hilbert(c.ideal + h).dim == c.dim - 1


def cut_with_divisor(c: Chunk, h: Poly, seed: int = 0) -> Chunk | None:
    """Hyperplane section of c by h (None when c is a finite set of points)."""
    h = c.ring(h)
    if not h.is_linear() or not h.is_homogeneous():
        raise InputError("cut_with_divisor expects a linear form")
    if not is_proper_cut(c, h):
        raise ImproperCutError(f"{h} vanishes on a component of the chunk")
    if c.dim == 0:
        return None
    J = saturate_irrelevant(c.ideal + h, seed)
    out = Chunk(equidim_hull(J, seed), c.coefficient)
    if out.dim != c.dim - 1 or out.degree != c.degree:
        raise AuditError(f"cut changed degree {c.degree} -> {out.degree} or dimension")
    return out
