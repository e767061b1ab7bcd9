"""Ideals of Q[x0..xN] and the ideal algebra used by the cycle machinery."""

from __future__ import annotations

from typing import Iterable, Sequence

from svbullet.errors import HullError, ParseError, RingMismatchError
from svbullet.ideals.groebner import GroebnerBasis, groebner_polys
from svbullet.ideals.hilbert import HilbertSummary, monomial_hilbert
from svbullet.kernel.orders import GREVLEX, MonomialOrder, block_order
from svbullet.kernel.poly import Poly, PolyRing
from svbullet.kernel.rand import random_ints, stream


class Ideal:
    """Finitely generated ideal; generators are stored as given (zeros dropped)."""

    def __init__(self, ring: PolyRing, gens: Iterable[Poly] = ()):
        gens = tuple(g for g in (ring(g) for g in gens) if not g.is_zero())
        self.ring = ring
        self.gens = gens
        self._gb: dict = {}
        self._hilbert = None

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> "Ideal":
        """One generator per line; '#' starts a comment."""
        gens = []
        for lineno, line in enumerate(text.splitlines(), 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            try:
                gens.append(ring.parse(body))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        return cls(ring, gens)

    def to_text(self) -> str:
        return "".join(f"{g}\n" for g in self.gens)

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def irrelevant(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens)

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def gb(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = self._gb[order] = groebner_polys(self.gens, self.ring, order)
        return gb

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced grevlex basis."""
        out = Ideal(self.ring, self.gb().polys)
        out._gb[GREVLEX] = self.gb()
        out._hilbert = self._hilbert
        return out

    def contains(self, f: Poly) -> bool:
        return self.gb().contains(self.ring(f))

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def key(self) -> tuple:
        return self.gb().key()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash((self.ring, self.key()))

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Poly):
            other = Ideal(self.ring, [other])
        if isinstance(other, (list, tuple)):
            other = Ideal(self.ring, other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def hilbert(self) -> HilbertSummary:
        return hilbert(self)

    @property
    def dim(self) -> int:
        return self.hilbert().dim

    @property
    def degree(self) -> int:
        return self.hilbert().degree

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


# ---------------------------------------------------------------- basics


def groebner(I: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    return I.gb(order)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.normal_form(f)


def _extend(ring: PolyRing, name: str = "_t") -> tuple[PolyRing, list[int]]:
    """Ring with one new variable in front; returns it and the position map."""
    while name in ring.names:
        name = "_" + name
    big = PolyRing((name,) + ring.names)
    return big, list(range(1, ring.nvars + 1))


def _lift(f: Poly, big: PolyRing, pos: list[int]) -> Poly:
    return f.rename(big, pos)


def _drop_front(f: Poly, small: PolyRing, k: int = 1) -> Poly:
    return Poly(small, {m[k:]: c for m, c in f.terms.items()})


def radical_contains(I: Ideal, f: Poly) -> bool:
    """f in sqrt(I), decided by 1 in I + (1 - t f) (Rabinowitsch)."""
    f = I.ring(f)
    if f.is_zero():
        return True
    big, pos = _extend(I.ring)
    t = big.gen(0)
    gens = [_lift(g, big, pos) for g in I.gens] + [big.one() - t * _lift(f, big, pos)]
    return groebner_polys(gens, big, GREVLEX).is_unit()


def eliminate(I: Ideal, front_block: int) -> Ideal:
    """I intersected with the subring in the variables after the first front_block ones."""
    if front_block == 0:
        return I
    small = PolyRing(I.ring.names[front_block:])
    gb = I.gb(block_order(front_block))
    keep = [g for g in gb.polys if not any(any(m[:front_block]) for m in g.terms)]
    return Ideal(small, [_drop_front(g, small, front_block) for g in keep])


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of t from t*I + (1 - t)*J."""
    if I.ring != J.ring:
        raise RingMismatchError("intersect_ideals: ring mismatch")
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if I.is_zero() or J.is_zero():
        return Ideal.zero(I.ring)
    big, pos = _extend(I.ring)
    t = big.gen(0)
    gens = [t * _lift(g, big, pos) for g in I.gens] + [(big.one() - t) * _lift(g, big, pos) for g in J.gens]
    return eliminate(Ideal(big, gens), 1).reduced()


def divide_exact(f: Poly, g: Poly) -> Poly:
    """f / g, assuming g divides f."""
    if g.is_zero():
        raise ZeroDivisionError
    ring = f.ring
    lg_m, lg_c = g.sorted_terms()[0]
    q: dict = {}
    r = f
    while not r.is_zero():
        lm, lc = r.sorted_terms()[0]
        e = tuple(a - b for a, b in zip(lm, lg_m))
        if min(e) < 0:
            raise ValueError(f"{g} does not divide {f}")
        c = lc / lg_c
        q[e] = c
        r = r - g * Poly(ring, {e: c})
    return Poly(ring, q)


# ------------------------------------------------- linear coordinate trick


class _LastVariable:
    """Coordinates in which a given linear form is the last variable.

    Used for colon and saturation by a linear form of a homogeneous ideal:
    with grevlex and that variable last, both are read off the basis.
    """

    def __init__(self, ring: PolyRing, form: Poly):
        coeffs = form.linear_coeffs()
        n = ring.nvars
        p = max(i for i in range(n) if coeffs[i])
        self.ring = ring
        self.p = p
        self.form = form
        others = [i for i in range(n) if i != p]
        # y_k = x_{others[k]} for k < n-1, y_{n-1} = form
        Y = ring.gens
        inv_p = (Y[n - 1] - sum((Y[k] * coeffs[i] for k, i in enumerate(others)), ring.zero())) / coeffs[p]
        to_y = [None] * n
        for k, i in enumerate(others):
            to_y[i] = Y[k]
        to_y[p] = inv_p
        self.to_y = to_y
        X = ring.gens
        self.to_x = [X[i] for i in others] + [form]

    def forward(self, f: Poly) -> Poly:
        return f.ring_map(self.to_y, self.ring)

    def back(self, f: Poly) -> Poly:
        return f.ring_map(self.to_x, self.ring)


def _strip_last(g: Poly, n: int, limit: int | None = None) -> Poly:
    k = min(m[n - 1] for m in g.terms)
    if limit is not None:
        k = min(k, limit)
    if not k:
        return g
    return Poly(g.ring, {m[:-1] + (m[-1] - k,): c for m, c in g.terms.items()})


def _linear_colon(I: Ideal, form: Poly, saturate: bool) -> Ideal:
    lv = _LastVariable(I.ring, form)
    Iy = Ideal(I.ring, [lv.forward(g) for g in I.gens])
    n = I.ring.nvars
    gens = [_strip_last(g, n, None if saturate else 1) for g in Iy.gb().polys]
    return Ideal(I.ring, [lv.back(g) for g in gens]).reduced()


# --------------------------------------------------- quotient / saturation


def quotient_element(I: Ideal, f: Poly) -> Ideal:
    f = I.ring(f)
    if f.is_zero():
        return Ideal.unit(I.ring)
    if I.is_zero():
        return I
    if f.is_constant():
        return I
    if I.is_homogeneous and f.is_linear():
        return _linear_colon(I, f, saturate=False)
    inter = intersect_ideals(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divide_exact(g, f) for g in inter.gens]).reduced()


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of I : f over the generators f of J."""
    if I.ring != J.ring:
        raise RingMismatchError("quotient: ring mismatch")
    result = None
    for f in J.gens:
        q = quotient_element(I, f)
        result = q if result is None else intersect_ideals(result, q)
    return result if result is not None else Ideal.unit(I.ring)


def saturate_element(I: Ideal, f: Poly) -> Ideal:
    """I : f^infinity."""
    f = I.ring(f)
    if f.is_zero():
        return Ideal.unit(I.ring)
    if f.is_constant() or I.is_zero():
        return I
    if I.is_homogeneous and f.is_linear():
        return _linear_colon(I, f, saturate=True)
    big, pos = _extend(I.ring)
    t = big.gen(0)
    gens = [_lift(g, big, pos) for g in I.gens] + [t * _lift(f, big, pos) - big.one()]
    return eliminate(Ideal(big, gens), 1).reduced()


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity as the intersection of I : f^infinity over generators of J."""
    if I.ring != J.ring:
        raise RingMismatchError("saturate: ring mismatch")
    result = None
    for f in J.gens:
        s = saturate_element(I, f)
        result = s if result is None else intersect_ideals(result, s)
    return result if result is not None else Ideal.unit(I.ring)


def is_nzd(I: Ideal, f: Poly) -> bool:
    """f is a non-zerodivisor modulo I, i.e. I : f == I."""
    return quotient_element(I, f) == I


# ------------------------------------------------------------- Hilbert


def hilbert(I: Ideal) -> HilbertSummary:
    if I._hilbert is None:
        gb = I.gb()
        I._hilbert = monomial_hilbert(gb.leading_monomials(), I.ring.nvars)
    return I._hilbert


def codim(I: Ideal) -> int:
    """Codimension in P^N (N+1 variables); an empty scheme counts as N+1."""
    return I.ring.nvars - 1 - hilbert(I).dim


# ---------------------------------------------------------- equidim hull


def _is_complete_intersection(gens: Sequence[Poly], c: int) -> bool:
    return len(gens) == c


def _regular_subsequence(I: Ideal, c: int) -> list[Poly] | None:
    """Greedy: basis elements of low degree that cut codimension one at a time."""
    chosen: list[Poly] = []
    current = Ideal(I.ring, [])
    cur_codim = 0
    for g in sorted(I.gb().polys, key=lambda p: (p.degree(), len(p.terms))):
        trial = current + g
        cd = codim(trial)
        if cd == cur_codim + 1:
            chosen.append(g)
            current = trial
            cur_codim = cd
            if cur_codim == c:
                return chosen
    return None


def _random_complete_intersection(I: Ideal, c: int, rng) -> list[Poly]:
    gens = I.gb().polys
    D = max(g.degree() for g in gens)
    ring = I.ring
    out = []
    for _ in range(c):
        lin = ring.linear_form(random_ints(rng, ring.nvars))
        coeffs = random_ints(rng, len(gens))
        f = ring.zero()
        for a, g in zip(coeffs, gens):
            if a:
                f = f + g * (lin ** (D - g.degree())) * a
        out.append(f)
    return out


def equidim_hull(I: Ideal, seed: int = 0) -> Ideal:
    """Intersection of the top-dimensional primary components of homogeneous I.

    Computed as L : (L : I), with L a complete intersection of the same
    codimension contained in I.
    """
    if not I.is_homogeneous:
        raise ValueError("equidim_hull expects a homogeneous ideal")
    if I.is_unit():
        raise HullError("equidim_hull of the unit ideal")
    h = hilbert(I)
    if h.dim < 0:
        raise HullError("equidim_hull of an ideal with empty projective scheme")
    c = codim(I)
    R = I.reduced()
    if c == 0:
        return Ideal.zero(I.ring)
    gens = R.gens
    if _is_complete_intersection(gens, c):
        return R
    if h.dim == 0:
        # only irrelevant components can be embedded
        return _saturate_irrelevant(R, seed)
    L = _regular_subsequence(R, c)
    rng = stream(seed, "hull")
    for attempt in range(20):
        if L is None:
            L = _random_complete_intersection(R, c, rng)
        LI = Ideal(I.ring, L)
        if codim(LI) != c:
            L = None
            continue
        hull = quotient(LI, quotient(LI, R))
        if hilbert(hull).dim == h.dim and hilbert(hull).degree == h.degree:
            return hull
        L = None
    raise HullError("equidimensional hull failed after 20 attempts")


def _saturate_irrelevant(I: Ideal, seed: int = 0) -> Ideal:
    """I : m^infinity via a generic linear form (valid: it lies in no relevant prime)."""
    rng = stream(seed, "irrelevant")
    lin = I.ring.linear_form(random_ints(rng, I.ring.nvars))
    return saturate_element(I, lin)


def saturate_irrelevant(I: Ideal, seed: int = 0) -> Ideal:
    return _saturate_irrelevant(I, seed)


# -------------------------------------------------------------- closure


def projective_closure(I_affine: Ideal, homog_var) -> Ideal:
    """Homogenize a grevlex basis of an ideal not involving homog_var."""
    ring = I_affine.ring
    i = ring.index(homog_var) if isinstance(homog_var, str) else homog_var
    for g in I_affine.gens:
        if any(m[i] for m in g.terms):
            raise ValueError("projective_closure: generators must not involve the homogenizing variable")
    return Ideal(ring, [g.homogenize(i) for g in I_affine.gb().polys]).reduced()
