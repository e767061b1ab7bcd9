"""Local intersection numbers and the polar-curve oracle for plane curves."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from svbullet.cycles.canonical import rational_points
from svbullet.cycles.chunk import Chunk, Cycle, multiplicity_at
from svbullet.errors import GenericityError, InputError, InstabilityError
from svbullet.ideals.ideal import Ideal, hilbert
from svbullet.intersect.bullet import BulletReport, bullet, bullet_direct_linear, cycle_support
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import Poly
from svbullet.kernel.rand import DEFAULT_SEED, random_ints, stream


@dataclass
class EpsilonTable:
    point: ProjPoint
    values: list  # values[l] = epsilon_l for l = 0..dim V

    def to_json(self) -> dict:
        return {"point": str(self.point), "epsilon": list(self.values)}


def common_support_dim(cycles) -> int:
    S = None
    for c in cycles:
        I = cycle_support(c)
        S = I if S is None else S + I
    return hilbert(S).dim


def epsilon(*cycles: Cycle, x: ProjPoint, seed: int = DEFAULT_SEED, runs: int = 2,
            report: BulletReport | None = None, direct_linear: bool = False) -> EpsilonTable:
    """epsilon_l = multiplicity at x of the dimension-l part of the bullet product."""
    if len(cycles) < 2:
        raise InputError("epsilon needs at least two cycles")
    if any(c.n != x.n for c in cycles):
        raise InputError("point and cycles live in different spaces")
    if report is None:
        report = _product(cycles, seed, runs, direct_linear)
    top = common_support_dim(cycles)
    values = []
    extra = None
    for ell in range(top + 1):
        total = sum(c.multiplicity_at(x) for c in report.fixed(ell))
        for comp in report.moving(ell):
            vals = [comp.multiplicity_at(x, run) for run in range(len(comp.witnesses))]
            if len(set(vals)) > 1:
                if extra is None:
                    extra = _product(cycles, seed + 7919, runs, direct_linear)
                more = [m.multiplicity_at(x, 0) for m in extra.moving(ell)]
                vals = vals + more[:1]
                value, count = Counter(vals).most_common(1)[0]
                if count * 2 <= len(vals):
                    raise InstabilityError(f"moving multiplicity at {x} unstable in dimension {ell}: {vals}")
                vals = [value]
            total += vals[0]
        values.append(total)
    return EpsilonTable(x, values)


def _product(cycles, seed, runs, direct_linear) -> BulletReport:
    if direct_linear:
        if len(cycles) != 2:
            raise InputError("the direct linear path takes exactly two cycles")
        return bullet_direct_linear(cycles[0], cycles[1], seed=seed, runs=runs)
    return bullet(*cycles, seed=seed, runs=runs)


# ------------------------------------------------------------------ polar


@dataclass
class PolarResult:
    degree: int  # d(d - 1)
    masses: dict = field(default_factory=dict)  # candidate point -> colength there
    beta: tuple = ()

    @property
    def singular_mass(self) -> int:
        return sum(self.masses.values())

    @property
    def moving(self) -> int:
        return self.degree - self.singular_mass

    def to_json(self) -> dict:
        return {
            "total": self.degree,
            "masses": {str(p): m for p, m in self.masses.items()},
            "singular_mass": self.singular_mass,
            "moving": self.moving,
            "beta": list(self.beta),
        }


def singular_points(F: Poly) -> list[ProjPoint]:
    """Rational singular points of the plane curve F = 0."""
    ring = F.ring
    I = Ideal(ring, [F] + [F.diff(i) for i in range(ring.nvars)])
    if I.is_unit() or hilbert(I).dim < 0:
        return []
    if hilbert(I).dim > 0:
        raise InputError("curve is not reduced")
    return rational_points(I)


def polar_self_intersection_oracle(F: Poly, seed: int = DEFAULT_SEED, candidates=None, attempts: int = 10) -> PolarResult:
    """Intersect F = 0 with a random polar curve sum beta_i dF/dx_i = 0."""
    ring = F.ring
    if ring.nvars != 3 or not F.is_homogeneous() or F.degree() < 1:
        raise InputError("polar oracle expects a homogeneous plane curve")
    d = F.degree()
    if candidates is None:
        candidates = singular_points(F)
    for attempt in range(attempts):
        beta = random_ints(stream(seed, "polar", attempt), 3)
        P = ring.zero()
        for b, i in zip(beta, range(3)):
            P = P + F.diff(i) * b
        if P.is_zero():
            continue
        I = Ideal(ring, [F, P])
        h = hilbert(I)
        if h.dim != 0:
            continue
        if h.degree != d * (d - 1):
            raise GenericityError("polar intersection has unexpected degree")
        ch = Chunk(I)
        masses = {p: multiplicity_at(ch, p) for p in candidates}
        return PolarResult(h.degree, masses, tuple(beta))
    raise GenericityError(f"no proper polar curve after {attempts} attempts")
