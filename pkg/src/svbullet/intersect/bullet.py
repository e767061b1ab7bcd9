"""The bullet product: join, SV along the diagonal, pull back, classify."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from svbullet.cycles.chunk import (
    Chunk,
    Cycle,
    multiplicity_at,
    split_by,
    support_contained,
    supports_equal,
    total_degree,
)
from svbullet.cycles.canonical import canonical_chunks
from svbullet.errors import AuditError, InputError, InstabilityError
from svbullet.ideals.ideal import Ideal
from svbullet.intersect.join import LinearSystem, diagonal_pullback, diagonal_system, ruled_join
from svbullet.intersect.sv import sv, sv_mass_check
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.rand import DEFAULT_SEED


@dataclass
class Component:
    kind: str  # "fixed" | "moving"
    dim: int
    degree: int
    chunks: list = field(default_factory=list)  # fixed: the chunk (one entry)
    witnesses: list = field(default_factory=list)  # moving: list of chunks, one list per run

    @property
    def coefficient(self) -> int:
        return self.chunks[0].coefficient if self.kind == "fixed" else 1

    @property
    def ideal(self) -> Ideal:
        """Fixed: the chunk ideal.  Moving: support ideal of the first run's witness."""
        if self.kind == "fixed":
            return self.chunks[0].ideal
        return support_ideal(self.witnesses[0])

    def multiplicity_at(self, x: ProjPoint, run: int = 0) -> int:
        chunks = self.chunks if self.kind == "fixed" else self.witnesses[run]
        return sum(multiplicity_at(ch, x) for ch in chunks)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim, "degree": self.degree}
        if self.kind == "fixed":
            out["coefficient"] = self.coefficient
            out["ideal"] = [str(g) for g in self.chunks[0].generators()]
        else:
            out["witnesses"] = [[str(g) for g in support_ideal(w).reduced().gens] for w in self.witnesses]
        return out


@dataclass
class BulletReport:
    inputs: list
    rho: int
    d: int
    components: list
    bezout_product: int
    seeds: list
    runs: int
    n: int
    residual_degree: int = 0
    audits: list = field(default_factory=list)

    @property
    def total_degree(self) -> int:
        return sum(c.degree for c in self.components)

    @property
    def fulton_degree(self) -> int:
        return fulton_degree(self)

    def fixed(self, dim: int | None = None) -> list[Component]:
        return [c for c in self.components if c.kind == "fixed" and (dim is None or c.dim == dim)]

    def moving(self, dim: int | None = None) -> list[Component]:
        return [c for c in self.components if c.kind == "moving" and (dim is None or c.dim == dim)]

    def degrees(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.components:
            out[c.dim] = out.get(c.dim, 0) + c.degree
        return dict(sorted(out.items()))

    def fixed_cycle(self) -> Cycle:
        return Cycle(self.n, [ch for c in self.fixed() for ch in c.chunks], "fixed")

    def to_json(self) -> dict:
        return {
            "inputs": self.inputs,
            "rho": self.rho,
            "d": self.d,
            "components": [c.to_json() for c in self.components],
            "total_degree": self.total_degree,
            "residual_degree": self.residual_degree,
            "bezout_product": self.bezout_product,
            "fulton_degree": self.fulton_degree,
            "seeds": self.seeds,
            "runs": self.runs,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def fulton_degree(rep: BulletReport) -> int:
    """Degree of the refined product: the sum of all component degrees."""
    return sum(c.degree for c in rep.components)


def support_ideal(chunks: Sequence[Chunk]) -> Ideal:
    """An ideal whose zero set is the union of the chunk supports."""
    if not chunks:
        raise InputError("support of an empty list of chunks")
    out = chunks[0].ideal
    for ch in chunks[1:]:
        out = out * ch.ideal
    return out


def cycle_support(c: Cycle) -> Ideal:
    return support_ideal(list(c.chunks))


# ------------------------------------------------------------ classification


def _split_all(chunks: list[Chunk], C: Ideal, seed: int) -> tuple[list[Chunk], list[Chunk]]:
    fixed, moving = [], []
    for ch in chunks:
        inside, outside = split_by(ch, C, seed)
        if inside is not None:
            fixed.append(inside)
        if outside is not None:
            moving.append(outside)
    return fixed, moving


def _deg(chunks) -> int:
    return sum(ch.degree for ch in chunks)


def _same_support(A: list[Chunk], B: list[Chunk]) -> bool:
    if not A or not B:
        return not A and not B
    return supports_equal(support_ideal(A), support_ideal(B))


def _classify_pair(A: list[Chunk], B: list[Chunk], seed: int):
    """Split run A and run B by their common support; None if they disagree."""
    if _deg(A) != _deg(B):
        return None
    if not A:
        return [], [], [], []
    C = support_ideal(A) + support_ideal(B)
    fa, ma = _split_all(A, C, seed)
    fb, mb = _split_all(B, C, seed)
    if _deg(fa) != _deg(fb) or _deg(ma) != _deg(mb) or not _same_support(fa, fb):
        return None
    return fa, ma, fb, mb


def _merge(chunks: list[Chunk]) -> list[Chunk]:
    out: dict = {}
    for ch in chunks:
        k = ch.ideal.key()
        out[k] = out[k].with_coefficient(out[k].coefficient + ch.coefficient) if k in out else ch
    return list(out.values())


def classify_fixed_moving(
    runs: list[dict], seed: int = 0, extra: Callable[[], dict] | None = None
) -> list[Component]:
    """Tag the per-dimension chunks of several runs as fixed or moving.

    runs[i] maps dim -> list of Chunks of run i.  Fixed parts must agree in
    support and degree between runs; moving parts only in degree.  On
    disagreement one extra run is drawn (via `extra`) and the pairs are
    tried again.
    """
    if len(runs) < 2:
        raise InputError("classification needs at least two runs")
    runs = list(runs)
    base = len(runs)
    dims = sorted({d for r in runs for d in r}, reverse=True)
    comps: list[Component] = []
    for dim in dims:
        res = _classify_pair(runs[0].get(dim, []), runs[1].get(dim, []), seed)
        pair, loser = (0, 1), None
        if res is None:
            if extra is None:
                raise InstabilityError(f"runs disagree in dimension {dim}")
            if len(runs) == base:
                runs.append(extra())
            arb = base
            for pair, loser in (((0, arb), 1), ((1, arb), 0)):
                res = _classify_pair(runs[pair[0]].get(dim, []), runs[pair[1]].get(dim, []), seed)
                if res is not None:
                    break
            else:
                raise InstabilityError(f"runs disagree in dimension {dim} after an extra run")
        fa, ma, fb, mb = res
        moving = {pair[0]: ma, pair[1]: mb}
        for j in range(base):
            if j in moving or j == loser:
                continue
            r2 = _classify_pair(runs[pair[0]].get(dim, []), runs[j].get(dim, []), seed)
            if r2 is None:
                raise InstabilityError(f"run {j} disagrees in dimension {dim}")
            moving[j] = r2[3]
        for ch in _merge([piece for ch in fa for piece in canonical_chunks(ch)]):
            comps.append(Component("fixed", dim, ch.degree, chunks=[ch]))
        if ma:
            wit = [moving[j] for j in sorted(moving)]
            comps.append(Component("moving", dim, _deg(ma), witnesses=wit))
    comps.sort(key=lambda c: (-c.dim, c.kind, str(c.ideal)))
    return comps


# -------------------------------------------------------------- products


def _pure_dims(c: Cycle) -> list[int]:
    return c.dims()


def _rho_d(dims: Sequence[int], n: int) -> tuple[int, int]:
    r = len(dims)
    s = sum(dims)
    return s - (r - 1) * n, s + r - 1


def _inputs_json(cycles: Sequence[Cycle]) -> list:
    return [{"degree": total_degree(c), "dims": c.dims()} for c in cycles]


def _check_contracts(rep: BulletReport, cycles: Sequence[Cycle]) -> None:
    supports = [cycle_support(c) for c in cycles if not c.is_zero()]
    for comp in rep.components:
        if comp.degree <= 0:
            raise AuditError("non-positive component degree")
        chunks = comp.chunks if comp.kind == "fixed" else comp.witnesses[0]
        for ch in chunks:
            for S in supports:
                if not support_contained(ch.ideal, S):
                    raise AuditError("component not supported in the intersection of the supports")
    if rep.residual_degree < 0:
        raise AuditError("negative residual degree")
    if rep.rho >= 0 and all(c.is_pure() for c in cycles) and rep.residual_degree != 0:
        raise AuditError("Bezout equality failed although the expected dimension is non-negative")


def _run_seeds(seed: int, runs: int) -> list[int]:
    return [seed + i for i in range(runs)]


def _join_run(J: Cycle, sys: LinearSystem, r: int, seed: int) -> tuple[dict, int]:
    out = sv(J, sys, seed)
    sv_mass_check(out)
    by_dim: dict = {}
    for k in out.steps():
        for ch in out.v(k):
            for pc in diagonal_pullback(ch, r, seed).chunks:
                by_dim.setdefault(pc.dim, []).append(pc)
    return by_dim, out.residual_degree()


def bullet(*cycles: Cycle, seed: int = DEFAULT_SEED, runs: int = 2) -> BulletReport:
    """The bullet product of r >= 2 cycles in P^n, computed on the ruled join."""
    if len(cycles) < 2:
        raise InputError("bullet needs at least two cycles")
    if runs < 2:
        raise InputError("bullet needs at least two runs")
    n = cycles[0].n
    for c in cycles:
        if c.n != n:
            raise InputError(f"ambient mismatch: P^{c.n} vs P^{n}")
    r = len(cycles)
    top = [max(c.dims()) if c.chunks else 0 for c in cycles]
    rho, d = _rho_d(top, n)
    bez = 1
    for c in cycles:
        bez *= total_degree(c)
    seeds = _run_seeds(seed, runs)
    if any(c.is_zero() for c in cycles):
        return BulletReport(_inputs_json(cycles), rho, d, [], 0, seeds, runs, n, 0)
    J = ruled_join(*cycles)
    sys = diagonal_system(r, n)
    results = [_join_run(J, sys, r, s) for s in seeds]
    extra_seed = seed + runs

    def extra():
        return _join_run(J, sys, r, extra_seed)[0]

    comps = classify_fixed_moving([res[0] for res in results], seed, extra)
    rep = BulletReport(_inputs_json(cycles), rho, d, comps, bez, seeds, runs, n)
    rep.residual_degree = bez - rep.total_degree
    if rep.residual_degree != results[0][1]:
        raise AuditError("residual degree disagrees with the SV leftover")
    _check_contracts(rep, cycles)
    return rep


def linear_forms_of(A: Cycle) -> list:
    if len(A.chunks) != 1 or A.chunks[0].coefficient != 1:
        raise InputError("expected a linear space")
    gens = A.chunks[0].generators()
    if any(not g.is_linear() for g in gens):
        raise InputError("expected a linear space")
    return gens


def bullet_direct_linear(A: Cycle, c: Cycle, seed: int = DEFAULT_SEED, runs: int = 2) -> BulletReport:
    """A . c for a linear space A, by SV in P^n with the defining forms of A."""
    if A.n != c.n:
        raise InputError(f"ambient mismatch: P^{A.n} vs P^{c.n}")
    n = c.n
    forms = linear_forms_of(A)
    dimA = A.chunks[0].dim
    top = max(c.dims()) if c.chunks else 0
    rho, d = _rho_d([dimA, top], n)
    bez = total_degree(c)
    seeds = _run_seeds(seed, runs)
    if c.is_zero():
        return BulletReport(_inputs_json([A, c]), rho, d, [], 0, seeds, runs, n, 0)
    if not forms:
        comps = [Component("fixed", ch.dim, ch.degree, chunks=[ch]) for ch in _merge(list(c.chunks))]
        comps.sort(key=lambda x: (-x.dim, x.kind, str(x.ideal)))
        return BulletReport(_inputs_json([A, c]), rho, d, comps, bez, seeds, runs, n, 0)
    sys = LinearSystem(tuple(forms), c.ring)

    def one(s):
        out = sv(c, sys, s)
        sv_mass_check(out)
        by_dim: dict = {}
        for k in out.steps():
            for ch in out.v(k):
                by_dim.setdefault(ch.dim, []).append(ch)
        return by_dim, out.residual_degree()

    results = [one(s) for s in seeds]
    comps = classify_fixed_moving([res[0] for res in results], seed, lambda: one(seed + runs)[0])
    rep = BulletReport(_inputs_json([A, c]), rho, d, comps, bez, seeds, runs, n)
    rep.residual_degree = bez - rep.total_degree
    if rep.residual_degree != results[0][1]:
        raise AuditError("residual degree disagrees with the SV leftover")
    _check_contracts(rep, [A, c])
    return rep
