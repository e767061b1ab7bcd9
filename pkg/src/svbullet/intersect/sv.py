"""Randomized Stückrad-Vogel runs and their mass audit."""

from __future__ import annotations

from dataclasses import dataclass, field

from svbullet.cycles.chunk import Chunk, Cycle, cut_with_divisor, is_proper_cut, split_by
from svbullet.errors import AuditError, GenericityError
from svbullet.intersect.join import LinearSystem
from svbullet.kernel.poly import Poly
from svbullet.kernel.rand import random_linear_combination

RESAMPLES = 10


@dataclass
class SVOutput:
    inside: dict = field(default_factory=dict)  # step k -> list of Chunks (v_k)
    residual: list = field(default_factory=list)  # 0-dimensional leftovers off the center
    combinations: dict = field(default_factory=dict)  # step k -> sampled linear form h_k
    seed: int = 0
    run: int = 0
    input_degree: int = 0
    forms: int = 0  # size of the linear system
    leftovers: list = field(default_factory=list)  # (input chunk dim, leftover degree) per input chunk

    def v(self, k: int) -> list[Chunk]:
        return self.inside.get(k, [])

    def steps(self) -> list[int]:
        return sorted(k for k, chunks in self.inside.items() if chunks)

    def inside_degree(self) -> int:
        return sum(ch.degree for chunks in self.inside.values() for ch in chunks)

    def residual_degree(self) -> int:
        return sum(ch.degree for ch in self.residual)


def _combination(sys: LinearSystem, seed: int, run: int, k: int, current: Chunk) -> Poly:
    for attempt in range(RESAMPLES + 1):
        h = random_linear_combination(sys.forms, seed, (run, k, attempt))
        if is_proper_cut(current, h):
            return h
    raise GenericityError(f"no proper cut at step {k} after {RESAMPLES} resamples")


def sv(c: Cycle, sys: LinearSystem, seed: int, run: int = 0) -> SVOutput:
    """Cut successively by random members of the system, keeping what lands in its center."""
    Z = sys.center
    out = SVOutput(seed=seed, run=run, input_degree=sum(ch.degree for ch in c.chunks), forms=len(sys))
    for ch in c.chunks:
        if ch.ring != sys.ring:
            raise AuditError("sv: cycle and linear system live in different rings")
        inside, current = split_by(ch, Z, seed)
        out.inside.setdefault(0, [])
        if inside is not None:
            out.inside[0].append(inside)
        k = 0
        while current is not None and current.dim > 0:
            k += 1
            h = _combination(sys, seed, run, k, current)
            out.combinations.setdefault(k, h)
            cut = cut_with_divisor(current, h, seed)
            inside, current = split_by(cut, Z, seed)
            out.inside.setdefault(k, [])
            if inside is not None:
                out.inside[k].append(inside)
        if current is not None:
            out.residual.append(current)
        out.leftovers.append((ch.dim, 0 if current is None else current.degree))
    return out


@dataclass(frozen=True)
class MassAudit:
    input_degree: int
    inside_degree: int
    residual_term: int
    balanced: bool


def sv_mass_check(out: SVOutput, input_degree: int | None = None) -> MassAudit:
    """Sum of deg v_k plus the residual term equals the input degree.

    The residual term is input_degree - sum deg v_k; it must be
    non-negative, must equal the degree of the leftover points, and must
    vanish when the system has at most dim forms.
    """
    if input_degree is None:
        input_degree = out.input_degree
    inside = out.inside_degree()
    residual = input_degree - inside
    if residual < 0:
        raise AuditError(f"SV mass audit: inside degree {inside} exceeds input degree {input_degree}")
    if residual != out.residual_degree():
        raise AuditError(f"SV mass audit: residual term {residual} but leftover degree {out.residual_degree()}")
    for dim, left in out.leftovers:
        if left and out.forms <= dim:
            raise AuditError(f"SV mass audit: {left} points left over although the system has {out.forms} <= {dim} forms")
    return MassAudit(input_degree, inside, residual, True)
