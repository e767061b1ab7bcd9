"""Hilbert series of monomial ideals and the dimension/degree they determine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class HilbertSummary:
    dim: int  # projective dimension, -1 for the empty scheme
    degree: int


def _minimalize(gens: Iterable[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _addp(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def hilbert_numerator(gens: Sequence[tuple], nvars: int) -> list[int]:
    """Numerator K(t) with HS(R/M) = K(t) / (1 - t)^nvars, by pivot splitting."""
    gens = _minimalize(gens)
    return _hn(gens, nvars)


def _hn(gens: list[tuple], nvars: int) -> list[int]:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # coprime base case
    used = [0] * nvars
    coprime = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            factor = [0] * (d + 1)
            factor[0] = 1
            factor[d] -= 1
            out = _mul(out, factor)
        return out
    # pivot on the variable occurring in the most generators
    counts = [sum(1 for g in gens if g[i]) for i in range(nvars)]
    i = max(range(nvars), key=lambda k: counts[k])
    exps = sorted(g[i] for g in gens if g[i])
    e = exps[len(exps) // 2]
    for g in gens:
        if g[i] and sum(g) == g[i]:
            e = min(e, g[i] - 1)  # keep the pivot outside the ideal
    pivot = tuple(e if k == i else 0 for k in range(nvars))
    plus = _minimalize([g for g in gens if g[i] < e] + [pivot])
    colon = _minimalize([tuple(max(v - (e if k == i else 0), 0) for k, v in enumerate(g)) for g in gens])
    shifted = [0] * e + _hn(colon, nvars)
    return _addp(_hn(plus, nvars), shifted)


def summary_from_numerator(num: list[int], nvars: int) -> HilbertSummary:
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return HilbertSummary(-1, 0)
    k = 0
    # divide by (1 - t) while it divides
    while sum(num) == 0:
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        k += 1
    affine_dim = nvars - k
    if affine_dim <= 0:
        return HilbertSummary(-1, 0)
    return HilbertSummary(affine_dim - 1, sum(num))


def monomial_hilbert(gens: Sequence[tuple], nvars: int) -> HilbertSummary:
    return summary_from_numerator(hilbert_numerator(gens, nvars), nvars)


def hilbert_function(gens: Sequence[tuple], nvars: int, degree: int) -> int:
    """Number of standard monomials of the given degree (brute force)."""
    gens = _minimalize(gens)
    count = 0

    def rec(prefix: list[int], remaining: int, pos: int):
        nonlocal count
        if pos == nvars - 1:
            m = tuple(prefix + [remaining])
            if not any(all(a <= b for a, b in zip(g, m)) for g in gens):
                count += 1
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, pos + 1)

    if nvars == 0:
        return 1 if degree == 0 and not gens else 0
    rec([], degree, 0)
    return count
