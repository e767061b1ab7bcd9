"""Buchberger's algorithm over Q with Gebauer-Moller pair elimination.

Polynomials are handled internally as dicts {encoded monomial: mpq}, with
the encoding of :mod:`svbullet.kernel.orders` (min = leading monomial).
"""

from __future__ import annotations

import heapq
from operator import add, le, sub
from typing import Sequence

from gmpy2 import mpq

from svbullet.kernel.orders import GREVLEX, Codec, MonomialOrder
from svbullet.kernel.poly import Poly, PolyRing


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, internal: list[dict]):
        self.ring = ring
        self.order = order
        self.codec = order.codec(ring.nvars)
        # sorted by leading monomial, ascending in the order
        self._internal = sorted(internal, key=min, reverse=True)
        self._leads = [min(g) for g in self._internal]
        self._lead_exps = [self.codec.exps(m) for m in self._leads]
        self._polys = None

    @property
    def polys(self) -> list[Poly]:
        if self._polys is None:
            dec = self.codec.decode
            self._polys = [Poly(self.ring, {dec(m): c for m, c in g.items()}) for g in self._internal]
        return self._polys

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self._internal)

    def leading_monomials(self) -> list[tuple]:
        """Exponent vectors of the leading monomials."""
        dec = self.codec.decode
        return [dec(m) for m in self._leads]

    def is_unit(self) -> bool:
        return len(self._internal) == 1 and self.codec.degree(self._leads[0]) == 0

    def is_zero(self) -> bool:
        return not self._internal

    def key(self) -> tuple:
        """Hashable canonical form; equal keys iff equal ideals (same order)."""
        return tuple(tuple(sorted(g.items())) for g in self._internal)

    def encode(self, f: Poly) -> dict:
        enc = self.codec.encode
        return {enc(m): c for m, c in f.terms.items()}

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        r = _reduce(self.encode(f), self._internal, self._leads, self._lead_exps, self.codec)
        dec = self.codec.decode
        return Poly(self.ring, {dec(m): c for m, c in r.items()})

    def contains(self, f: Poly) -> bool:
        if f.is_zero():
            return True
        r = _reduce(self.encode(f), self._internal, self._leads, self._lead_exps, self.codec)
        return not r

    def __repr__(self):
        return f"GroebnerBasis[{self.order}]({', '.join(map(str, self.polys))})"


def _find_divisor(m_exps, lead_exps, start=0):
    for i in range(start, len(lead_exps)):
        if all(map(le, lead_exps[i], m_exps)):
            return i
    return -1


def _reduce(f: dict, G: list[dict], leads: list, lead_exps: list, codec: Codec, top_only=False) -> dict:
    """Full (or top) reduction of f by the monic polynomials G."""
    if not f:
        return {}
    p = dict(f)
    heap = list(p)
    heapq.heapify(heap)
    r = {}
    exps = codec.exps
    while heap:
        m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        i = _find_divisor(exps(m), lead_exps) if G else -1
        if i < 0:
            r[m] = c
            if top_only:
                for mm in heap:
                    v = p.pop(mm, None)
                    if v is not None:
                        r[mm] = v
                return r
            continue
        g = G[i]
        q = tuple(map(sub, m, leads[i]))
        lg = leads[i]
        for t, gc in g.items():
            if t is lg:
                continue
            mt = tuple(map(add, q, t))
            v = p.get(mt)
            if v is None:
                p[mt] = -c * gc
                heapq.heappush(heap, mt)
            else:
                v = v - c * gc
                if v:
                    p[mt] = v
                else:
                    del p[mt]
    return r


def _monic(f: dict) -> dict:
    lm = min(f)
    lc = f[lm]
    if lc == 1:
        return f
    inv = 1 / lc
    return {m: c * inv for m, c in f.items()}


def _lcm(a, b, codec: Codec):
    ea, eb = codec.exps(a), codec.exps(b)
    return codec.from_exps(tuple(map(max, ea, eb)))


def _coprime(a, b, codec: Codec) -> bool:
    return not any(x and y for x, y in zip(codec.exps(a), codec.exps(b)))


def _divides(a, b, codec: Codec) -> bool:
    return all(map(le, codec.exps(a), codec.exps(b)))


def _spoly(f: dict, g: dict, lf, lg, lcm) -> dict:
    qf = tuple(map(sub, lcm, lf))
    qg = tuple(map(sub, lcm, lg))
    out: dict = {}
    for t, c in f.items():
        out[tuple(map(add, qf, t))] = c
    for t, c in g.items():
        m = tuple(map(add, qg, t))
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def buchberger(polys: Sequence[dict], codec: Codec) -> list[dict]:
    """Reduced monic Groebner basis of the given encoded polynomials."""
    polys = [dict(f) for f in polys if f]
    if not polys:
        return []
    deg = codec.degree
    store: list[dict] = []  # every basis element ever added
    lead: list = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: list[tuple] = []  # (sugar, lcm, i, j)

    def update(h_idx: int):
        nonlocal active, pairs
        lh = lead[h_idx]
        cand = []
        for g in active:
            lcm = _lcm(lead[g], lh, codec)
            s = max(sugar[g] + deg(lcm) - deg(lead[g]), sugar[h_idx] + deg(lcm) - deg(lh))
            cand.append((g, lcm, s))
        # Gebauer-Moller: drop a pair whose lcm is properly divided by another pair's lcm
        kept = []
        for idx, (g, lcm, s) in enumerate(cand):
            if _coprime(lead[g], lh, codec):
                kept.append((g, lcm, s))
                continue
            dominated = False
            for jdx, (g2, lcm2, s2) in enumerate(cand):
                if jdx == idx:
                    continue
                if _divides(lcm2, lcm, codec) and (lcm2 != lcm or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, lcm, s))
        # product criterion
        new_pairs = [(s, lcm, g, h_idx) for (g, lcm, s) in kept if not _coprime(lead[g], lh, codec)]
        # chain criterion on old pairs
        survivors = []
        for pr in pairs:
            s, lcm, i, j = pr
            if _divides(lh, lcm, codec):
                if _lcm(lead[i], lh, codec) != lcm and _lcm(lead[j], lh, codec) != lcm:
                    continue
            survivors.append(pr)
        pairs = survivors + new_pairs
        active = [g for g in active if not _divides(lh, lead[g], codec)] + [h_idx]

    def add_poly(h: dict, s: int):
        h = _monic(h)
        store.append(h)
        lead.append(min(h))
        sugar.append(s)
        update(len(store) - 1)

    polys.sort(key=min, reverse=True)
    for f in polys:
        G = [store[g] for g in active]
        leads = [lead[g] for g in active]
        lexps = [codec.exps(m) for m in leads]
        h = _reduce(f, G, leads, lexps, codec)
        if h:
            add_poly(h, max(deg(m) for m in f))
            if deg(lead[-1]) == 0:
                return [{min(h): mpq(1)}]

    while pairs:
        k = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
        s, lcm, i, j = pairs.pop(k)
        sp = _spoly(store[i], store[j], lead[i], lead[j], lcm)
        G = [store[g] for g in active]
        leads = [lead[g] for g in active]
        lexps = [codec.exps(m) for m in leads]
        h = _reduce(sp, G, leads, lexps, codec)
        if h:
            add_poly(h, s)
            if deg(lead[-1]) == 0:
                return [{min(store[-1]): mpq(1)}]

    return interreduce([store[g] for g in active], codec)


def interreduce(G: list[dict], codec: Codec) -> list[dict]:
    """Minimalize then fully reduce a Groebner basis."""
    G = sorted((_monic(g) for g in G), key=min)
    minimal = []
    leads = []
    for g in sorted(G, key=min, reverse=True):  # smallest leading monomials first
        lg = min(g)
        if any(_divides(l, lg, codec) for l in leads):
            continue
        minimal.append(g)
        leads.append(lg)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        oleads = [min(o) for o in others]
        olexps = [codec.exps(m) for m in oleads]
        lg = min(g)
        tail = {m: c for m, c in g.items() if m != lg}
        red = _reduce(tail, others, oleads, olexps, codec)
        red[lg] = mpq(1)
        out.append(red)
    return out


_CACHE: dict = {}
_CACHE_LIMIT = 4096


def groebner_polys(polys: Sequence[Poly], ring: PolyRing, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by polys.

    Results are memoized on (ring, order, generators); the memo is a pure
    cache and never changes results.
    """
    gens = [p for p in polys if not p.is_zero()]
    key = (ring.names, order, frozenset(frozenset(p.terms.items()) for p in gens))
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    codec = order.codec(ring.nvars)
    enc = codec.encode
    internal = buchberger([{enc(m): c for m, c in p.terms.items()} for p in gens], codec)
    gb = GroebnerBasis(ring, order, internal)
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[key] = gb
    return gb


def clear_cache():
    _CACHE.clear()


def spoly_check(gb: GroebnerBasis) -> bool:
    """Independent check of Buchberger's criterion: every S-polynomial reduces to 0."""
    codec = gb.codec
    G = gb._internal
    leads = gb._leads
    lexps = gb._lead_exps
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            lcm = _lcm(leads[i], leads[j], codec)
            sp = _spoly(G[i], G[j], leads[i], leads[j], lcm)
            if _reduce(sp, G, leads, lexps, codec):
                return False
    return True
