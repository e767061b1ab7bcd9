"""Text format for cycles.

    ambient 2
    component coeff=1 dim=1 degree=3
    x1^3 - x0*x2^2
    point [1,0,0]
    hypersurface x0*x2 - x1^2
    linear x0, x1
    full

``component`` opens a block of generators (one per line, until the next
keyword).  ``dim=`` and ``degree=`` are optional checks; ``degree`` is the
chunk degree including the coefficient.  ``#`` starts a comment.
"""

from __future__ import annotations

import re

from svbullet.cycles.chunk import Chunk, Cycle, make_full_space, make_hypersurface, make_linear_space, make_point
from svbullet.errors import InputError, ParseError, SVError
from svbullet.ideals.ideal import Ideal, equidim_hull, hilbert
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.poly import PolyRing

_KEYWORDS = ("component", "point", "hypersurface", "linear", "full")
_ATTR = re.compile(r"^(\w+)=(-?\d+)$")


def _attrs(words: list[str], lineno: int) -> dict:
    out = {}
    for w in words:
        m = _ATTR.match(w)
        if not m:
            raise ParseError(f"line {lineno}: bad attribute {w!r}")
        key = m.group(1)
        if key not in ("coeff", "dim", "degree"):
            raise ParseError(f"line {lineno}: unknown attribute {key!r}")
        out[key] = int(m.group(2))
    return out


def parse_cycle(text: str, label: str = "") -> Cycle:
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines or not lines[0][1].startswith("ambient"):
        raise ParseError("line 1: cycle files start with 'ambient n'")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or not parts[1].isdigit():
        raise ParseError(f"line {lineno}: expected 'ambient n'")
    n = int(parts[1])
    ring = PolyRing.projective(n)
    chunks: list[Chunk] = []
    block = None  # (lineno, attrs, [generator lines])

    def close():
        nonlocal block
        if block is None:
            return
        bl, attrs, gens = block
        block = None
        coeff = attrs.get("coeff", 1)
        if coeff <= 0:
            raise InputError(f"line {bl}: coefficient must be positive, got {coeff}")
        polys = []
        for gl, body in gens:
            try:
                f = ring.parse(body)
            except ParseError as exc:
                raise ParseError(f"line {gl}: {exc}") from None
            if not f.is_homogeneous():
                raise InputError(f"line {gl}: generator {f} is not homogeneous")
            polys.append(f)
        I = Ideal(ring, polys)
        if I.is_unit() or hilbert(I).dim < 0:
            raise InputError(f"line {bl}: component defines the empty scheme")
        hull = equidim_hull(I)
        if hilbert(hull) != hilbert(I) or not hull.contains_ideal(I) or not I.contains_ideal(hull):
            raise InputError(f"line {bl}: component ideal is not unmixed")
        ch = Chunk(I, coeff)
        _check(ch, attrs, bl)
        chunks.append(ch)

    for lineno, ln in lines[1:]:
        word, _, rest = ln.partition(" ")
        rest = rest.strip()
        if word not in _KEYWORDS:
            if block is None:
                raise ParseError(f"line {lineno}: generator outside a component block")
            block[2].append((lineno, ln))
            continue
        close()
        try:
            if word == "component":
                block = (lineno, _attrs(rest.split(), lineno), [])
                continue
            if word == "point":
                bracket = rest.rfind("]")
                p = ProjPoint.parse(rest[: bracket + 1])
                attrs = _attrs(rest[bracket + 1 :].split(), lineno)
                if p.n != n:
                    raise InputError(f"line {lineno}: point has {len(p)} coordinates, expected {n + 1}")
                new = make_point(p, attrs.get("coeff", 1)).chunks
            elif word == "hypersurface":
                body, attrs = _split_attrs(rest, lineno)
                new = make_hypersurface(ring.parse(body), attrs.get("coeff", 1)).chunks
            elif word == "linear":
                body, attrs = _split_attrs(rest, lineno)
                forms = [ring.parse(s) for s in body.split(",") if s.strip()]
                new = make_linear_space(forms, ring).chunks
            else:
                attrs = _attrs(rest.split(), lineno)
                new = make_full_space(n).chunks
            if attrs.get("coeff", 1) != 1 and word in ("linear", "full"):
                new = [c.with_coefficient(attrs["coeff"]) for c in new]
            for ch in new:
                _check(ch, attrs, lineno)
            chunks.extend(new)
        except ParseError as exc:
            msg = str(exc)
            raise ParseError(msg if msg.startswith("line ") else f"line {lineno}: {msg}") from None
        except SVError as exc:
            msg = str(exc)
            raise type(exc)(msg if msg.startswith("line ") else f"line {lineno}: {msg}") from None
    close()
    return Cycle(n, chunks, label)


def _split_attrs(rest: str, lineno: int) -> tuple[str, dict]:
    words = rest.split()
    k = len(words)
    while k > 0 and _ATTR.match(words[k - 1]):
        k -= 1
    return " ".join(words[:k]), _attrs(words[k:], lineno)


def _check(ch: Chunk, attrs: dict, lineno: int) -> None:
    if attrs.get("coeff", 1) <= 0:
        raise InputError(f"line {lineno}: coefficient must be positive")
    if "dim" in attrs and attrs["dim"] != ch.dim:
        raise InputError(f"line {lineno}: declared dim {attrs['dim']}, computed {ch.dim}")
    if "degree" in attrs and attrs["degree"] != ch.degree:
        raise InputError(f"line {lineno}: declared degree {attrs['degree']}, computed {ch.degree}")


def format_cycle(c: Cycle) -> str:
    out = [f"ambient {c.n}"]
    for ch in c.chunks:
        out.append(f"component coeff={ch.coefficient} dim={ch.dim} degree={ch.degree}")
        out.extend(str(g) for g in ch.generators())
    return "\n".join(out) + "\n"


def read_cycle(path) -> Cycle:
    with open(path, encoding="utf-8") as fh:
        return parse_cycle(fh.read(), label=str(path))
