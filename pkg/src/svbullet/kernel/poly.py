"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from svbullet.errors import ParseError, RingMismatchError

Monomial = tuple  # tuple of non-negative ints, one per variable


def scalar(value) -> mpq:
    """Coerce ints, strings ("3/4"), Fractions and mpq values to an exact mpq."""
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def scalar_str(c: mpq) -> str:
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def grevlex_key(m: Monomial):
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(m), tuple(-e for e in reversed(m)))


class PolyRing:
    """Polynomial ring Q[names] graded by total degree."""

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {v: i for i, v in enumerate(names)}
        self._hash = hash(names)

    @classmethod
    def projective(cls, n: int, prefix: str = "x") -> "PolyRing":
        """Coordinate ring of P^n with variables x0..xn."""
        return cls([f"{prefix}{i}" for i in range(n + 1)])

    @classmethod
    def join(cls, n: int, r: int) -> "PolyRing":
        """Coordinate ring of P^{r(n+1)-1} with block variables x{i}_{j}."""
        return cls([f"x{i}_{j}" for j in range(1, r + 1) for i in range(n + 1)])

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown variable {name!r} (ring has {', '.join(self.names)})") from None

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    # constructors
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = scalar(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): mpq(1)})

    @property
    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): scalar(coeff)})

    def from_terms(self, terms: Mapping[Monomial, object]) -> "Poly":
        return Poly(self, {tuple(m): scalar(c) for m, c in terms.items() if c})

    def linear_form(self, coeffs: Sequence) -> "Poly":
        if len(coeffs) != self.nvars:
            raise ValueError("one coefficient per variable expected")
        terms = {}
        for i, c in enumerate(coeffs):
            c = scalar(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            if text.ring != self:
                raise RingMismatchError(f"{text.ring} vs {self}")
            return text
        if isinstance(text, str):
            return self.parse(text)
        return self.constant(text)


class Poly:
    """Immutable polynomial: a map monomial -> nonzero mpq in a fixed ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        if not all(terms.values()):
            terms = {m: c for m, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        """Lowest total degree of a term; -1 for zero."""
        return min((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_linear(self) -> bool:
        """Nonzero homogeneous of degree 1."""
        return bool(self.terms) and all(sum(m) == 1 for m in self.terms)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def linear_coeffs(self) -> list[mpq]:
        if not self.is_linear():
            raise ValueError(f"{self} is not a linear form")
        out = [mpq(0)] * self.ring.nvars
        for m, c in self.terms.items():
            out[m.index(1)] = c
        return out

    def sorted_terms(self) -> list[tuple[Monomial, mpq]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_coefficient(self) -> mpq:
        return self.sorted_terms()[0][1] if self.terms else mpq(0)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        return Poly(self.ring, {m: c / lc for m, c in self.terms.items()})

    def primitive(self) -> "Poly":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        import math

        den = 1
        for c in self.terms.values():
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in nums:
            g = math.gcd(g, v)
        s = mpq(den, g)
        if self.leading_coefficient() < 0:
            s = -s
        return Poly(self.ring, {m: c * s for m, c in self.terms.items()})

    # arithmetic
    def _check(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.ring.constant(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = scalar(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.terms[(0,) * self.ring.nvars]
        c = scalar(other)
        return Poly(self.ring, {m: v / c for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, mpq)) or type(other).__name__ == "Fraction":
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # substitution
    def evaluate(self, point: Sequence) -> mpq:
        """Exact value at the given coordinate vector."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong number of coordinates")
        vals = [scalar(v) for v in point]
        total = mpq(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t *= v**e
            total += t
        return total

    def ring_map(self, images: Sequence["Poly"], target: PolyRing | None = None) -> "Poly":
        """Apply the substitution x_i -> images[i]."""
        if len(images) != self.ring.nvars:
            raise ValueError(f"ring_map needs {self.ring.nvars} images, got {len(images)}")
        if target is None:
            target = images[0].ring if images else self.ring
        for im in images:
            if im.ring != target:
                raise RingMismatchError("images must share a target ring")
        powers: list[dict[int, Poly]] = [{0: target.one(), 1: im} for im in images]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = pw(i, e - 1) * images[i]
            return cache[e]

        out = target.zero()
        for m, c in self.terms.items():
            t = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    t = t * pw(i, e)
            out = out + t
        return out

    def rename(self, target: PolyRing, positions: Sequence[int]) -> "Poly":
        """Move variable i to position positions[i] of target (monomial relabelling)."""
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] += k
            out[tuple(e)] = c
        return Poly(target, out)

    def homogenize(self, var) -> "Poly":
        """Homogenize with respect to variable var (index or name), which must not occur."""
        i = self.ring.index(var) if isinstance(var, str) else var
        if any(m[i] for m in self.terms):
            raise ValueError("homogenizing variable already occurs")
        d = self.degree()
        out = {}
        for m, c in self.terms.items():
            e = list(m)
            e[i] = d - sum(m)
            out[tuple(e)] = c
        return Poly(self.ring, out)

    def dehomogenize(self, var, value=1) -> "Poly":
        """Substitute var = value (default 1), staying in the same ring."""
        i = self.ring.index(var) if isinstance(var, str) else var
        v = scalar(value)
        out: dict = {}
        for m, c in self.terms.items():
            e = list(m)
            k = e[i]
            e[i] = 0
            e = tuple(e)
            val = out.get(e, 0) + c * v**k
            if val:
                out[e] = val
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def diff(self, var) -> "Poly":
        i = self.ring.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly(self.ring, out)

    # printing
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            factors = []
            for v, e in zip(names, m):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else scalar_str(mag) + "*" + "*".join(factors)
            else:
                body = scalar_str(mag)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive-descent parser for +, -, *, /, ^, parentheses, integers and variables."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", name))
            elif op is not None and not op.isspace():
                self.tokens.append(("op", op))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.pos != len(self.tokens):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                p = p + t if val == "+" else p - t
            else:
                return p

    def term(self) -> Poly:
        p = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    self.error("division by a non-constant or zero")
                p = p / d
            elif kind in ("var", "num") or (kind == "op" and val == "("):
                p = p * self.power()  # implicit multiplication
            else:
                return p

    def power(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.error("exponent must be a non-negative integer")
            return base**val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "var":
            return self.ring.gen(self.ring.index(val))
        if kind == "op" and val == "(":
            p = self.expr()
            k2, v2 = self.take()
            if v2 != ")":
                self.error("missing ')'")
            return p
        if kind == "op" and val == "-":
            return -self.atom()
        self.error(f"unexpected token {val!r}")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    return ring.parse(text)


def common_ring(polys: Iterable[Poly]) -> PolyRing:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise RingMismatchError("polynomials live in different rings")
    return rings.pop()
