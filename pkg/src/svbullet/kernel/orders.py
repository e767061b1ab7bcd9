"""Monomial orders.

Internally a monomial is encoded as a tuple whose plain tuple comparison is
the *reverse* of the monomial order, so ``min`` of a polynomial's encoded
monomials is its leading monomial and ``heapq`` pops leading terms first.
The encoding is linear in the exponent vector, hence monomial
multiplication and division are componentwise addition and subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"  # "grevlex" | "lex" | "block"
    block: int = 0  # size of the eliminated front block for kind == "block"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 0:
            raise ValueError("block size must be non-negative")

    def __str__(self):
        return f"block({self.block})" if self.kind == "block" else self.kind

    def codec(self, nvars: int) -> "Codec":
        return _codec(self, nvars)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(front: int) -> MonomialOrder:
    """Eliminates the first `front` variables; grevlex inside each block."""
    return MonomialOrder("block", front)


class Codec:
    """Encode/decode exponent vectors for one (order, nvars) pair."""

    def __init__(self, order: MonomialOrder, nvars: int):
        self.order = order
        self.nvars = nvars
        n = nvars
        if order.kind == "grevlex":
            self.deg_slots = (0,)
            # slot 1 + k holds exponent of variable n-1-k
            self.exp_slots = tuple(range(1, n + 1))
        elif order.kind == "lex":
            self.deg_slots = ()
            self.exp_slots = tuple(range(n))
        else:
            k = min(order.block, n)
            self.k = k
            self.deg_slots = (0, k + 1)
            self.exp_slots = tuple(range(1, k + 1)) + tuple(range(k + 2, n + 2))

    def encode(self, e: tuple) -> tuple:
        kind = self.order.kind
        if kind == "grevlex":
            return (-sum(e),) + tuple(reversed(e))
        if kind == "lex":
            return tuple(-v for v in e)
        k = self.k
        front, rest = e[:k], e[k:]
        return (-sum(front),) + tuple(reversed(front)) + (-sum(rest),) + tuple(reversed(rest))

    def decode(self, a: tuple) -> tuple:
        kind = self.order.kind
        if kind == "grevlex":
            return tuple(reversed(a[1:]))
        if kind == "lex":
            return tuple(-v for v in a)
        k = self.k
        return tuple(reversed(a[1 : k + 1])) + tuple(reversed(a[k + 2 :]))

    def exps(self, a: tuple) -> tuple:
        """Exponents in slot order (a fixed permutation of the variables)."""
        kind = self.order.kind
        if kind == "grevlex":
            return a[1:]
        if kind == "lex":
            return tuple(-v for v in a)
        k = self.k
        return a[1 : k + 1] + a[k + 2 :]

    def from_exps(self, x: tuple) -> tuple:
        kind = self.order.kind
        if kind == "grevlex":
            return (-sum(x),) + x
        if kind == "lex":
            return tuple(-v for v in x)
        k = self.k
        return (-sum(x[:k]),) + x[:k] + (-sum(x[k:]),) + x[k:]

    def degree(self, a: tuple) -> int:
        kind = self.order.kind
        if kind == "grevlex":
            return -a[0]
        if kind == "lex":
            return -sum(a)
        return -a[0] - a[self.k + 1]


_CODECS: dict = {}


def _codec(order: MonomialOrder, nvars: int) -> Codec:
    key = (order, nvars)
    c = _CODECS.get(key)
    if c is None:
        c = _CODECS[key] = Codec(order, nvars)
    return c
