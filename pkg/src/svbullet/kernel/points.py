"""Rational points of projective space."""

from __future__ import annotations

import re
from typing import Sequence

from gmpy2 import mpq

from svbullet.errors import ParseError
from svbullet.kernel.poly import scalar, scalar_str


class ProjPoint:
    """A point [c0 : ... : cN] with exact rational coordinates.

    Stored in canonical form: the first nonzero coordinate is scaled to 1,
    so equality of objects is proportionality of representatives.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        vals = [scalar(c) for c in coords]
        lead = next((c for c in vals if c), None)
        if lead is None:
            raise ValueError("projective point needs a nonzero coordinate")
        self.coords = tuple(c / lead for c in vals)

    @classmethod
    def parse(cls, text: str) -> "ProjPoint":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ParseError(f"point must look like [1,0,0], got {text!r}")
        items = [s for s in re.split(r"[,:\s]+", body[1:-1]) if s]
        try:
            return cls([mpq(s) for s in items])
        except ValueError as exc:
            raise ParseError(f"bad point {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def chart(self) -> int:
        """Index of the first nonzero coordinate (equal to 1 in canonical form)."""
        return next(i for i, c in enumerate(self.coords) if c)

    def __str__(self):
        return "[" + ",".join(scalar_str(c) for c in self.coords) + "]"

    __repr__ = __str__
