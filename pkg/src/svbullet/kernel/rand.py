"""Seeded randomness with named sub-streams.

Every random choice in the package is drawn from a generator derived from
(seed, stream key), so results are a pure function of inputs and seed.
"""

from __future__ import annotations

import zlib
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from svbullet.kernel.linalg import matrix_det, matrix_inverse
from svbullet.kernel.poly import Poly, PolyRing

DEFAULT_SEED = 0x5EED
COEFF_BOUND = 9999
CHANGE_BOUND = 99


def _key_part(k) -> int:
    if isinstance(k, str):
        return zlib.crc32(k.encode())
    k = int(k)
    if k < 0:
        raise ValueError("stream keys must be non-negative")
    return k


def stream(seed: int, *keys) -> np.random.Generator:
    """Independent generator for the sub-stream named by keys."""
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(_key_part(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))


def random_ints(rng: np.random.Generator, count: int, bound: int = COEFF_BOUND) -> list[int]:
    """count integers uniform in [-bound, bound], not all zero."""
    while True:
        vals = [int(v) for v in rng.integers(-bound, bound, size=count, endpoint=True)]
        if any(vals):
            return vals


def random_linear_combination(forms: Sequence[Poly], seed: int, stream_index=0) -> Poly:
    """sum a_i * forms[i] with a_i uniform in [-9999, 9999], not all zero."""
    if not forms:
        raise ValueError("random_linear_combination needs at least one form")
    ring = forms[0].ring
    for f in forms:
        if f.ring != ring or not f.is_linear():
            raise ValueError("forms must be linear and share a ring")
    keys = stream_index if isinstance(stream_index, tuple) else (stream_index,)
    coeffs = random_ints(stream(seed, "lincomb", *keys), len(forms))
    out = ring.zero()
    for a, f in zip(coeffs, forms):
        out = out + f * a
    return out


def random_combination(polys: Sequence[Poly], rng: np.random.Generator) -> Poly:
    """Random integer combination of arbitrary polynomials (same ring)."""
    coeffs = random_ints(rng, len(polys))
    out = polys[0].ring.zero()
    for a, f in zip(coeffs, polys):
        out = out + f * a
    return out


class LinearChange:
    """Invertible linear substitution x_i -> sum_j M[i][j] x_j on one ring."""

    def __init__(self, ring: PolyRing, matrix):
        self.ring = ring
        self.matrix = [[mpq(v) for v in row] for row in matrix]
        self.inverse_matrix = matrix_inverse(self.matrix)

    def _images(self, mat) -> list[Poly]:
        return [self.ring.linear_form(row) for row in mat]

    def apply(self, f: Poly) -> Poly:
        return f.ring_map(self._images(self.matrix), self.ring)

    def invert(self, f: Poly) -> Poly:
        return f.ring_map(self._images(self.inverse_matrix), self.ring)

    def point_image(self, coords: Sequence) -> list[mpq]:
        """Coordinates of the image point under the induced map of P^n.

        If F(x) = G(Mx) then V(G∘M) is the preimage of V(G); so the point p on
        V(F) goes to M^{-1}p on V(apply(F)).
        """
        inv = self.inverse_matrix
        return [sum((inv[i][j] * mpq(coords[j]) for j in range(len(coords))), mpq(0)) for i in range(len(inv))]


def random_coordinate_change(ring: PolyRing, seed: int, stream_index=0) -> LinearChange:
    """Random integer matrix with entries in [-99, 99], resampled until invertible."""
    keys = stream_index if isinstance(stream_index, tuple) else (stream_index,)
    rng = stream(seed, "coordchange", *keys)
    n = ring.nvars
    while True:
        mat = [[int(v) for v in rng.integers(-CHANGE_BOUND, CHANGE_BOUND, size=n, endpoint=True)] for _ in range(n)]
        if matrix_det(mat) != 0:
            return LinearChange(ring, mat)
