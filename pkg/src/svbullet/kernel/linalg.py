"""Exact linear algebra over Q (thin wrappers over sympy's DomainMatrix)."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def _dm(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [[QQ(mpq(v).numerator, mpq(v).denominator) for v in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def matrix_det(rows) -> mpq:
    return mpq(_dm(rows).det())


def matrix_inverse(rows) -> list[list[mpq]]:
    return [[mpq(v) for v in row] for row in _dm(rows).inv().to_list()]


def matrix_rank(rows) -> int:
    if not rows:
        return 0
    return _dm(rows).rank()


def rref(rows) -> tuple[list[list[mpq]], tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if not rows:
        return [], ()
    m, pivots = _dm(rows).rref()
    out = [[mpq(v) for v in row] for row in m.to_list()[: len(pivots)]]
    return out, tuple(pivots)


def complete_basis(rows: Sequence[Sequence], n: int) -> list[list[mpq]]:
    """Extend independent row vectors to a basis of Q^n using unit vectors."""
    basis = [list(map(mpq, r)) for r in rows]
    rank = matrix_rank(basis) if basis else 0
    if rank != len(basis):
        raise ValueError("rows are linearly dependent")
    for i in range(n):
        if len(basis) == n:
            break
        e = [mpq(0)] * n
        e[i] = mpq(1)
        if matrix_rank(basis + [e]) > len(basis):
            basis.append(e)
    return basis
