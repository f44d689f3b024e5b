"""Exact matrix helpers over a FieldSpec, backed by sympy's DomainMatrix.

Matrices travel through the workbench as lists of rows of plain field
scalars; these helpers convert at the boundary so callers never touch
sympy domain elements. Sweeps over a prime field that only need ranks
use `rank_mod_p` on numpy arrays instead.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sympy.polys.matrices import DomainMatrix

from src.core.fields import FieldSpec, Scalar

Rows = Sequence[Sequence[Scalar]]


def to_domain_matrix(rows: Rows, ncols: int, field: FieldSpec) -> DomainMatrix:
    K = field.domain
    data = [[field.to_domain(x) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), K)


def rank(rows: Rows, ncols: int, field: FieldSpec) -> int:
    if not rows or ncols == 0:
        return 0
    return int(to_domain_matrix(rows, ncols, field).rank())


def rref(rows: Rows, ncols: int, field: FieldSpec) -> tuple[list[list[Scalar]], tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if not rows or ncols == 0:
        return [], ()
    R, pivots = to_domain_matrix(rows, ncols, field).rref()
    out = [[field.from_domain(x) for x in row] for row in R.to_list()[: len(pivots)]]
    return out, tuple(pivots)


def nullspace(rows: Rows, ncols: int, field: FieldSpec) -> list[list[Scalar]]:
    """Basis of {x : A x = 0}, one vector per free column of the rref."""
    if ncols == 0:
        return []
    if not rows:
        return [_unit(ncols, j, field) for j in range(ncols)]
    R, pivots = rref(rows, ncols, field)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = _unit(ncols, f, field)
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(R[i][f])
        basis.append(v)
    return basis


def independent_columns(columns: Rows, length: int, field: FieldSpec) -> tuple[int, ...]:
    """Indices of the columns that survive a left-to-right independence scan."""
    if not columns or length == 0:
        return ()
    rows = [[col[i] for col in columns] for i in range(length)]
    _, pivots = rref(rows, len(columns), field)
    return pivots


def solve(rows: Rows, rhs: Sequence[Scalar], ncols: int, field: FieldSpec) -> list[Scalar] | None:
    """One solution of A x = b with free variables set to zero, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def matmul(a: Rows, b: Rows, field: FieldSpec) -> list[list[Scalar]]:
    if not a or not b:
        return [[] for _ in a]
    ncols = len(b[0])
    A = to_domain_matrix(a, len(b), field)
    B = to_domain_matrix(b, ncols, field)
    return [[field.from_domain(x) for x in row] for row in (A * B).to_list()]


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank over GF(p) of an integer array, by elimination on int64 rows."""
    if p >= 2**31:
        raise ValueError(f"int64 elimination needs p < 2^31, got {p}")
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 2 or 0 in m.shape:
        return 0
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        m[r + 1:] = (m[r + 1:] - np.outer(m[r + 1:, c], m[r])) % p
        r += 1
    return r


def _unit(n: int, j: int, field: FieldSpec) -> list[Scalar]:
    v = [field.zero] * n
    v[j] = field.one
    return v
