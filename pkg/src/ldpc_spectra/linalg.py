"""Dense linear algebra over tabled finite fields.

Matrices are numpy arrays of canonical element integers.  Only fields with
dense operation tables (q <= 256) are supported; that covers every field a
code can realistically be enumerated over.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .gf import FieldSpec


def _require_tables(field: FieldSpec) -> None:
    if field.add_table is None:
        raise ParameterError(
            f"dense linear algebra needs a tabled field (q <= 256), got q = {field.q}"
        )


def rref(field: FieldSpec, matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q).

    Returns
    -------
    (reduced, pivot_cols)
        reduced is a new array in reduced echelon form; pivot_cols lists the
        pivot column of each nonzero row in order.
    """
    _require_tables(field)
    add_t = field.add_table
    mul_t = field.mul_table
    neg_t = field.neg_table
    inv_t = field.inv_table
    m = np.array(matrix, dtype=np.uint8, copy=True)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r >= rows:
            break
        hit = np.nonzero(m[r:, col])[0]
        if hit.size == 0:
            continue
        lead = r + int(hit[0])
        if lead != r:
            m[[r, lead]] = m[[lead, r]]
        scale = inv_t[m[r, col]]
        m[r] = mul_t[scale, m[r]]
        others = np.nonzero(m[:, col])[0]
        others = others[others != r]
        if others.size:
            factors = neg_t[m[others, col]]
            m[others] = add_t[m[others], mul_t[factors[:, None], m[r][None, :]]]
        pivots.append(col)
        r += 1
    return m, pivots


def kernel_basis(field: FieldSpec, matrix: np.ndarray) -> np.ndarray:
    """A basis of the right kernel {x : matrix @ x = 0 over GF(q)}.

    Returns a (dim, cols) uint8 array; dim = cols - rank.  Each free column
    yields one basis vector with a 1 there and back-substituted pivot
    entries.
    """
    _require_tables(field)
    reduced, pivots = rref(field, matrix)
    cols = reduced.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), np.uint8)
    neg_t = field.neg_table
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row_idx, pc in enumerate(pivots):
            basis[i, pc] = neg_t[reduced[row_idx, fc]]
    return basis


def matvec(field: FieldSpec, matrix: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """matrix @ vec over GF(q), for cross-checking kernel membership."""
    _require_tables(field)
    add_t = field.add_table
    mul_t = field.mul_table
    out = np.zeros(matrix.shape[0], np.uint8)
    for j in range(matrix.shape[1]):
        v = int(vec[j])
        if v:
            out = add_t[out, mul_t[matrix[:, j], v]]
    return out
