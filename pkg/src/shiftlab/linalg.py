"""Exact rank computations over the supported fields.

Integer matrices (boundary matrices have entries in {-1,0,1}) are reduced
over the requested field. The prime-field path is vectorized with numpy;
products stay below 2^102, so quotients computed in 80-bit extended floats
are off by at most one and a single correction restores exactness.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import BinaryField, FieldSpec, PrimeField, RationalField

_LONGDOUBLE_OK = int(np.longdouble(2) ** 60 + np.longdouble(1)) == 2 ** 60 + 1


def mulmod_vec(a: np.ndarray, c, p: int) -> np.ndarray:
    """Elementwise a*c mod p for uint64 arrays with p < 2^51, exactly."""
    cf = np.longdouble(c) if np.isscalar(c) else c.astype(np.longdouble)
    q = np.floor(a.astype(np.longdouble) * cf / np.longdouble(p)).astype(np.uint64)
    r = a * (np.uint64(c) if np.isscalar(c) else c) - q * np.uint64(p)
    r = np.where(r >= np.uint64(1) << np.uint64(63), r + np.uint64(p), r)
    return np.where(r >= np.uint64(p), r - np.uint64(p), r)


def submod_vec(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    r = a - b
    return np.where(r >= np.uint64(1) << np.uint64(63), r + np.uint64(p), r)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p) of an integer matrix, by vectorized elimination."""
    if not rows or not rows[0]:
        return 0
    M = np.array([[x % p for x in row] for row in rows], dtype=np.uint64)
    nrows, ncols = M.shape
    rank = 0
    for col in range(ncols):
        pivots = np.nonzero(M[rank:, col])[0]
        if len(pivots) == 0:
            continue
        pivot = rank + int(pivots[0])
        M[[rank, pivot]] = M[[pivot, rank]]
        inv = pow(int(M[rank, col]), -1, p)
        M[rank] = mulmod_vec(M[rank], inv, p)
        coeffs = M[rank + 1:, col]
        nz = np.nonzero(coeffs)[0]
        for i in nz:
            r = rank + 1 + int(i)
            M[r] = submod_vec(M[r], mulmod_vec(M[rank], int(coeffs[i]), p), p)
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_gf2(rows: list[list[int]]) -> int:
    """Rank over GF(2) via bitset elimination."""
    basis: dict[int, int] = {}
    rank = 0
    for row in rows:
        m = 0
        for j, x in enumerate(row):
            if x % 2:
                m |= 1 << j
        while m:
            lead = m.bit_length() - 1
            if lead in basis:
                m ^= basis[lead]
            else:
                basis[lead] = m
                rank += 1
                break
    return rank


def rank_exact(rows: list[list[Fraction]]) -> int:
    """Rank over the rationals by fraction Gaussian elimination."""
    M = [list(map(Fraction, row)) for row in rows]
    if not M or not M[0]:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if M[r][col] != 0), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(nrows):
            if r != rank and M[r][col] != 0:
                c = M[r][col]
                M[r] = [a - c * b for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def int_matrix_rank(rows: list[list[int]], field_spec: FieldSpec) -> int:
    """Rank of an integer matrix over the field described by field_spec."""
    if not rows or not rows[0]:
        return 0
    if field_spec.mode == "binary":
        # entries reduce into the prime subfield; elimination stays there
        return rank_gf2(rows)
    if field_spec.mode == "prime" and _LONGDOUBLE_OK and field_spec.p < 1 << 51:
        return rank_mod_p(rows, field_spec.p)
    if field_spec.mode == "prime":
        return generic_rank(rows, PrimeField(field_spec.p))
    return rank_exact(rows)


def generic_rank(rows, field) -> int:
    """Field-generic elimination; used for moduli outside the fast range."""
    M = [[field.from_int(x) if isinstance(x, int) else x for x in row] for row in rows]
    if not M or not M[0]:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if not field.is_zero(M[r][col])), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = field.inv(M[rank][col])
        M[rank] = [field.mul(x, inv) for x in M[rank]]
        for r in range(nrows):
            if r != rank and not field.is_zero(M[r][col]):
                c = M[r][col]
                M[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank
