"""Exterior algebraic shifting through generic compound-matrix pivots.

A generic invertible matrix M over the chosen field induces a basis change
of the exterior face ring.  A k-subset B of [n] lands in the shifted
complex exactly when the vector of k x k minors det(M[A, B]), with A
running over the (k-1)-faces of the input in lex order, is linearly
independent of the vectors of all lex-earlier rows.  Rows are reduced
incrementally against an echelon basis and iteration stops as soon as the
basis saturates the column count.

Genericity comes from randomness: every shift is run twice with
independently derived matrices and the results must agree.  A third run
arbitrates a mismatch; a three-way disagreement raises GenericityFailure.
"""

import hashlib
import os
import random
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .complexes import SimplicialComplex, betti
from .errors import (CapExceeded, DimensionTooHigh, GenericityFailure,
                     NotShiftedInput, ShiftlabError)
from .fields import FieldSpec
from .lexseg import count_extensions, is_shifted
from .linalg import _LONGDOUBLE_OK, mulmod_vec, submod_vec

DEFAULT_VERTEX_CAP = 200
_MATRIX_RETRIES = 64


def vertex_cap() -> int:
    """Largest accepted ground-set size; SHIFTLAB_CAP overrides."""
    raw = os.environ.get("SHIFTLAB_CAP")
    return int(raw) if raw else DEFAULT_VERTEX_CAP


def _signed_permutations(k: int):
    out = []
    for perm in permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k)
                  if perm[i] > perm[j])
        out.append((perm, -1 if inv % 2 else 1))
    return out


_PERMS = {k: _signed_permutations(k) for k in range(1, 5)}


def _run_seed(seed: int, run: int) -> int:
    digest = hashlib.sha256(f"shift:{seed}:{run}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _fast_prime(field_spec: FieldSpec) -> bool:
    return (field_spec.mode == "prime" and _LONGDOUBLE_OK
            and field_spec.p < (1 << 51))


@dataclass
class GenericMatrix:
    """Random invertible matrix, deterministic given (field, n, seed)."""

    field_spec: FieldSpec
    n: int
    seed: int
    entries: object  # int64 ndarray in fast prime mode, else list of lists

    @property
    def is_numpy(self) -> bool:
        return isinstance(self.entries, np.ndarray)


def sample_generic_matrix(field_spec: FieldSpec, n: int,
                          seed: int) -> GenericMatrix:
    rng = random.Random(seed)
    field = field_spec.field()
    for _ in range(_MATRIX_RETRIES):
        if _fast_prime(field_spec):
            p = field_spec.p
            entries = np.array(
                [[rng.randrange(p) for _ in range(n)] for _ in range(n)],
                dtype=np.uint64)
            singular = _numpy_singular(entries, p)
        else:
            entries = [[field.random_element(rng) for _ in range(n)]
                       for _ in range(n)]
            singular = _generic_singular(entries, field)
        if not singular:
            return GenericMatrix(field_spec, n, seed, entries)
    raise ShiftlabError("could not sample an invertible generic matrix")


def _numpy_singular(entries: np.ndarray, p: int) -> bool:
    from .linalg import rank_mod_p
    return rank_mod_p(entries.tolist(), p) < entries.shape[0]


def _generic_singular(entries, field) -> bool:
    from .linalg import generic_rank
    return generic_rank([row[:] for row in entries], field) < len(entries)


def _admissible(B: tuple, accepted: set) -> bool:
    # a shifted family is closed under lowering any single element, so a
    # candidate whose lowered neighbour is missing can never be accepted
    members = set(B)
    for idx, b in enumerate(B):
        j = b - 1
        if j >= 1 and j not in members:
            lowered = B[:idx] + (j,) + B[idx + 1:]
            if lowered not in accepted:
                return False
    return True


def _shift_dimension(n: int, k: int, target: int, row_of, try_insert):
    accepted = set()
    out = []
    for B in combinations(range(1, n + 1), k):
        if len(out) == target:
            break
        if not _admissible(B, accepted):
            continue
        if try_insert(row_of(B)):
            accepted.add(B)
            out.append(B)
    if len(out) != target:
        raise GenericityFailure(
            f"rank saturation missed in dimension {k - 1}")
    return out


def _prime_row_fn(M: np.ndarray, cols, k: int, p: int):
    As = np.array(cols, dtype=np.intp) - 1  # (c, k) row indices per minor
    pmod = np.uint64(p)

    def row_of(B):
        idx = [b - 1 for b in B]
        if k == 1:
            return M[As[:, 0], idx[0]].copy()
        G = M[:, idx][As]  # G[m, i, j] = M[A_m[i], B[j]]
        c = As.shape[0]
        pos = np.zeros(c, dtype=np.uint64)
        neg = np.zeros(c, dtype=np.uint64)
        for perm, sign in _PERMS[k]:
            t = G[:, 0, perm[0]]
            for i in range(1, k):
                t = mulmod_vec(t, G[:, i, perm[i]], p)
            if sign > 0:
                pos = (pos + t) % pmod
            else:
                neg = (neg + t) % pmod
        return submod_vec(pos, neg, p)

    return row_of


def _prime_reducer(p: int):
    basis = []

    def try_insert(v):
        for j, r in basis:
            c = int(v[j])
            if c:
                v = submod_vec(v, mulmod_vec(r, c, p), p)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        v = mulmod_vec(v, pow(int(v[j]), p - 2, p), p)
        basis.append((j, v))
        return True

    return try_insert


def _generic_row_fn(M, cols, k: int, field):
    def row_of(B):
        out = []
        for A in cols:
            sub = [[M[a - 1][b - 1] for b in B] for a in A]
            acc = field.from_int(0)
            for perm, sign in _PERMS[k]:
                t = sub[0][perm[0]]
                for i in range(1, k):
                    t = field.mul(t, sub[i][perm[i]])
                acc = field.add(acc, t) if sign > 0 else field.sub(acc, t)
            out.append(acc)
        return out

    return row_of


def _generic_reducer(field):
    basis = []

    def try_insert(v):
        for j, r in basis:
            c = v[j]
            if not field.is_zero(c):
                v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, r)]
        pivot = next((j for j, x in enumerate(v) if not field.is_zero(x)),
                     None)
        if pivot is None:
            return False
        inv = field.inv(v[pivot])
        v = [field.mul(inv, x) for x in v]
        basis.append((pivot, v))
        return True

    return try_insert


def _shift_once(K: SimplicialComplex, field_spec: FieldSpec, seed: int):
    matrix = sample_generic_matrix(field_spec, K.n, seed)
    field = field_spec.field()
    faces = set()
    pivots = []
    for k in range(1, K.dim + 2):
        cols = sorted(K.faces(k - 1))
        if matrix.is_numpy:
            row_of = _prime_row_fn(matrix.entries, cols, k, field_spec.p)
            try_insert = _prime_reducer(field_spec.p)
        else:
            row_of = _generic_row_fn(matrix.entries, cols, k, field)
            try_insert = _generic_reducer(field)
        accepted = _shift_dimension(K.n, k, len(cols), row_of, try_insert)
        pivots.append(len(accepted))
        faces.update(accepted)
    return SimplicialComplex(faces), tuple(pivots)


@dataclass(frozen=True)
class ShiftResult:
    shifted: SimplicialComplex
    field: FieldSpec
    seeds: tuple
    agreement: bool
    pivots: tuple


def exterior_shift(K: SimplicialComplex, field_spec: FieldSpec,
                   seed: int = 0) -> ShiftResult:
    """Compute the exterior shift of K, certified by two independent runs."""
    if K.n > vertex_cap():
        raise CapExceeded(f"{K.n} vertices exceeds cap {vertex_cap()}")
    if K.dim > 3:
        raise DimensionTooHigh("faces of more than 4 vertices not supported")
    seeds = [_run_seed(seed, 0), _run_seed(seed, 1)]
    first, pivots = _shift_once(K, field_spec, seeds[0])
    second, _ = _shift_once(K, field_spec, seeds[1])
    agreement = first == second
    if not agreement:
        seeds.append(_run_seed(seed, 2))
        third, pivots = _shift_once(K, field_spec, seeds[2])
        if third != first and third != second:
            raise GenericityFailure("three independent runs disagree")
        first = third
    return ShiftResult(first, field_spec, tuple(seeds), agreement, pivots)


def _segment_count(b: int, T: tuple) -> int:
    # extension count inside the full simplex on [b]
    if b == 0:
        return 0
    if not T:
        return b
    if T[-1] <= b:
        return b - T[-1]
    return 0


def shift_union_along_simplex(dK: SimplicialComplex, dL: SimplicialComplex,
                              b: int, n_total: int | None = None
                              ) -> SimplicialComplex:
    """Predicted shift of a union glued along a b-vertex simplex.

    dK and dL must already be shifted.  A face T = (t_1 < ... < t_r) of
    the result is included exactly when
        t_r - t_{r-1} <= D_K(T \\ t_r) + D_L(T \\ t_r) - D_B(T \\ t_r)
    with t_0 = 0, where D counts one-element extensions past the maximum.
    """
    if not is_shifted(dK) or not is_shifted(dL):
        raise NotShiftedInput("both inputs must be shifted complexes")
    if n_total is None:
        n_total = dK.n + dL.n - b
    max_size = max(dK.dim, dL.dim) + 1
    faces = set()
    for r in range(1, max_size + 1):
        for T in combinations(range(1, n_total + 1), r):
            S = T[:-1]
            if S and S not in faces:
                continue
            gap = T[-1] - (T[-2] if r > 1 else 0)
            room = (count_extensions(dK, S) + count_extensions(dL, S)
                    - _segment_count(b, S))
            if gap <= room:
                faces.add(T)
    result = SimplicialComplex(faces)
    if not is_shifted(result):
        raise ShiftlabError("combination rule produced a non-shifted family")
    return result


def two_disc_shift(n_interior: int, m_boundary: int) -> SimplicialComplex:
    """Closed form for the shift of two disjoint triangulated discs.

    n_interior and m_boundary are the totals over both discs.  Derived by
    feeding the single-disc closed form through the union rule with b = 0:
    edges (1,j) up to j = n+m-1, (2,j) up to n+m-2, (3,j) up to n+3;
    triangles (1,2,j) up to n+m-2 and (1,3,j) up to n+3.
    """
    n, m = n_interior, m_boundary
    total = n + m
    faces = {(v,) for v in range(1, total + 1)}
    for i, top in ((1, total - 1), (2, total - 2), (3, n + 3)):
        faces.update((i, j) for j in range(i + 1, top + 1))
    for pair, top in (((1, 2), total - 2), ((1, 3), n + 3)):
        faces.update(pair + (j,) for j in range(pair[1] + 1, top + 1))
    return SimplicialComplex(faces)


def verify_shift_invariants(K: SimplicialComplex, result: ShiftResult,
                            field_spec: FieldSpec) -> dict:
    """Check shiftedness, f-vector and Betti preservation; report, not raise."""
    shifted_ok = is_shifted(result.shifted)
    f_ok = result.shifted.f_vector() == K.f_vector()
    b_in = betti(K, field_spec)
    b_out = betti(result.shifted, field_spec)
    return {
        "is_shifted": shifted_ok,
        "f_preserved": f_ok,
        "betti_preserved": b_in == b_out,
        "betti_input": b_in,
        "betti_shifted": b_out,
        "passed": shifted_ok and f_ok and b_in == b_out,
    }


def probe_conjectures(K: SimplicialComplex, field_spec: FieldSpec,
                      seed: int = 0, subdivision: bool = False) -> dict:
    """Report conjecture data for a surface triangulation; never asserts.

    Always reports whether {1, 3, n} lies in the shift of K.  With
    subdivision=True, also shifts the barycentric subdivision and reports
    whether that shift is a homology lex-segment complex.
    """
    from .complexes import barycentric_subdivision
    from .lexseg import is_homology_lex_segment

    result = exterior_shift(K, field_spec, seed)
    report = {
        "n": K.n,
        "one_three_n": result.shifted.has_face((1, 3, K.n)),
        "shift_agreement": result.agreement,
    }
    if subdivision:
        sd, _ = barycentric_subdivision(K)
        sd_result = exterior_shift(sd, field_spec, seed)
        report["sd_n"] = sd.n
        report["sd_hlex"] = is_homology_lex_segment(sd_result.shifted,
                                                    field_spec)
    return report
