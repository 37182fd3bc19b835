"""Lex order on k-subsets, initial segments, shadows, and the segment-built
complexes realizing prescribed face and Betti vectors.

Ground sets are contiguous label ranges ([n] or [2..n]); internally every
computation is done on ranks 1..|ground| and translated back. Bounds may
contain repeats: a bound like (4, 4) selects every pair that is
sequence-lexicographically at most (4, 4), which is how the genus-0 surface
formulas stay well-typed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .complexes import SimplicialComplex, betti as betti_of
from .errors import InvalidBound, LengthMismatch, MTooLarge, NTooSmall
from .fields import FieldSpec

Face = tuple[int, ...]


@dataclass(frozen=True)
class LexBound:
    """Nondecreasing tuple used as the right endpoint of a lex segment."""

    entries: tuple[int, ...]

    def __post_init__(self):
        e = self.entries
        if not e or any(x < 1 for x in e):
            raise InvalidBound("bound entries must be positive")
        if any(a > b for a, b in zip(e, e[1:])):
            raise InvalidBound("bound entries must be nondecreasing")

    def __len__(self):
        return len(self.entries)

    def render(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def _as_bound(bound) -> tuple[int, ...]:
    if isinstance(bound, LexBound):
        return bound.entries
    return LexBound(tuple(bound)).entries


def lex_leq(A, bound) -> bool:
    """Sequence comparison of a strictly increasing tuple against a bound of
    the same length: true iff at the first differing index A is smaller."""
    A = tuple(A)
    b = _as_bound(bound)
    if len(A) != len(b):
        raise LengthMismatch(f"|A|={len(A)} but |bound|={len(b)}")
    for x, y in zip(A, b):
        if x != y:
            return x < y
    return True


def _ground_range(ground) -> tuple[int, int]:
    """Normalize a ground set: an int n means [n]; otherwise a (lo, hi) pair
    of inclusive bounds on a contiguous label range."""
    if isinstance(ground, int):
        return 1, ground
    lo, hi = ground
    if lo < 1 or hi < lo:
        raise InvalidBound(f"bad ground range ({lo}, {hi})")
    return lo, hi


def rank_of_subset(n: int, A) -> int:
    """1-based position of the strictly increasing (r+1)-subset A of [n] in
    lex order; the closed form with a_{-1} = 0."""
    A = tuple(A)
    r = len(A) - 1
    prev = 0
    m = 1
    for i, a in enumerate(A):
        for j in range(prev + 1, a):
            m += comb(n - j, r - i)
        prev = a
    return m


def unrank_subset(n: int, size: int, m: int) -> tuple[int, ...]:
    """The m-th (1-based) size-subset of [n] in lex order."""
    if not (1 <= m <= comb(n, size)):
        raise MTooLarge(f"no subset of rank {m} in C([{n}],{size})")
    out = []
    prev = 0
    remaining = m
    for i in range(size):
        a = prev + 1
        while True:
            block = comb(n - a, size - i - 1)
            if remaining <= block:
                break
            remaining -= block
            a += 1
        out.append(a)
        prev = a
    return tuple(out)


def last_subset_leq(n: int, bound) -> tuple[int, ...] | None:
    """The lex-largest strictly increasing subset of [n] weakly below the
    (possibly repeat-bearing) bound, or None if no subset qualifies."""
    b = _as_bound(bound)
    size = len(b)
    if size > n:
        return None
    out: list[int] = []
    tight = True
    i = 0
    while i < size:
        prev = out[-1] if out else 0
        cap = b[i] if tight else n
        v = min(cap, n - (size - 1 - i))
        if v <= prev:
            # backtrack: lower an earlier tight choice
            while out:
                i -= 1
                last = out.pop()
                if last - 1 > (out[-1] if out else 0):
                    out.append(last - 1)
                    tight = False
                    i += 1
                    break
            else:
                return None
            continue
        if tight and v < b[i]:
            tight = False
        out.append(v)
        i += 1
    return tuple(out)


def segment_size(ground, r: int, bound) -> int:
    """Number of (r+1)-subsets of the ground set weakly lex-below the bound."""
    lo, hi = _ground_range(ground)
    n = hi - lo + 1
    b = _as_bound(bound)
    if len(b) != r + 1:
        raise InvalidBound(f"bound length {len(b)} does not match dimension {r}")
    shifted = tuple(x - lo + 1 for x in b)
    if any(x < 1 for x in shifted):
        raise InvalidBound("bound lies below the ground set")
    last = last_subset_leq(n, shifted)
    if last is None:
        return 0
    return rank_of_subset(n, last)


def initial_segment(ground, r: int, m: int) -> set[Face]:
    """The first m (r+1)-subsets of the ground set in lex order."""
    lo, hi = _ground_range(ground)
    n = hi - lo + 1
    if m < 0 or m > comb(n, r + 1):
        raise MTooLarge(f"m={m} exceeds C({n},{r + 1})")
    if m == 0:
        return set()
    last = unrank_subset(n, r + 1, m)
    out = set()
    for A in combinations(range(1, n + 1), r + 1):
        if A > last:
            break
        out.add(tuple(x + lo - 1 for x in A))
    return out


def segment_by_bound(ground, bound) -> set[Face]:
    """All subsets of the ground set weakly lex-below the bound."""
    lo, hi = _ground_range(ground)
    n = hi - lo + 1
    b = _as_bound(bound)
    shifted = tuple(x - lo + 1 for x in b)
    last = last_subset_leq(n, shifted)
    if last is None:
        return set()
    return initial_segment(ground, len(b) - 1, rank_of_subset(n, last))


def shadow(family) -> set[Face]:
    """All r-subsets contained in some member of a family of (r+1)-subsets."""
    out: set[Face] = set()
    for B in family:
        B = tuple(sorted(B))
        for i in range(len(B)):
            if len(B) > 1:
                out.add(B[:i] + B[i + 1:])
    return out


def augmented_shadow(last_element, ground) -> set[Face]:
    """The smallest lex initial segment containing the shadow of the segment
    ending at last_element: everything when the first entry is not the ground
    minimum, else the segment below the truncated bound."""
    lo, hi = _ground_range(ground)
    n = hi - lo + 1
    A = tuple(last_element)
    if len(A) < 1:
        raise InvalidBound("last element must be nonempty")
    r = len(A) - 1
    ranks = tuple(x - lo + 1 for x in A)
    if any(not (1 <= x <= n) for x in ranks) or any(a >= b for a, b in zip(ranks, ranks[1:])):
        raise InvalidBound(f"{A} is not a subset of the ground set")
    if r == 0:
        return {()}
    if ranks[0] >= 2:
        return {tuple(x + lo - 1 for x in A2) for A2 in combinations(range(1, n + 1), r)}
    tail_bound = ranks[1:]
    out = set()
    for A2 in combinations(range(1, n + 1), r):
        if lex_leq(A2, tail_bound):
            out.add(tuple(x + lo - 1 for x in A2))
    return out


def partial_r(r: int, n: int, m: int) -> int:
    """Size of the augmented shadow of the size-m initial segment of
    (r+1)-subsets of an n-element ground set."""
    if m < 0 or m > comb(n, r + 1):
        raise MTooLarge(f"m={m} exceeds C({n},{r + 1})")
    if m == 0:
        return 0
    if r == 0:
        return 1
    last = unrank_subset(n, r + 1, m)
    if last[0] >= 2:
        return comb(n, r)
    return rank_of_subset(n, last[1:])


# -- segment-built complexes ----------------------------------------------

@dataclass(frozen=True)
class InvalidF:
    """Validity failure of the union-of-segments construction: the shadow
    inequality fails at the listed dimensions."""

    violations: tuple[int, ...]


@dataclass(frozen=True)
class InvalidPair:
    """Validity failure of the cone-plus-segment construction."""

    reason: str
    violations: tuple[int, ...] = ()


@dataclass(frozen=True)
class FBetaPair:
    f: tuple[int, ...]
    beta: tuple[int, ...]
    chi: tuple[int, ...] = field(init=False)  # chi[r] = chi_{r-1}

    def __post_init__(self):
        f, b = self.f, self.beta
        top = max(len(f), len(b))
        chi = []
        for r in range(top + 1):
            total = 0
            for j in range(r, top):
                fj = f[j] if j < len(f) else 0
                bj = b[j] if j < len(b) else 0
                total += (-1) ** (j - r) * (fj - bj)
            chi.append(total)
        object.__setattr__(self, "chi", tuple(chi))

    def chi_at(self, r: int) -> int:
        """chi_r, for r >= -1."""
        idx = r + 1
        return self.chi[idx] if 0 <= idx < len(self.chi) else 0


def build_K_f(fvec):
    """The union of lex initial segments with the given face counts; a value
    of InvalidF reports the dimensions where the shadow condition fails."""
    fvec = tuple(fvec)
    if not fvec or fvec[0] < 1:
        return InvalidF((0,))
    n = fvec[0]
    violations = []
    for r in range(1, len(fvec)):
        if fvec[r] < 0 or fvec[r] > comb(n, r + 1):
            violations.append(r)
            continue
        if fvec[r] > 0 and partial_r(r, n, fvec[r]) > (fvec[r - 1] if r >= 1 else 1):
            violations.append(r)
    if violations:
        return InvalidF(tuple(violations))
    faces: set[Face] = set()
    for r, fr in enumerate(fvec):
        faces |= initial_segment(n, r, fr)
    return SimplicialComplex(faces)


def build_K_f_beta(fvec, beta):
    """Cone-plus-segment complex realizing (f, beta): a cone with apex 1 over
    the cycle-count segments, union the larger segments carrying homology.
    Returns InvalidPair when the Euler/shadow conditions fail."""
    pair = FBetaPair(tuple(fvec), tuple(beta))
    f, b = pair.f, pair.beta
    if not f or f[0] < 1:
        return InvalidPair("empty f-vector")
    n = f[0]
    if pair.chi_at(-1) != 1:
        return InvalidPair("chi_{-1} != 1", ())
    violations = []
    top = max(len(f), len(b))
    for r in range(0, top):
        size_e = pair.chi_at(r) + (b[r] if r < len(b) else 0)
        size_c = pair.chi_at(r)
        if size_c < 0 or size_e < 0 or size_e > comb(n - 1, r + 1):
            violations.append(r)
    if violations:
        return InvalidPair("segment size out of range", tuple(violations))
    for r in range(1, top):
        size_e = pair.chi_at(r) + (b[r] if r < len(b) else 0)
        if size_e > 0 and partial_r(r, n - 1, size_e) > pair.chi_at(r - 1):
            violations.append(r)
    if violations:
        return InvalidPair("augmented shadow exceeds chi", tuple(violations))
    ground = (2, n) if n >= 2 else (2, 1)
    faces: set[Face] = {(1,)}
    for r in range(0, top):
        size_e = pair.chi_at(r) + (b[r] if r < len(b) else 0)
        size_c = pair.chi_at(r)
        if n >= 2:
            E_r = initial_segment(ground, r, size_e)
            C_r = initial_segment(ground, r, size_c)
        else:
            E_r, C_r = set(), set()
        faces |= E_r
        faces |= {tuple(sorted((1,) + A)) for A in C_r}
    return SimplicialComplex(faces)


# -- explicit shifted complexes -------------------------------------------

def delta_graph(n_total: int, c: int, b: int) -> SimplicialComplex:
    """The expected shifted graph for an n_total-vertex subdivision of a
    graph with c components and first Betti number b."""
    if n_total < c + 1 + b:
        raise NTooSmall(f"need n_total >= c+1+b = {c + 1 + b}")
    n = n_total - c + 1
    faces: set[Face] = {(v,) for v in range(1, n_total + 1)}
    faces |= segment_by_bound(n, (2, b + 2))
    return SimplicialComplex(faces)


def delta_orientable(g: int, n: int) -> SimplicialComplex:
    """The expected shifted complex of an n-vertex genus-g orientable surface
    triangulation (characteristic 0)."""
    if n < 4 + 6 * g:
        raise NTooSmall(f"need n >= 4+6g = {4 + 6 * g}")
    faces: set[Face] = {(v,) for v in range(1, n + 1)}
    faces |= segment_by_bound(n, (4, 4 + 6 * g))
    faces |= segment_by_bound(n, (1, 4, 4 + 4 * g))
    faces.add((2, 3, 4))
    return SimplicialComplex(faces)


def delta_nonorientable(g: int, n: int, char: int) -> SimplicialComplex:
    """The expected shifted complex of an n-vertex genus-g nonorientable
    surface triangulation; differs between characteristic 0 and 2."""
    if n < 4 + 3 * g:
        raise NTooSmall(f"need n >= 4+3g = {4 + 3 * g}")
    if char not in (0, 2):
        raise InvalidBound("only characteristics 0 and 2 have explicit formulas")
    faces: set[Face] = {(v,) for v in range(1, n + 1)}
    faces |= segment_by_bound(n, (4, 4 + 3 * g))
    if char == 2:
        faces |= segment_by_bound(n, (1, 4, 4 + 2 * g))
        faces.add((2, 3, 4))
    else:
        faces |= segment_by_bound(n, (1, 4, 5 + 2 * g))
    return SimplicialComplex(faces)


# -- predicates ------------------------------------------------------------

def is_shifted(K: SimplicialComplex) -> bool:
    """Replacement test: lowering any vertex of any face yields a face."""
    all_faces = K.all_faces()
    for A in all_faces:
        sA = set(A)
        for j in A:
            for i in range(1, j):
                if i not in sA:
                    if tuple(sorted(sA - {j} | {i})) not in all_faces:
                        return False
    return True


def is_homology_lex_segment(K: SimplicialComplex, field_spec: FieldSpec) -> bool:
    """Whether K equals the cone-plus-segment complex built from its own face
    and Betti vectors over the given field."""
    model = build_K_f_beta(K.f_vector(), betti_of(K, field_spec))
    return isinstance(model, SimplicialComplex) and model == K


def is_lex_segment(K: SimplicialComplex) -> bool:
    model = build_K_f(K.f_vector())
    return isinstance(model, SimplicialComplex) and model == K


def tail(K: SimplicialComplex, A) -> set[Face]:
    """Faces of the same dimension as A that are weakly lex-above it."""
    A = tuple(sorted(A))
    return {B for B in K.faces(len(A) - 1) if B >= A}


def count_extensions(K: SimplicialComplex, T) -> int:
    """Number of single-vertex extensions of T lying above its maximum; the
    empty set counts every vertex."""
    T = tuple(sorted(T))
    lo = T[-1] if T else 0
    return sum(1 for t in range(lo + 1, K.n + 1) if K.has_face(T + (t,)))
