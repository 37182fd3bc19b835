"""Simplicial complexes on [n], exact homology, and surface surgery.

Faces are stored as sorted integer tuples grouped by dimension; lexicographic
order is the canonical iteration order throughout. All values are immutable
after construction and every operation returns a fresh complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    DegenerateArc,
    DimensionTooHigh,
    EmptyInput,
    NotAnEdge,
    NotASubdivision,
    NotASurface,
    NotATriangle,
    ShiftlabError,
    SurfaceViolated,
    TooLarge,
)
from .fields import FieldSpec
from . import linalg

Face = tuple[int, ...]


def closure_of(facets) -> frozenset[Face]:
    """Downward closure of an iterable of faces (nonempty faces only)."""
    out: set[Face] = set()
    for facet in facets:
        facet = tuple(sorted(set(facet)))
        for k in range(1, len(facet) + 1):
            out.update(combinations(facet, k))
    return frozenset(out)


class SimplicialComplex:
    """A finite complex on vertex set {1..n}; downward closed by construction."""

    __slots__ = ("n", "_by_dim", "_all")

    def __init__(self, faces):
        """Build from an iterable of faces that is already downward closed
        with compact labels 1..n; raises ShiftlabError otherwise."""
        all_faces = frozenset(tuple(sorted(f)) for f in faces)
        if not all_faces:
            raise EmptyInput("a complex must have at least one vertex")
        vertices = {v for f in all_faces for v in f}
        n = len(vertices)
        if vertices != set(range(1, n + 1)):
            raise ShiftlabError("vertex labels must be exactly 1..n")
        for f in all_faces:
            if len(f) > 1:
                for sub in combinations(f, len(f) - 1):
                    if sub not in all_faces:
                        raise ShiftlabError(f"not downward closed: {sub} missing under {f}")
        self.n = n
        self._all = all_faces
        max_dim = max(len(f) for f in all_faces) - 1
        by_dim = [[] for _ in range(max_dim + 1)]
        for f in all_faces:
            by_dim[len(f) - 1].append(f)
        self._by_dim = tuple(tuple(sorted(fs)) for fs in by_dim)

    @staticmethod
    def from_facets(facet_list) -> "SimplicialComplex":
        """Downward closure of the given facets; labels compacted to 1..n
        preserving order."""
        facet_list = list(facet_list)
        if not facet_list:
            raise EmptyInput("empty facet list")
        labels = sorted({v for facet in facet_list for v in facet})
        if not labels or labels[0] < 1:
            raise ShiftlabError("vertex labels must be positive integers")
        relabel = {v: i + 1 for i, v in enumerate(labels)}
        compacted = [[relabel[v] for v in facet] for facet in facet_list]
        return SimplicialComplex(closure_of(compacted))

    # -- accessors ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self._by_dim) - 1

    def faces(self, r: int) -> tuple[Face, ...]:
        """All r-faces in lex order ((r+1)-subsets); empty beyond dim."""
        if 0 <= r < len(self._by_dim):
            return self._by_dim[r]
        return ()

    def all_faces(self) -> frozenset[Face]:
        return self._all

    def has_face(self, f) -> bool:
        return tuple(sorted(f)) in self._all

    def facets(self) -> tuple[Face, ...]:
        out = [f for f in self._all
               if not any(set(f) < set(g) for g in self._all if len(g) == len(f) + 1)]
        return tuple(sorted(out, key=lambda f: (len(f), f)))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(fs) for fs in self._by_dim)

    def edges(self) -> tuple[Face, ...]:
        return self.faces(1)

    def triangles(self) -> tuple[Face, ...]:
        return self.faces(2)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({u for e in self.faces(1) if v in e for u in e if u != v}))

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._all == other._all

    def __hash__(self):
        return hash(self._all)

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, f={self.f_vector()})"

    # -- serialization -----------------------------------------------------

    def to_json(self, name: str = "") -> str:
        facets = [list(f) for f in sorted(self.facets())]
        return json.dumps({"name": name, "facets": facets}, separators=(",", ":"),
                          sort_keys=True) + "\n"

    @staticmethod
    def from_json(text: str) -> "SimplicialComplex":
        data = json.loads(text)
        return SimplicialComplex.from_facets(data["facets"])


# -- homology --------------------------------------------------------------

def boundary_matrix(K: SimplicialComplex, r: int) -> list[list[int]]:
    """Matrix of the boundary map C_r -> C_{r-1} of the augmented chain
    complex over the integers; rows indexed by (r-1)-faces (the empty face
    for r = 0), columns by r-faces, both in lex order."""
    cols = K.faces(r)
    if r == 0:
        return [[1] * len(cols)]
    rows = {f: i for i, f in enumerate(K.faces(r - 1))}
    mat = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            mat[rows[sub]][j] = 1 if i % 2 == 0 else -1
    return mat


def betti(K: SimplicialComplex, field: FieldSpec) -> tuple[int, ...]:
    """Reduced Betti numbers over the given field, by exact elimination of
    the augmented boundary matrices: beta_r = nullity(d_r) - rank(d_{r+1})."""
    ranks = []
    for r in range(K.dim + 2):
        mat = boundary_matrix(K, r) if r <= K.dim else [[]]
        ranks.append(linalg.int_matrix_rank(mat, field))
    out = []
    for r in range(K.dim + 1):
        nullity = len(K.faces(r)) - ranks[r]
        out.append(nullity - ranks[r + 1])
    return tuple(out)


# -- surfaces --------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceReport:
    is_surface: bool
    euler: int
    orientable: bool
    genus: int
    connected: bool


def _components(K: SimplicialComplex) -> int:
    parent = list(range(K.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in K.faces(1):
        parent[find(u)] = find(v)
    return len({find(v) for v in range(1, K.n + 1)})


def link_cycle(K: SimplicialComplex, v: int) -> list[int] | None:
    """The link of v as a single cycle of vertices (canonical rotation), or
    None if the link is not a single cycle."""
    star = [t for t in K.faces(2) if v in t]
    adj: dict[int, list[int]] = {}
    for t in star:
        a, b = (x for x in t if x != v)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    link_vertices = {u for e in K.faces(1) if v in e for u in e if u != v}
    if set(adj) != link_vertices or not adj:
        return None
    if any(len(nbrs) != 2 for nbrs in adj.values()):
        return None
    start = min(adj)
    cycle = [start, min(adj[start])]
    while True:
        a, b = adj[cycle[-1]]
        nxt = b if a == cycle[-2] else a
        if nxt == start:
            break
        cycle.append(nxt)
        if len(cycle) > len(adj):
            return None
    if len(cycle) != len(adj) or len(cycle) < 3:
        return None
    return cycle


def surface_report(K: SimplicialComplex) -> SurfaceReport:
    """Closed-surface check: pure 2-dimensional, every edge in exactly two
    triangles, every vertex link a single cycle, connected. Orientability by
    orientation propagation across triangle adjacencies."""
    f = K.f_vector()
    euler = sum((-1) ** r * len(K.faces(r)) for r in range(K.dim + 1))
    connected = _components(K) == 1
    bad = K.dim != 2
    if not bad:
        edge_count: dict[Face, int] = {}
        for t in K.faces(2):
            for e in combinations(t, 2):
                edge_count[e] = edge_count.get(e, 0) + 1
        bad = set(edge_count) != set(K.faces(1)) or any(c != 2 for c in edge_count.values())
    if not bad:
        bad = any(link_cycle(K, v) is None for v in range(1, K.n + 1))
    if bad or not connected:
        return SurfaceReport(False, euler, False, 0, connected)

    orientable = _propagate_orientations(K)
    genus = (2 - euler) // 2 if orientable else 2 - euler
    return SurfaceReport(True, euler, orientable, genus, connected)


def _propagate_orientations(K: SimplicialComplex) -> bool:
    triangles = K.faces(2)
    index = {t: i for i, t in enumerate(triangles)}
    edge_to_tris: dict[Face, list[Face]] = {}
    for t in triangles:
        for e in combinations(t, 2):
            edge_to_tris.setdefault(e, []).append(t)
    # orientation sign per triangle: +1 keeps lex order (a,b,c), -1 reverses
    sign = [0] * len(triangles)
    for start in range(len(triangles)):
        if sign[start]:
            continue
        sign[start] = 1
        stack = [triangles[start]]
        while stack:
            t = stack.pop()
            for e in combinations(t, 2):
                for t2 in edge_to_tris[e]:
                    if t2 == t:
                        continue
                    # induced orientations on the shared edge must be opposite
                    needed = -sign[index[t]] * _edge_parity(t, e) * _edge_parity(t2, e)
                    if sign[index[t2]] == 0:
                        sign[index[t2]] = needed
                        stack.append(t2)
                    elif sign[index[t2]] != needed:
                        return False
    return True


def _edge_parity(t: Face, e: Face) -> int:
    """Sign of the edge e inside the lex-ordered triangle t (boundary sign)."""
    i = t.index(next(v for v in t if v not in e))
    return 1 if i % 2 == 0 else -1


def missing_triangles(K: SimplicialComplex) -> frozenset[Face]:
    """3-subsets whose three edges are present but the triangle is not."""
    edges = set(K.faces(1))
    tris = set(K.faces(2))
    nbrs: dict[int, set[int]] = {v: set() for v in range(1, K.n + 1)}
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    out = set()
    for u, v in edges:
        for w in nbrs[u] & nbrs[v]:
            t = tuple(sorted((u, v, w)))
            if t not in tris:
                out.add(t)
    return frozenset(out)


def is_contractible_edge(K: SimplicialComplex, e) -> bool:
    """Link-intersection criterion: the endpoints' links meet in exactly the
    two apex vertices of e, and not in the edge joining those apexes."""
    e = tuple(sorted(e))
    if not K.has_face(e):
        raise NotAnEdge(f"{e} is not an edge of the complex")
    u, v = e
    common = set(K.neighbors(u)) & set(K.neighbors(v))
    if len(common) != 2:
        return False
    a, b = sorted(common)
    # the edge (a, b) lies in both links iff both side triangles exist
    if K.has_face((a, b)) and K.has_face(tuple(sorted((u, a, b)))) \
            and K.has_face(tuple(sorted((v, a, b)))):
        return False
    return True


# -- surgery ---------------------------------------------------------------

def _compact(faces) -> SimplicialComplex:
    labels = sorted({v for f in faces for v in f})
    relabel = {v: i + 1 for i, v in enumerate(labels)}
    return SimplicialComplex(frozenset(tuple(sorted(relabel[v] for v in f)) for f in faces))


def _contract_faces(faces, u: int, v: int) -> frozenset[Face]:
    """Replace u by v in a face family, dropping collapsed duplicates."""
    out = set()
    for f in faces:
        if u in f:
            g = tuple(sorted(set(v if x == u else x for x in f)))
        else:
            g = f
        out.add(g)
    return frozenset(out)


def edge_contract(K: SimplicialComplex, e, *, keep: int | None = None,
                  validated: bool = False) -> SimplicialComplex:
    """Contract the edge e: the removed endpoint is replaced by the kept one
    everywhere, duplicates removed, labels compacted. By default the smaller
    endpoint survives. validated=True additionally requires the surface link
    condition and that the surface type is preserved."""
    e = tuple(sorted(e))
    if len(e) != 2 or not K.has_face(e):
        raise NotAnEdge(f"{e} is not an edge of the complex")
    if keep is None:
        keep = e[0]
    if keep not in e:
        raise NotAnEdge(f"kept vertex {keep} is not an endpoint of {e}")
    removed = e[0] if keep == e[1] else e[1]
    if validated:
        before = surface_report(K)
        if not before.is_surface:
            raise SurfaceViolated("validated contraction requires a surface triangulation")
        if not is_contractible_edge(K, e):
            raise SurfaceViolated(f"edge {e} fails the link condition")
    result = _compact(_contract_faces(K.all_faces(), removed, keep))
    if validated:
        after = surface_report(result)
        if not (after.is_surface and after.genus == before.genus
                and after.orientable == before.orientable):
            raise SurfaceViolated("contraction changed the surface type")
    return result


def vertex_split(K: SimplicialComplex, v: int, i: int, j: int) -> SimplicialComplex:
    """Split the vertex v of a surface triangulation along positions i, j of
    its link cycle. The new vertex n+1 takes the arc from position j around
    to position i; v keeps the arc from i to j; both stay adjacent to the two
    split ends and to each other."""
    cycle = link_cycle(K, v)
    if cycle is None:
        raise NotASurface(f"link of {v} is not a single cycle")
    m = len(cycle)
    if not (0 <= i < m and 0 <= j < m):
        raise DegenerateArc("positions out of range")
    if i == j:
        raise DegenerateArc("split positions must be distinct")
    arc_v = [cycle[(i + t) % m] for t in range((j - i) % m + 1)]
    arc_u = [cycle[(j + t) % m] for t in range((i - j) % m + 1)]
    u = K.n + 1
    faces = set(K.all_faces())
    faces -= {f for f in faces if v in f}
    new_facets = []
    for a, b in zip(arc_v, arc_v[1:]):
        new_facets.append((v, a, b))
    for a, b in zip(arc_u, arc_u[1:]):
        new_facets.append((u, a, b))
    new_facets.append((v, u, cycle[i]))
    new_facets.append((v, u, cycle[j]))
    for facet in new_facets:
        faces.update(closure_of([facet]))
    return SimplicialComplex(faces)


def legal_splits(K: SimplicialComplex):
    """All (v, i, j) triples acceptable to vertex_split, in lex order."""
    out = []
    for v in range(1, K.n + 1):
        cycle = link_cycle(K, v)
        if cycle is None:
            continue
        m = len(cycle)
        for i in range(m):
            for j in range(i + 1, m):
                out.append((v, i, j))
    return out


def connected_sum(K: SimplicialComplex, K2: SimplicialComplex, B, B2) -> SimplicialComplex:
    """Glue two surface triangulations along B == B2 and delete the shared
    triangle. The vertices of B2 are identified with those of B in sorted
    order; the rest of K2 gets fresh labels."""
    B = tuple(sorted(B))
    B2 = tuple(sorted(B2))
    for k, f, name in ((K, B, "first"), (K2, B2, "second")):
        if len(f) != 3 or not k.has_face(f):
            raise NotATriangle(f"{f} is not a 2-face of the {name} complex")
        if not surface_report(k).is_surface:
            raise NotASurface(f"the {name} complex is not a surface triangulation")
    relabel = dict(zip(B2, B))
    nxt = K.n + 1
    for v in range(1, K2.n + 1):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    faces = set(K.all_faces())
    faces.update(tuple(sorted(relabel[v] for v in f)) for f in K2.all_faces())
    faces.discard(B)
    return _compact(faces)


def barycentric_subdivision(K: SimplicialComplex):
    """Barycentric subdivision for dim <= 2, with a provenance map sending
    each vertex of the subdivision to the face of K it subdivides.

    Graphs get one new vertex per edge. Surfaces (and any 2-complex) get the
    full subdivision: a vertex per edge and per triangle, faces given by
    chains of original faces ordered by containment.
    """
    if K.dim > 2:
        raise DimensionTooHigh("barycentric subdivision implemented for dim <= 2")
    prov: dict[int, Face] = {v: (v,) for v in range(1, K.n + 1)}
    label = K.n
    mid: dict[Face, int] = {}
    for e in K.faces(1):
        label += 1
        mid[e] = label
        prov[label] = e
    facets: list[tuple[int, ...]] = []
    if K.dim <= 1:
        for e in K.faces(1):
            u, v = e
            facets += [(u, mid[e]), (mid[e], v)]
        facets += [(v,) for v in range(1, K.n + 1)]
    else:
        center: dict[Face, int] = {}
        for t in K.faces(2):
            label += 1
            center[t] = label
            prov[label] = t
        for t in K.faces(2):
            for e in combinations(t, 2):
                for v in e:
                    facets.append((v, mid[e], center[t]))
        # edges of K not in any triangle still get subdivided
        tri_edges = {e for t in K.faces(2) for e in combinations(t, 2)}
        for e in K.faces(1):
            if e not in tri_edges:
                u, v = e
                facets += [(u, mid[e]), (mid[e], v)]
        facets += [(v,) for v in range(1, K.n + 1)]
    sd = SimplicialComplex(closure_of(facets))
    return sd, prov


def contract_subdivision(Ksub: SimplicialComplex, prov: dict[int, Face],
                         K: SimplicialComplex) -> list[tuple[int, int]]:
    """An ordered list of (removed, kept) contractions transforming the
    provenance-tracked subdivision into K. Interior vertices of 2-faces go
    first, then vertices subdividing edges; every intermediate complex is a
    surface triangulation of the same type (or stays a graph in dim 1).

    The returned pairs use the labels of Ksub; kept vertices retain their
    identity, so after all contractions the surviving labels are exactly the
    original vertices of K.
    """
    for v in range(1, K.n + 1):
        if prov.get(v) != (v,):
            raise NotASubdivision("provenance must fix the original vertices")
    faces = set(Ksub.all_faces())
    new_vertices = {v for v, f in prov.items() if len(f) > 1}
    if {v for f in faces for v in f} != set(prov):
        raise NotASubdivision("provenance does not match the subdivision's vertices")
    seq: list[tuple[int, int]] = []
    is_graph = Ksub.dim <= 1

    def contractible_in(current: SimplicialComplex, relabel: dict[int, int], x, y) -> bool:
        if is_graph:
            return True
        return is_contractible_edge(current, (relabel[x], relabel[y]))

    for phase_dim in (2, 1):
        while True:
            pending = sorted(v for v in new_vertices if len(prov[v]) == phase_dim + 1)
            if not pending:
                break
            current, relabel = _as_complex_with_map(faces)
            progressed = False
            for x in pending:
                carrier = set(prov[x])
                nbrs = sorted({u for f in faces if len(f) == 2 and x in f
                               for u in f if u != x},
                              key=lambda u: (len(prov[u]), u))
                for y in nbrs:
                    if not set(prov[y]) <= carrier:
                        continue
                    if contractible_in(current, relabel, x, y):
                        faces = _contract_faces(faces, x, y)
                        new_vertices.discard(x)
                        seq.append((x, y))
                        progressed = True
                        break
                if progressed:
                    break
            if not progressed:
                raise NotASubdivision("no contractible edge toward the original complex")

    # surviving labels are exactly K's own vertices, so compare directly
    survivors = {v for f in faces for v in f}
    if survivors != set(range(1, K.n + 1)) or frozenset(faces) != K.all_faces():
        raise NotASubdivision("contractions did not reach the original complex")
    return seq


def _as_complex_with_map(faces):
    labels = sorted({v for f in faces for v in f})
    relabel = {v: i + 1 for i, v in enumerate(labels)}
    complex_ = SimplicialComplex(frozenset(tuple(sorted(relabel[v] for v in f))
                                           for f in faces))
    return complex_, relabel


def apply_contractions(K: SimplicialComplex, seq) -> SimplicialComplex:
    """Replay a (removed, kept) sequence produced by contract_subdivision and
    compact the result."""
    faces = set(K.all_faces())
    for removed, kept in seq:
        faces = _contract_faces(faces, removed, kept)
    return _compact(faces)


def reduce_to_irreducible(K: SimplicialComplex):
    """Greedily contract the lexicographically smallest contractible edge of a
    surface triangulation until none exists. Returns the irreducible complex
    and the contraction sequence (edges named in each step's labeling)."""
    report = surface_report(K)
    if not report.is_surface:
        raise NotASurface("input is not a surface triangulation")
    seq: list[Face] = []
    current = K
    while True:
        for e in current.faces(1):
            if is_contractible_edge(current, e):
                seq.append(e)
                current = edge_contract(current, e, validated=True)
                break
        else:
            return current, seq


def is_isomorphic(K: SimplicialComplex, K2: SimplicialComplex) -> bool:
    """Exact isomorphism by backtracking over label bijections, pruned by
    degree sequences; capped at 12 vertices."""
    if K.n > 12 or K2.n > 12:
        raise TooLarge("isomorphism testing is capped at 12 vertices")
    if K.n != K2.n or K.f_vector() != K2.f_vector():
        return False

    def signature(C, v):
        deg = len(C.neighbors(v))
        tri = sum(1 for t in C.faces(2) if v in t)
        return (deg, tri)

    sig1 = {v: signature(K, v) for v in range(1, K.n + 1)}
    sig2 = {v: signature(K2, v) for v in range(1, K2.n + 1)}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False
    faces2 = K2.all_faces()
    order = sorted(range(1, K.n + 1))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v, w):
        for f in K.all_faces():
            if v in f and all(x in mapping or x == v for x in f):
                img = tuple(sorted(mapping.get(x, w) for x in f))
                if img not in faces2:
                    return False
        return True

    def backtrack(idx):
        if idx == len(order):
            return True
        v = order[idx]
        for w in range(1, K2.n + 1):
            if w in used or sig1[v] != sig2[w]:
                continue
            if consistent(v, w):
                mapping[v] = w
                used.add(w)
                if backtrack(idx + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return backtrack(0)
