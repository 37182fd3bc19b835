"""Delaunay triangulations of point sets on the unit flat torus.

Points live on a 2^32 x 2^32 integer grid, so orientation and incircle
predicates are exact integer determinants.  The torus triangulation is
obtained from a planar one: lift the points to the nine translates by
{-1,0,1}^2, triangulate the lift, repair it to Delaunay by Lawson flips
under the exact incircle test, keep triangles meeting the central copy and
quotient by translation.  The quotient is only accepted when every edge is
shorter than 1/2 (the injectivity radius), which is exactly the regime
where the nine-copy lift is faithful.
"""

import json
import math
import random
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial import Delaunay as _PlanarDelaunay

from .complexes import SimplicialComplex, closure_of, surface_report
from .errors import (Degenerate, NotDenseEnough, NTooSmall, ShiftlabError)

GRID_DENOMINATOR = 1 << 32
_SAMPLE_RETRIES = 64


@dataclass(frozen=True)
class TorusPoint:
    """Grid point (nx/2^32, ny/2^32) on the unit torus."""

    nx: int
    ny: int

    def __post_init__(self):
        if not (0 <= self.nx < GRID_DENOMINATOR
                and 0 <= self.ny < GRID_DENOMINATOR):
            raise ShiftlabError("torus coordinates must lie on the unit grid")

    @property
    def x(self) -> Fraction:
        return Fraction(self.nx, GRID_DENOMINATOR)

    @property
    def y(self) -> Fraction:
        return Fraction(self.ny, GRID_DENOMINATOR)


@dataclass(frozen=True)
class TorusPointSet:
    points: tuple
    seed: int | None = None

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise Degenerate("duplicate points")

    def __len__(self):
        return len(self.points)


def torus_dist2(p: TorusPoint, q: TorusPoint) -> Fraction:
    """Exact squared geodesic distance on the unit torus."""
    dx = abs(p.nx - q.nx)
    dy = abs(p.ny - q.ny)
    dx = min(dx, GRID_DENOMINATOR - dx)
    dy = min(dy, GRID_DENOMINATOR - dy)
    return Fraction(dx * dx + dy * dy, GRID_DENOMINATOR ** 2)


def sample_points(n: int, seed: int = 0) -> TorusPointSet:
    """n i.i.d. uniform grid points; exact collisions are resampled."""
    if n < 3:
        raise NTooSmall("need at least 3 points")
    rng = random.Random(f"torus-sample:{seed}")
    seen = set()
    points = []
    for _ in range(n):
        for _ in range(_SAMPLE_RETRIES):
            cand = (rng.randrange(GRID_DENOMINATOR),
                    rng.randrange(GRID_DENOMINATOR))
            if cand not in seen:
                break
        else:
            raise ShiftlabError("point resampling retries exhausted")
        seen.add(cand)
        points.append(TorusPoint(*cand))
    return TorusPointSet(tuple(points), seed)


def is_rho_dense(P: TorusPointSet, rho) -> bool:
    """Conservative density check via an occupied covering grid.

    Uses k x k square cells with diameter <= rho; if every cell holds a
    point, every ball of radius rho does too.  May return False for sets
    that are in fact rho-dense.
    """
    rho = Fraction(rho)
    if not (0 < rho < Fraction(1, 2)):
        raise ShiftlabError("rho must lie in (0, 1/2)")
    a, b = rho.numerator, rho.denominator
    k = math.isqrt((2 * b * b) // (a * a)) + 1  # 2/k^2 <= rho^2
    occupied = set()
    for p in P.points:
        occupied.add((p.nx * k // GRID_DENOMINATOR,
                      p.ny * k // GRID_DENOMINATOR))
    return len(occupied) == k * k


# -- exact planar predicates on lifted integer coordinates -----------------

def orient2d(a, b, c) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def incircle(a, b, c, d) -> int:
    """Sign > 0 iff d lies strictly inside the circle through a, b, c.

    a, b, c need not be ordered; the result is orientation-corrected.
    Raises Degenerate on an exactly collinear defining triple.
    """
    o = orient2d(a, b, c)
    if o == 0:
        raise Degenerate("collinear triple in incircle test")
    if o < 0:
        b, c = c, b
    rows = []
    for p in (a, b, c):
        px, py = p[0] - d[0], p[1] - d[1]
        rows.append((px, py, px * px + py * py))
    det = (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
           - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
           + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))
    return (det > 0) - (det < 0)


def _lawson_repair(tris: set, coords) -> set:
    """Flip locally non-Delaunay edges until none remain; exact tests."""
    edge_map = defaultdict(set)
    for t in tris:
        for e in _tri_edges(t):
            edge_map[e].add(t)
    queue = deque(edge_map.keys())
    pending = set(queue)
    while queue:
        e = queue.popleft()
        pending.discard(e)
        ts = edge_map.get(e, set())
        if len(ts) != 2:
            continue
        t1, t2 = sorted(ts)
        (a,) = t1 - e
        (d,) = t2 - e
        b, c = sorted(e)
        s = incircle(coords[a], coords[b], coords[c], coords[d])
        if s == 0:
            raise Degenerate("cocircular quadruple among Delaunay neighbors")
        if s < 0:
            continue
        for t in (t1, t2):
            tris.discard(t)
            for ed in _tri_edges(t):
                edge_map[ed].discard(t)
        for t in (frozenset((a, b, d)), frozenset((a, c, d))):
            tris.add(t)
            for ed in _tri_edges(t):
                edge_map[ed].add(t)
                if ed not in pending:
                    pending.add(ed)
                    queue.append(ed)
    return tris


def _tri_edges(t: frozenset):
    v = sorted(t)
    return (frozenset((v[0], v[1])), frozenset((v[0], v[2])),
            frozenset((v[1], v[2])))


@dataclass(frozen=True)
class DelaunayTriangulation:
    complex: SimplicialComplex
    points: TorusPointSet

    def embedding(self) -> dict:
        return {v + 1: self.points.points[v] for v in range(len(self.points))}


def _lifted(P: TorusPointSet):
    coords = []
    owner = []
    for i, p in enumerate(P.points):
        for sx in (-1, 0, 1):
            for sy in (-1, 0, 1):
                coords.append((p.nx + sx * GRID_DENOMINATOR,
                               p.ny + sy * GRID_DENOMINATOR))
                owner.append((i, (sx, sy)))
    return coords, owner


def delaunay_torus(P: TorusPointSet) -> DelaunayTriangulation:
    """Delaunay triangulation of P on the torus, exact and validated."""
    if len(P) < 3:
        raise NTooSmall("need at least 3 points")
    coords, owner = _lifted(P)
    # integer coordinates are < 2^34, exactly representable as floats;
    # qhull's float output is then repaired by exact flips
    planar = _PlanarDelaunay(np.array(coords, dtype=np.float64))
    tris = set()
    for simplex in planar.simplices:
        t = frozenset(int(v) for v in simplex)
        if orient2d(*(coords[v] for v in sorted(t))) == 0:
            raise Degenerate("collinear triple in the lifted triangulation")
        tris.add(t)
    tris = _lawson_repair(tris, coords)

    quotient = set()
    for t in tris:
        if not any(owner[v][1] == (0, 0) for v in t):
            continue
        face = tuple(sorted(owner[v][0] + 1 for v in t))
        if len(set(face)) != 3:
            raise NotDenseEnough("a Delaunay triangle wraps around the torus")
        quotient.add(face)

    verts = {v for f in quotient for v in f}
    if verts != set(range(1, len(P) + 1)):
        raise NotDenseEnough("some point spans no central Delaunay triangle")
    K = SimplicialComplex(closure_of(quotient))
    for e in K.faces(1):
        if torus_dist2(P.points[e[0] - 1], P.points[e[1] - 1]) >= Fraction(1, 4):
            raise NotDenseEnough("Delaunay edge at least 1/2 long")
    rep = surface_report(K)
    if not (rep.is_surface and rep.connected and rep.orientable
            and rep.genus == 1):
        raise NotDenseEnough("quotient is not a torus triangulation")
    return DelaunayTriangulation(K, P)


def max_edge_length(P: TorusPointSet, T: SimplicialComplex) -> Fraction:
    """Exact squared torus length of the longest edge of T."""
    return max(torus_dist2(P.points[a - 1], P.points[b - 1])
               for a, b in T.faces(1))


def verify_empty_circumdisks(result: DelaunayTriangulation) -> bool:
    """Exact global Delaunay check: no point inside any circumdisk.

    Each triangle is realized by the lift that keeps its vertices within
    distance 1/2; all nine translates of every other point are tested.
    """
    P = result.points
    coords, _ = _lifted(P)
    for face in result.complex.faces(2):
        lift = _realize(P, face)
        defining = set(lift)
        for c in coords:
            if c in defining:
                continue
            if incircle(*lift, c) > 0:
                return False
    return True


def _realize(P: TorusPointSet, face):
    """Lift a short triangle to the plane, anchored at its first vertex."""
    half = GRID_DENOMINATOR // 2
    a = P.points[face[0] - 1]
    out = [(a.nx, a.ny)]
    for v in face[1:]:
        p = P.points[v - 1]
        dx = (p.nx - a.nx + half) % GRID_DENOMINATOR - half
        dy = (p.ny - a.ny + half) % GRID_DENOMINATOR - half
        out.append((a.nx + dx, a.ny + dy))
    return out


# -- JSON formats ----------------------------------------------------------

def points_to_json(P: TorusPointSet) -> str:
    return json.dumps({"denominator": GRID_DENOMINATOR,
                       "points": [[p.nx, p.ny] for p in P.points]},
                      indent=None, separators=(",", ":"))


def points_from_json(text: str) -> TorusPointSet:
    data = json.loads(text)
    if data.get("denominator") != GRID_DENOMINATOR:
        raise ShiftlabError("unsupported grid denominator")
    return TorusPointSet(tuple(TorusPoint(int(x), int(y))
                               for x, y in data["points"]))
