import random
from itertools import combinations

import pytest

from shiftlab import (SimplicialComplex, closure_of, legal_splits,
                      vertex_split)


def make_random_complex(rng: random.Random, n: int, dim: int = 2,
                        max_facets: int = 8) -> SimplicialComplex:
    """Random complex on exactly n vertices with facets of size dim+1."""
    maxi = list(combinations(range(1, n + 1), dim + 1))
    count = rng.randrange(1, min(len(maxi), max_facets) + 1)
    facets = rng.sample(maxi, count) + [(v,) for v in range(1, n + 1)]
    return SimplicialComplex(closure_of(facets))


def random_split_sequence(rng: random.Random, base: SimplicialComplex,
                          splits: int) -> SimplicialComplex:
    K = base
    for _ in range(splits):
        K = vertex_split(K, *rng.choice(legal_splits(K)))
    return K


def make_random_disc(rng: random.Random, extra_vertices: int):
    """Disc triangulation grown from a triangle by vertex insertions.

    Each step either stars a triangle from a new interior vertex or splits
    a boundary edge with a new boundary vertex.
    """
    tris = {(1, 2, 3)}
    nxt = 4
    for _ in range(extra_vertices):
        if rng.random() < 0.5:
            t = rng.choice(sorted(tris))
            tris.remove(t)
            a, b, c = t
            tris |= {tuple(sorted((a, b, nxt))), tuple(sorted((a, c, nxt))),
                     tuple(sorted((b, c, nxt)))}
        else:
            e, t = rng.choice(sorted(_boundary_edges(tris).items()))
            tris.remove(t)
            (c,) = set(t) - set(e)
            a, b = e
            tris |= {tuple(sorted((a, nxt, c))), tuple(sorted((nxt, b, c)))}
        nxt += 1
    return SimplicialComplex(closure_of(tris))


def _boundary_edges(tris):
    count = {}
    for t in tris:
        for e in combinations(t, 2):
            count.setdefault(e, []).append(t)
    return {e: ts[0] for e, ts in count.items() if len(ts) == 1}


def disc_profile(K: SimplicialComplex):
    """(interior, boundary) vertex counts of a disc triangulation."""
    edge_deg = {}
    for t in K.faces(2):
        for e in combinations(t, 2):
            edge_deg[e] = edge_deg.get(e, 0) + 1
    boundary = {v for e, d in edge_deg.items() if d == 1 for v in e}
    return K.n - len(boundary), len(boundary)


@pytest.fixture
def rng():
    return random.Random(20240817)
