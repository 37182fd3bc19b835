import json
import random

import pytest

from shiftlab import (FieldSpec, SimplicialComplex, apply_contractions,
                      barycentric_subdivision, betti, closure_of,
                      connected_sum, contract_subdivision, edge_contract,
                      is_isomorphic, legal_splits, link_cycle,
                      reduce_to_irreducible, surface_report, vertex_split)
from shiftlab.errors import NotAnEdge, NotASurface, SurfaceViolated
from shiftlab.experiments import CSASZAR_TORUS, RP2_SIX

BOUNDARY_TETRAHEDRON = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_closure_and_f_vector():
    K = SimplicialComplex.from_facets([(1, 2, 3), (3, 4)])
    assert K.f_vector() == (4, 4, 1)
    assert K.dim == 2
    assert K.has_face((2,)) and K.has_face((1, 3)) and not K.has_face((1, 4))
    assert closure_of([(1, 2)]) == frozenset({(1,), (2,), (1, 2)})


def test_facets_and_labels_compact():
    K = SimplicialComplex.from_facets([(2, 5), (5, 9)])
    # labels relabeled onto 1..n in order
    assert K.n == 3
    assert set(K.facets()) == {(1, 2), (2, 3)}


def test_betti_sphere_and_torus():
    exact = FieldSpec.exact_rational()
    sphere = SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON)
    # reduced Betti numbers
    assert betti(sphere, exact) == (0, 0, 1)
    torus = CSASZAR_TORUS
    assert betti(torus, exact) == (0, 2, 1)
    rp2 = RP2_SIX
    assert betti(rp2, exact) == (0, 0, 0)
    assert betti(rp2, FieldSpec.binary_extension()) == (0, 1, 1)


def test_surface_report_types():
    sphere = surface_report(SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON))
    assert sphere.is_surface and sphere.orientable and sphere.genus == 0
    torus = surface_report(CSASZAR_TORUS)
    assert torus.is_surface and torus.orientable and torus.genus == 1
    rp2 = surface_report(RP2_SIX)
    assert rp2.is_surface and not rp2.orientable and rp2.genus == 1
    not_surface = surface_report(SimplicialComplex.from_facets([(1, 2, 3), (1, 2, 4), (1, 2, 5)]))
    assert not not_surface.is_surface


def test_link_cycle():
    torus = CSASZAR_TORUS
    cyc = link_cycle(torus, 1)
    assert cyc is not None and len(cyc) == 6 and len(set(cyc)) == 6
    fan = SimplicialComplex.from_facets([(1, 2, 3), (1, 3, 4)])
    assert link_cycle(fan, 1) is None


def test_edge_contract_and_errors():
    torus = CSASZAR_TORUS
    with pytest.raises(NotAnEdge):
        edge_contract(torus, (1, 99))
    # the 7-vertex torus is irreducible: every contraction breaks it
    for e in torus.faces(1):
        with pytest.raises(SurfaceViolated):
            edge_contract(torus, e, validated=True)
    sphere = SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON)
    with pytest.raises(SurfaceViolated):
        # tetrahedron boundary would collapse below a surface
        edge_contract(sphere, (1, 2), validated=True)


def test_split_then_contract_roundtrip(rng):
    base = SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON)
    for _ in range(10):
        v, i, j = rng.choice(legal_splits(base))
        K = vertex_split(base, v, i, j)
        rep = surface_report(K)
        assert rep.is_surface and rep.genus == 0 and K.n == base.n + 1
        back = edge_contract(K, (v, K.n), keep=v, validated=True)
        assert is_isomorphic(back, base)


def test_split_grows_sphere(rng):
    K = SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON)
    for _ in range(6):
        v, i, j = rng.choice(legal_splits(K))
        K = vertex_split(K, v, i, j)
    rep = surface_report(K)
    assert rep.is_surface and rep.orientable and rep.genus == 0
    assert K.f_vector() == (10, 24, 16)  # Euler count for a 10-vertex sphere


def test_connected_sum_adds_genus():
    torus = CSASZAR_TORUS
    double = connected_sum(torus, torus, torus.triangles()[0], torus.triangles()[0])
    rep = surface_report(double)
    assert rep.is_surface and rep.orientable and rep.genus == 2
    assert double.n == 2 * torus.n - 3


def test_barycentric_subdivision():
    K = SimplicialComplex.from_facets([(1, 2, 3), (1, 2, 4)])
    sd, prov = barycentric_subdivision(K)
    f = K.f_vector()
    assert sd.f_vector()[0] == sum(f)
    assert sd.f_vector()[2] == 6 * f[2]
    # provenance maps every new label to an original face
    assert set(prov) == set(range(1, sd.n + 1))
    assert sorted(prov.values(), key=lambda x: (len(x), x))[0] == (1,)
    exact = FieldSpec.exact_rational()
    assert betti(sd, exact) == betti(K, exact)


def test_contract_subdivision_recovers_input():
    torus = CSASZAR_TORUS
    sd, prov = barycentric_subdivision(torus)
    seq = contract_subdivision(sd, prov, torus)
    assert apply_contractions(sd, seq) == torus


def test_reduce_to_irreducible_sphere(rng):
    K = SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON)
    for _ in range(5):
        v, i, j = rng.choice(legal_splits(K))
        K = vertex_split(K, v, i, j)
    small, seq = reduce_to_irreducible(K)
    assert len(seq) == 5
    assert is_isomorphic(small, SimplicialComplex.from_facets(BOUNDARY_TETRAHEDRON))
    with pytest.raises(NotASurface):
        reduce_to_irreducible(SimplicialComplex.from_facets([(1, 2, 3), (1, 2, 4), (1, 2, 5)]))


def test_is_isomorphic_detects_relabeling(rng):
    torus = CSASZAR_TORUS
    perm = list(range(1, 8))
    rng.shuffle(perm)
    relabeled = SimplicialComplex(
        tuple(sorted(perm[v - 1] for v in f)) for f in torus.all_faces())
    assert is_isomorphic(torus, relabeled)
    assert not is_isomorphic(torus, RP2_SIX)


def test_json_roundtrip():
    torus = CSASZAR_TORUS
    text = torus.to_json("csaszar")
    data = json.loads(text)
    assert data["name"] == "csaszar" and len(data["facets"]) == 14
    assert SimplicialComplex.from_json(text) == torus
