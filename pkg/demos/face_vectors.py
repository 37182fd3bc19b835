"""Build canonical complexes from face counts and Betti numbers."""

from shiftlab import (FieldSpec, InvalidPair, betti, build_K_f,
                      build_K_f_beta, delta_graph, delta_orientable,
                      is_homology_lex_segment)


def main():
    exact = FieldSpec.exact_rational()

    K = build_K_f((6, 9, 2))
    print("K_f for f=(6,9,2):", sorted(K.facets()))

    # prescribing homology as well: the octahedron's face counts with one
    # 2-dimensional hole
    K = build_K_f_beta((6, 12, 8), (0, 0, 1))
    print("f =", K.f_vector(), " betti =", betti(K, exact))
    print("recognized as homology lex-segment:",
          is_homology_lex_segment(K, exact))

    bad = build_K_f_beta((5, 3, 1), (1, 0, 1))
    assert isinstance(bad, InvalidPair)
    print("rejected pair:", bad.reason, "at dimensions", bad.violations)

    # model shifted complexes for graphs and surfaces
    print("graph model (10 vertices, 2 components, 1 cycle):",
          sorted(delta_graph(10, 2, 1).faces(1))[-3:])
    torus = delta_orientable(1, 10)
    print("torus model triangles:", len(torus.triangles()),
          " betti:", betti(torus, exact))


if __name__ == "__main__":
    main()
