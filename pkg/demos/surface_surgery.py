"""Grow and shrink surface triangulations.

Starting from the 7-vertex torus we split vertices, take connected sums,
and then contract everything back down to an irreducible triangulation.
"""

import random

from shiftlab import (connected_sum, legal_splits, reduce_to_irreducible,
                      surface_report, vertex_split)
from shiftlab.experiments import CSASZAR_TORUS


def describe(name, K):
    rep = surface_report(K)
    kind = "orientable" if rep.orientable else "nonorientable"
    print(f"{name}: n={K.n}, f={K.f_vector()}, genus {rep.genus} {kind}")


def main():
    rng = random.Random(7)
    K = CSASZAR_TORUS
    describe("csaszar torus", K)

    for step in range(4):
        move = rng.choice(legal_splits(K))
        K = vertex_split(K, *move)
    describe("after 4 vertex splits", K)

    double = connected_sum(K, CSASZAR_TORUS,
                           K.triangles()[0], CSASZAR_TORUS.triangles()[0])
    describe("connected sum with the torus", double)

    irreducible, seq = reduce_to_irreducible(double)
    describe(f"after {len(seq)} edge contractions", irreducible)
    print("contraction sequence:", seq)


if __name__ == "__main__":
    main()
