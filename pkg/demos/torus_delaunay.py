"""Random points on the unit flat torus, triangulated exactly.

Coordinates live on a 2^32 grid so every orientation and incircle test
is an integer computation; the output either satisfies the Delaunay
property exactly or the point set is rejected as degenerate.
"""

from fractions import Fraction

from shiftlab import reduce_to_irreducible, surface_report
from shiftlab.errors import Degenerate
from shiftlab.torus import (delaunay_torus, max_edge_length, sample_points,
                            verify_empty_circumdisks)


def main():
    for attempt in range(16):
        points = sample_points(80, f"demo:{attempt}")
        try:
            result = delaunay_torus(points)
            break
        except Degenerate:
            print("degenerate sample, retrying")
    K = result.complex

    rep = surface_report(K)
    print(f"triangulation: f = {K.f_vector()}, genus {rep.genus},"
          f" orientable {rep.orientable}")
    sq = max_edge_length(points, K)
    print(f"max squared edge length {sq} (~ {float(sq) ** 0.5:.4f})")
    print("all circumdisks empty:", verify_empty_circumdisks(result))
    print("edges shorter than 1/2:", sq < Fraction(1, 4))

    irreducible, seq = reduce_to_irreducible(K)
    print(f"contracted {len(seq)} edges down to an irreducible torus"
          f" on {irreducible.n} vertices")


if __name__ == "__main__":
    main()
