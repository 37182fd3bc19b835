"""Predict the shift of a glued complex from the shifts of its parts.

Two complexes glued along a common simplex have a shift determined by
the shifts of the pieces; no matrix work on the union is needed. The
script checks the prediction against the direct computation.
"""

from shiftlab import (FieldSpec, SimplicialComplex, exterior_shift,
                      shift_union_along_simplex, two_disc_shift)

FIELD = FieldSpec.prime_proxy(0)


def main():
    # two triangulated discs sharing the edge {2, 3}; closure_of keeps the
    # labels, unlike from_facets which compacts them
    from shiftlab import closure_of

    left = SimplicialComplex.from_facets([(1, 2, 3), (2, 3, 4)])
    right_faces = closure_of([(2, 3, 5), (3, 5, 6)])
    right = SimplicialComplex.from_facets([(2, 3, 5), (3, 5, 6)])
    union = SimplicialComplex.from_facets(
        [f for f in left.all_faces() | right_faces if len(f) == 3])

    d_left = exterior_shift(left, FIELD, seed=0).shifted
    d_right = exterior_shift(right, FIELD, seed=1).shifted
    predicted = shift_union_along_simplex(d_left, d_right, 2)
    direct = exterior_shift(union, FIELD, seed=2).shifted
    print("edge gluing, prediction == direct:", predicted == direct)
    print("  facets:", sorted(predicted.facets()))

    # disjoint union of two discs: a closed form in the interior and
    # boundary vertex counts
    d1 = exterior_shift(SimplicialComplex.from_facets([(1, 2, 3)]),
                        FIELD, seed=3).shifted
    predicted = shift_union_along_simplex(d_left, d1, 0)
    print("two discs, closed form matches:",
          predicted == two_disc_shift(0, 7))


if __name__ == "__main__":
    main()
