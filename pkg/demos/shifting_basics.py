"""Shift a few small complexes and watch what is preserved.

Run from the repository root after installing the package:

    python3 demos/shifting_basics.py
"""

from shiftlab import (FieldSpec, SimplicialComplex, betti, exterior_shift,
                      verify_shift_invariants)


def show(name, K, field, seed=0):
    res = exterior_shift(K, field, seed=seed)
    report = verify_shift_invariants(K, res, field)
    print(f"{name}: f = {K.f_vector()}")
    print(f"  shifted facets: {sorted(res.shifted.facets())}")
    print(f"  betti {report['betti_input']} -> {report['betti_shifted']},"
          f" agreement across seeds: {res.agreement}")


def main():
    prime = FieldSpec.prime_proxy(0)
    exact = FieldSpec.exact_rational()
    binary = FieldSpec.binary_extension()

    cycle = SimplicialComplex.from_facets([(1, 2), (2, 3), (3, 4), (1, 4)])
    show("4-cycle", cycle, prime)

    sphere = SimplicialComplex.from_facets(
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])
    show("boundary of the tetrahedron", sphere, prime)

    wedge = SimplicialComplex.from_facets(
        [(1, 2, 3), (3, 4), (4, 5), (3, 5), (6,)])
    show("triangle + 3-cycle + point", wedge, prime)

    # the exact rational mode gives the same answer, just slower
    res_exact = exterior_shift(wedge, exact, seed=1)
    res_prime = exterior_shift(wedge, prime, seed=1)
    print("exact == prime proxy:", res_exact.shifted == res_prime.shifted)

    # characteristic 2 can differ; the projective plane is the standard case
    rp2 = SimplicialComplex.from_facets(
        [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
         (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)])
    print("rp2 betti char 0:", betti(rp2, exact))
    print("rp2 betti char 2:", betti(rp2, binary))
    d0 = exterior_shift(rp2, prime, 0).shifted
    d2 = exterior_shift(rp2, binary, 0).shifted
    print("shift differs between characteristics:", d0 != d2)


if __name__ == "__main__":
    main()
