"""Two small concentration experiments.

First, random refinements of K4: as the number of subdivision points
grows, the shift of the refined graph almost always equals the model
complex. Second, Delaunay triangulations of random torus point sets,
whose shifts concentrate on the torus model.

Both runs are seeded and reproducible; pass more trials for smoother
fractions.
"""

import time

from shiftlab import (FieldSpec, graph_from_edges, records_to_csv,
                      run_delaunay_experiment, run_refinement_experiment)

FIELD = FieldSpec.prime_proxy(0)


def main():
    K4 = graph_from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    for n in (12, 24, 40):
        t0 = time.time()
        records, summary = run_refinement_experiment(
            K4, n, 20, FIELD, 1, jobs=2)
        print(f"K4 refinement n={n:3d}: fraction {summary['fraction']:.2f}"
              f" over {summary['trials']} trials ({time.time() - t0:.1f}s)")

    t0 = time.time()
    records, summary = run_delaunay_experiment(50, 8, FIELD, 2, jobs=2)
    print(f"delaunay n=50: {summary} ({time.time() - t0:.1f}s)")
    print()
    print(records_to_csv(records[:3]))


if __name__ == "__main__":
    main()
