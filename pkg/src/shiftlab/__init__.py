"""Exterior algebraic shifting of simplicial complexes and friends.

The package computes the exterior shift of low-dimensional simplicial
complexes over exact fields, builds lex-segment model complexes with
prescribed face and Betti numbers, performs surface surgery (edge
contraction, vertex split, connected sum, barycentric subdivision),
triangulates random point sets on the flat torus by exact Delaunay
predicates, and runs the two desk-scale concentration experiments.
"""

from .complexes import (SimplicialComplex, SurfaceReport, apply_contractions,
                        barycentric_subdivision, betti, boundary_matrix,
                        closure_of, connected_sum, contract_subdivision,
                        edge_contract, is_contractible_edge, is_isomorphic,
                        legal_splits, link_cycle, missing_triangles,
                        reduce_to_irreducible, surface_report, vertex_split)
from .errors import ShiftlabError
from .experiments import (CSASZAR_TORUS, RP2_SIX, RefinementSample,
                          TrialRecord, build_hlex_surface, derive_seed,
                          graph_from_edges, records_from_csv, records_to_csv,
                          run_delaunay_experiment, run_refinement_experiment,
                          uniform_refinement)
from .fields import BinaryField, FieldSpec, PrimeField, RationalField
from .lexseg import (FBetaPair, InvalidF, InvalidPair, LexBound,
                     build_K_f, build_K_f_beta, count_extensions, delta_graph,
                     delta_nonorientable, delta_orientable, initial_segment,
                     is_homology_lex_segment, is_lex_segment, is_shifted,
                     lex_leq, partial_r, rank_of_subset, segment_by_bound,
                     segment_size, shadow, augmented_shadow, tail,
                     unrank_subset)
from .shifting import (GenericMatrix, ShiftResult, exterior_shift,
                       probe_conjectures, shift_union_along_simplex,
                       two_disc_shift, verify_shift_invariants, vertex_cap)
from .torus import (GRID_DENOMINATOR, DelaunayTriangulation, TorusPoint,
                    TorusPointSet, delaunay_torus, incircle, is_rho_dense,
                    max_edge_length, orient2d, points_from_json,
                    points_to_json, sample_points, torus_dist2,
                    verify_empty_circumdisks)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
