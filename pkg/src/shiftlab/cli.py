"""Command-line interface.

Exit codes: 0 on success, 1 on domain errors (invalid f-vectors,
degenerate point sets, genericity failures, ...), 2 on usage errors.
All randomness flows through --seed flags; outputs are deterministic
byte-for-byte, except for the wall-time column of experiment CSVs.
"""

import argparse
import json
import sys

from .complexes import SimplicialComplex, betti, reduce_to_irreducible
from .errors import Degenerate, ShiftlabError
from .experiments import (records_to_csv, run_delaunay_experiment,
                          run_refinement_experiment)
from .fields import FieldSpec
from .lexseg import (InvalidF, InvalidPair, build_K_f, build_K_f_beta,
                     delta_graph, delta_nonorientable, delta_orientable,
                     is_homology_lex_segment, is_shifted)
from .shifting import exterior_shift
from .torus import (delaunay_torus, max_edge_length, points_from_json,
                    points_to_json, sample_points)


def _field_from_args(args) -> FieldSpec:
    mode = getattr(args, "mode", "proxy")
    return FieldSpec.for_characteristic(args.char, mode, getattr(args, "seed", 0))


def _read_complex(path: str) -> SimplicialComplex:
    with open(path) as fh:
        return SimplicialComplex.from_json(fh.read())


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _cmd_shift(args) -> int:
    K = _read_complex(args.infile)
    field = _field_from_args(args)
    result = exterior_shift(K, field, args.seed)
    _emit(result.shifted.to_json(args.name), args.out)
    meta = _json({"field": field.describe(), "seeds": list(result.seeds),
                  "agreement": result.agreement,
                  "pivots": list(result.pivots)})
    if args.out:
        _emit(meta, args.out + ".meta.json")
    else:
        sys.stderr.write(meta + "\n")
    return 0


def _cmd_betti(args) -> int:
    K = _read_complex(args.infile)
    _emit(_json({"betti": list(betti(K, _field_from_args(args)))}), args.out)
    return 0


def _parse_vector(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))


def _cmd_lexseg_build(args) -> int:
    f = _parse_vector(args.f)
    if args.beta is None:
        K = build_K_f(f)
    else:
        K = build_K_f_beta(f, _parse_vector(args.beta))
    if isinstance(K, (InvalidF, InvalidPair)):
        raise ShiftlabError(f"not realizable: {K}")
    _emit(K.to_json(args.name), args.out)
    return 0


def _cmd_lexseg_check(args) -> int:
    K = _read_complex(args.infile)
    field = _field_from_args(args)
    _emit(_json({"is_shifted": is_shifted(K),
                 "is_homology_lex_segment":
                     is_homology_lex_segment(K, field),
                 "betti": list(betti(K, field))}), args.out)
    return 0


def _cmd_delta(args) -> int:
    if args.surface == "orientable":
        K = delta_orientable(args.genus, args.n)
    elif args.surface == "nonorientable":
        K = delta_nonorientable(args.genus, args.n, args.char)
    else:
        K = delta_graph(args.n, args.components, args.cycles)
    _emit(K.to_json(args.name), args.out)
    return 0


def _cmd_delaunay(args) -> int:
    if args.infile:
        with open(args.infile) as fh:
            P = points_from_json(fh.read())
        result = delaunay_torus(P)
    else:
        last = None
        for attempt in range(args.retries):
            P = sample_points(args.n, f"{args.seed}:{attempt}")
            try:
                result = delaunay_torus(P)
                break
            except Degenerate as exc:
                last = exc
        else:
            raise last
    _emit(result.complex.to_json(args.name), args.out)
    if args.points:
        _emit(points_to_json(result.points), args.points)
    if args.embedding:
        emb = {str(v): [p.nx, p.ny]
               for v, p in sorted(result.embedding().items())}
        _emit(_json({"denominator": 4294967296, "vertices": emb}),
              args.embedding)
    sq = max_edge_length(result.points, result.complex)
    sys.stderr.write(f"max squared edge length {sq}\n")
    return 0


def _cmd_refine(args) -> int:
    from .experiments import uniform_refinement

    G = _read_complex(args.graph)
    sample = uniform_refinement(G, args.n, args.seed, args.model)
    _emit(sample.complex.to_json(args.name), args.out)
    return 0


def _cmd_contract(args) -> int:
    K = _read_complex(args.infile)
    irreducible, seq = reduce_to_irreducible(K)
    _emit(irreducible.to_json(args.name), args.out)
    sys.stderr.write(_json({"contractions": [list(e) for e in seq]}) + "\n")
    return 0


def _cmd_experiment(args) -> int:
    field = _field_from_args(args)
    if args.model == "refinement":
        G = _read_complex(args.graph)
        records, summary = run_refinement_experiment(
            G, args.n, args.trials, field, args.seed, jobs=args.jobs)
    else:
        records, summary = run_delaunay_experiment(
            args.n, args.trials, field, args.seed, jobs=args.jobs)
    if args.csv:
        _emit(records_to_csv(records), args.csv)
    _emit(_json(summary), args.summary)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlab",
        description="exterior algebraic shifting and flat-torus experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, char=True, seed=True, out=True):
        if char:
            p.add_argument("--char", type=int, default=0, choices=(0, 2))
            p.add_argument("--mode", default="proxy",
                           choices=("proxy", "exact"))
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if out:
            p.add_argument("--out", default=None)
            p.add_argument("--name", default="")

    p = sub.add_parser("shift", help="exterior shift of a complex")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("betti", help="reduced Betti numbers")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("lexseg-build",
                       help="build K_f or K_{f,beta} from vectors")
    p.add_argument("--f", required=True, help="comma-separated f-vector")
    p.add_argument("--beta", default=None, help="comma-separated Betti vector")
    common(p, char=False, seed=False)
    p.set_defaults(func=_cmd_lexseg_build)

    p = sub.add_parser("lexseg-check",
                       help="shiftedness and homology lex-segment status")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=_cmd_lexseg_check)

    p = sub.add_parser("delta", help="model shifted complexes")
    p.add_argument("--surface", required=True,
                   choices=("orientable", "nonorientable", "graph"))
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--char", type=int, default=0, choices=(0, 2))
    p.add_argument("--components", type=int, default=1)
    p.add_argument("--cycles", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--name", default="")
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("delaunay", help="torus Delaunay triangulation")
    p.add_argument("--in", dest="infile", default=None,
                   help="point-set JSON; otherwise sample --n points")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--retries", type=int, default=16)
    p.add_argument("--points", default=None,
                   help="write the sampled point set here")
    p.add_argument("--embedding", default=None,
                   help="write the vertex embedding sidecar here")
    common(p, char=False)
    p.set_defaults(func=_cmd_delaunay)

    p = sub.add_parser("refine", help="random edge refinement of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--model", default="labeled",
                   choices=("labeled", "compositions"))
    common(p, char=False)
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("contract",
                       help="greedy reduction to an irreducible triangulation")
    p.add_argument("--in", dest="infile", required=True)
    common(p, char=False, seed=False)
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("experiment", help="concentration experiments")
    p.add_argument("model", choices=("refinement", "delaunay"))
    p.add_argument("--graph", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.add_argument("--summary", default=None)
    p.add_argument("--char", type=int, default=0, choices=(0, 2))
    p.add_argument("--mode", default="proxy", choices=("proxy", "exact"))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and args.model == "refinement" \
            and not args.graph:
        parser.error("experiment refinement requires --graph")
    try:
        return args.func(args)
    except ShiftlabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
