"""Command-line front end: ``lambda-bound {bound,table,sweep,verify,spectrum,mesh}``.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 input-data error.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

import numpy as np

from . import bounds, certify, kernels
from .errors import DeltaNegative, LambdaBoundError, MeshError, ParameterOutOfRange, SolverError, Undecided
from .fields import FLOAT, MAX_PRECISION_BITS, refine
from .report import csv_text, dumps, output_record, rows_as_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _non_negative_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _int_list(text: str) -> List[int]:
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("n values must be positive integers")
    return vals


def _write(text: str, path: Optional[str]) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- bound ---------------------------------------------------------------------

def _nbound_payload(b: bounds.NBound) -> dict:
    return {"n": b.n, "a": b.a, "bound_over_8pi": b.over_8pi, "location": b.location}


def cmd_bound(args) -> int:
    if args.a is not None and args.n is None:
        raise _Usage("--a requires --n")
    g = args.genus
    if args.exact:
        def evaluate(field):
            if args.n is None:
                return bounds.best_bound(g, args.n_max, field, args.beta)
            if args.a is None:
                return bounds.optimal_bound_for_n(args.n, g, field, args.beta)
            return bounds.general_bound_over_8pi(args.a, args.n, g, args.beta, field)

        result, bits = refine(evaluate, args.bits, args.max_bits)
    else:
        bits = None
        if args.n is None:
            result = bounds.best_bound(g, args.n_max, FLOAT, args.beta)
        elif args.a is None:
            result = bounds.optimal_bound_for_n(args.n, g, FLOAT, args.beta)
        else:
            result = bounds.general_bound_over_8pi(args.a, args.n, g, args.beta)

    if isinstance(result, bounds.BoundReport):
        n, a, over, loc = result.chosen_n, result.chosen_a, result.bound_over_8pi, result.a_location
        mode = "best"
    elif isinstance(result, bounds.NBound):
        n, a, over, loc = result.n, result.a, result.over_8pi, result.location
        mode = "optimal_for_n"
    else:
        n, a, over, loc = args.n, args.a, result, None
        mode = "general"
    dq = bounds.derived_quantities(n, g, args.beta)
    payload = {
        "mode": mode,
        "genus": g,
        "beta": args.beta,
        "n": n,
        "a": float(a),
        "d": dq.d,
        "delta": float(dq.delta),
        "bound_over_8pi": float(over),
        "bound_absolute": bounds.EIGHT_PI * float(over),
        "location": loc,
        "yang_yau_over_8pi": bounds.yang_yau_over_8pi(g),
    }
    if isinstance(result, bounds.BoundReport):
        payload["per_n"] = [
            {k: (float(v) if k in ("a", "bound_over_8pi") else v) for k, v in _nbound_payload(b).items()}
            for b in result.per_n
        ]
    if args.exact:
        payload["precision_bits"] = bits
        payload["enclosure_over_8pi"] = {"lo": str(over.lo), "hi": str(over.hi)}
        payload["a_enclosure"] = {"lo": str(a.lo), "hi": str(a.hi)} if hasattr(a, "lo") else None
    _write(dumps(output_record("bound", payload, args.deterministic)), args.output)
    return EXIT_OK


# -- table / sweep ---------------------------------------------------------------

def table_rows(gamma_max: int, n_max: int = 5):
    genera = np.arange(0, gamma_max + 1)
    values = np.stack([kernels.optimal_sweep(n, genera)[1] for n in range(1, n_max + 1)])
    best = np.argmin(values, axis=0)  # first occurrence: ties go to the smallest n
    best_val = values[best, np.arange(genera.size)]
    yy = (genera + 3) // 2
    for g, i, v, y in zip(genera.tolist(), best.tolist(), best_val.tolist(), yy.tolist()):
        yield g, i + 1, v, max(y - v, 0.0)


def cmd_table(args) -> int:
    if args.gamma_max < 3:
        raise _Usage("--gamma-max must be at least 3")
    header = ["genus", "optimal_n", "bound_over_8pi", "improvement_over_yang_yau"]
    rows = list(table_rows(args.gamma_max, args.n_max))
    if args.format == "csv":
        text = csv_text(header, rows)
    else:
        text = dumps(output_record("table", {"rows": rows_as_json(header, rows)}, args.deterministic))
    _write(text, args.output)
    return EXIT_OK


def sweep_rows(gamma_min: int, gamma_max: int, n_list: List[int]):
    genera = np.arange(gamma_min, gamma_max + 1)
    cols = [kernels.optimal_sweep(n, genera)[1] for n in n_list]
    f5 = kernels.closed_form_f5_sweep(genera)
    slope, intercept = bounds.linear_envelope()
    env = slope * genera + intercept
    header = ["genus"] + [f"F{n}_over_8pi" for n in n_list] + ["F5_closed_form_over_8pi", "envelope_over_8pi"]
    rows = []
    for k, g in enumerate(genera.tolist()):
        rows.append([g] + [float(c[k]) for c in cols] + [float(f5[k]), float(env[k])])
    return header, rows


def cmd_sweep(args) -> int:
    if args.gamma_min > args.gamma_max:
        raise _Usage("--gamma-min must not exceed --gamma-max")
    header, rows = sweep_rows(args.gamma_min, args.gamma_max, args.n)
    if args.format == "csv":
        text = csv_text(header, rows)
    else:
        payload = {"n": args.n, "rows": rows_as_json(header, rows)}
        text = dumps(output_record("sweep", payload, args.deterministic))
    _write(text, args.output)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    ids = args.claim or None
    if ids:
        unknown = [c for c in ids if c not in certify.CLAIMS]
        if unknown:
            raise _Usage(f"unknown claim(s) {unknown}; choose from {sorted(certify.CLAIMS)}")
    results = certify.run_claims(ids, args.bits, args.max_bits, args.jobs)
    all_ok = all(r.verdict is certify.Verdict.CERTIFIED for r in results)
    payload = {
        "max_bits": args.max_bits,
        "all_certified": all_ok,
        "claims": [r.to_dict() for r in results],
    }
    _write(dumps(output_record("verify", payload, args.deterministic)), args.output)
    for r in results:
        print(f"{r.claim_id}: {r.verdict.value} ({r.instances} instances, {r.precision_used} bits)", file=sys.stderr)
    return EXIT_OK if all_ok else EXIT_FAIL


# -- spectrum --------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    from . import spectral

    if args.mesh:
        mesh = spectral.load_off(args.mesh)
        genus = mesh.genus
        spec = spectral.mesh_normalized_lambda1(mesh, tol=args.tol)
        extra = {"vertices": mesh.n_vertices, "faces": mesh.n_faces, "euler_characteristic": mesh.euler_characteristic}
    elif args.torus:
        v1x, v1y, v2x, v2y = args.torus
        spec = spectral.torus_normalized_lambda1(spectral.Lattice2D((v1x, v1y), (v2x, v2y)))
        genus = 1
        extra = {"lattice": [[v1x, v1y], [v2x, v2y]]}
    else:
        spec = spectral.sphere_normalized_lambda1(args.sphere)
        genus = 0
        extra = {"radius": args.sphere}
    cmp = spectral.check_against_bound(spec, genus, args.slack)
    payload = {
        "method": spec.method,
        "genus": genus,
        "lambda1": spec.lambda1,
        "area": spec.area,
        "normalized": spec.normalized,
        "normalized_over_8pi": spec.normalized / bounds.EIGHT_PI,
        "residual": spec.residual,
        "iterations": spec.iterations,
        "bound_over_8pi": cmp.bound_over_8pi,
        "bound_absolute": cmp.bound,
        "chosen_n": cmp.chosen_n,
        "margin": cmp.margin,
        "slack": cmp.slack,
        "pass": cmp.passed,
        **extra,
    }
    _write(dumps(output_record("spectrum", payload, args.deterministic)), args.output)
    return EXIT_OK if cmp.passed else EXIT_FAIL


# -- mesh ------------------------------------------------------------------------

def cmd_mesh(args) -> int:
    from . import spectral

    if args.shape == "icosphere":
        mesh = spectral.icosphere(args.subdivisions, args.radius)
    else:
        mesh = spectral.multi_hole_slab(args.holes, args.refine)
    if not args.output or args.output == "-":
        raise _Usage("mesh needs --output PATH")
    spectral.write_off(args.output, mesh)
    print(f"wrote {args.output}: V={mesh.n_vertices} F={mesh.n_faces} genus={mesh.genus}", file=sys.stderr)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lambda-bound",
        description="Upper bounds for the normalised first Laplace eigenvalue of orientable surfaces.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=False):
        sp.add_argument("-o", "--output", help="write to PATH instead of stdout")
        sp.add_argument("--deterministic", action="store_true", help="omit the timestamp field")
        if formats:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")

    b = sub.add_parser("bound", help="evaluate the bound for one genus")
    b.add_argument("--genus", type=_non_negative_int, required=True)
    b.add_argument("--n", type=_positive_int, help="fix the target dimension (default: best n in [1, n-max])")
    b.add_argument("--a", type=float, help="fix the deformation parameter (needs --n)")
    b.add_argument("--beta", type=_non_negative_int, default=0, help="total ramification (default 0)")
    b.add_argument("--n-max", type=_positive_int, default=5)
    b.add_argument("--exact", action="store_true", help="use certified rational interval arithmetic")
    b.add_argument("--bits", type=_positive_int, default=None, help="starting interval precision")
    b.add_argument("--max-bits", type=_positive_int, default=MAX_PRECISION_BITS)
    common(b)
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("table", help="optimal n and bound for every genus up to --gamma-max")
    t.add_argument("--gamma-max", type=_non_negative_int, default=101)
    t.add_argument("--n-max", type=_positive_int, default=5)
    common(t, formats=True)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("sweep", help="F_n curves with the n=5 closed form and its linear envelope")
    s.add_argument("--gamma-min", type=_non_negative_int, default=0)
    s.add_argument("--gamma-max", type=_non_negative_int, required=True)
    s.add_argument("--n", type=_int_list, default=[1, 2, 3, 4, 5], help="comma-separated list, e.g. 1,5")
    common(s, formats=True)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the certified lemma checks")
    v.add_argument("--claim", action="append", help=f"restrict to a claim id (repeatable): {', '.join(sorted(certify.CLAIMS))}")
    v.add_argument("--bits", type=_positive_int, default=None, help="starting precision (env LAMBDA_BOUND_PRECISION_BITS)")
    v.add_argument("--max-bits", type=_positive_int, default=MAX_PRECISION_BITS)
    v.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    common(v)
    v.set_defaults(func=cmd_verify)

    sp = sub.add_parser("spectrum", help="compute lambda_1 * Area and compare with the bound")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--mesh", metavar="PATH", help="closed orientable triangle mesh (ASCII OFF)")
    src.add_argument("--torus", nargs=4, type=float, metavar=("V1X", "V1Y", "V2X", "V2Y"), help="flat torus lattice")
    src.add_argument("--sphere", type=float, metavar="RADIUS", help="analytic round sphere")
    sp.add_argument("--tol", type=float, default=1e-8, help="eigen-residual tolerance for meshes")
    sp.add_argument("--slack", type=float, default=None, help="relative slack (default 0.02 discrete, 0 analytic)")
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    m = sub.add_parser("mesh", help="write a test mesh as OFF")
    m.add_argument("shape", choices=("icosphere", "slab"))
    m.add_argument("--subdivisions", type=_non_negative_int, default=4)
    m.add_argument("--radius", type=float, default=1.0)
    m.add_argument("--holes", type=_non_negative_int, default=2, help="genus of the slab surface")
    m.add_argument("--refine", type=_positive_int, default=2)
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_mesh)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except ParameterOutOfRange as exc:
        print(f"lambda-bound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DeltaNegative as exc:
        print(f"lambda-bound: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Undecided as exc:
        print(f"lambda-bound: undecided: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (MeshError, SolverError, OSError) as exc:
        print(f"lambda-bound: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except LambdaBoundError as exc:
        print(f"lambda-bound: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
