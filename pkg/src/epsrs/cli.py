"""Command-line front end.

Subcommands: srs, fig2, fig3, fig4, fig5, scan-surface, petermann,
decompose. Exit codes: 0 success, 1 input error, 2 numerical failure.
Parallelism over scan samples is capped by the EPSRS_THREADS environment
variable (default 1); outputs are deterministic given flags + seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import experiments
from .exceptions import AmbiguousOrderError, EpsrsError
from .linalg import load_matrix, matrix_to_json
from .models import ChiralityModelParams, ToyModelParams, chirality_h0, toy_h0
from .petermann import petermann_records, records_to_csv
from .response import Contour, cluster_spectrum, spectral_decomposition, surface_scan, xi_residue


class _Parser(argparse.ArgumentParser):
    """argparse with input errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--matrix", help="input matrix JSON file")
    common.add_argument("--out", help="output file path")
    common.add_argument("--seed", type=int, default=experiments.DEFAULT_SEED,
                        help="PRNG seed for stochastic methods")
    common.add_argument("--rc", type=float, help="contour radius override")
    common.add_argument("--nodes", type=int, default=64,
                        help="starting quadrature node count (power of two >= 16)")
    common.add_argument("--tol-cluster", type=float,
                        help="eigenvalue clustering tolerance override")
    common.add_argument("--order", type=int,
                        help="declared EP order for the selected cluster")

    parser = _Parser(prog="epsrs",
                     description="spectral response strength of exceptional points")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("srs", parents=[common],
                       help="response strength of one cluster of a matrix")
    p.add_argument("--cluster", type=int,
                   help="cluster index (default: highest order)")
    p.set_defaults(func=_cmd_srs)

    p = sub.add_parser("fig2", parents=[common],
                       help="splitting and bounds vs detuning (CSV)")
    p.add_argument("--d-min", type=float, default=1e-4)
    p.add_argument("--d-max", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=1e-8)
    p.set_defaults(func=_cmd_fig2, default_out="fig2.csv")

    p = sub.add_parser("fig3", parents=[common],
                       help="splitting and bounds vs perturbation strength (CSV)")
    p.add_argument("--eps-min", type=float, default=1e-13)
    p.add_argument("--eps-max", type=float, default=1e-3)
    p.add_argument("--detuning", type=float, default=2e-3)
    p.set_defaults(func=_cmd_fig3, default_out="fig3.csv")

    p = sub.add_parser("fig4", parents=[common],
                       help="pseudospectrum grid and separatrix level")
    p.add_argument("--detuning", type=float, default=2e-3)
    p.add_argument("--resolution", type=int, default=401)
    p.add_argument("--window", type=float, nargs=4,
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"),
                   help="complex-plane window (default frames both poles)")
    p.add_argument("--c-lo", type=float, default=-14.0,
                   help="separatrix bracket, lower log10(eps)")
    p.add_argument("--c-hi", type=float, default=-4.0,
                   help="separatrix bracket, upper log10(eps)")
    p.set_defaults(func=_cmd_fig4, default_out="fig4.csv")

    p = sub.add_parser("fig5", parents=[common],
                       help="residue vs regularized-Petermann accuracy (CSV)")
    p.add_argument("--d-min", type=float, default=1e-3)
    p.add_argument("--d-max", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=1e-21)
    p.set_defaults(func=_cmd_fig5, default_out="fig5.csv")

    p = sub.add_parser("scan-surface", parents=[common],
                       help="xi along an exceptional surface (CSV)")
    p.add_argument("model", choices=["toy", "chirality"])
    p.add_argument("--spec", required=True,
                   help="JSON scan spec: {base, vary, values, order[, compensate]}")
    p.set_defaults(func=_cmd_scan_surface, default_out="scan.csv")

    p = sub.add_parser("petermann", parents=[common],
                       help="Petermann factors of every eigenpair (CSV)")
    p.set_defaults(func=_cmd_petermann)

    p = sub.add_parser("decompose", parents=[common],
                       help="spectral projectors and nilpotent powers (JSON)")
    p.set_defaults(func=_cmd_decompose)
    return parser


def _require_matrix(args) -> np.ndarray:
    if not args.matrix:
        raise ValueError("this command requires --matrix <path>")
    return load_matrix(args.matrix)


def _emit(args, text: str) -> None:
    out = args.out or getattr(args, "default_out", None)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _clusters_for(args, a):
    """Clustering honoring --cluster/--order declarations."""
    if args.order is not None and getattr(args, "cluster", None) is not None:
        return cluster_spectrum(a, args.tol_cluster,
                                declared_orders={args.cluster: args.order})
    try:
        return cluster_spectrum(a, args.tol_cluster)
    except AmbiguousOrderError as err:
        if args.order is not None and err.cluster_index is not None:
            return cluster_spectrum(
                a, args.tol_cluster,
                declared_orders={err.cluster_index: args.order})
        raise


def _cmd_srs(args) -> int:
    a = _require_matrix(args)
    clusters = _clusters_for(args, a)
    if args.cluster is not None:
        if not 0 <= args.cluster < len(clusters):
            raise ValueError(
                f"cluster index {args.cluster} out of range 0..{len(clusters) - 1}")
        cluster = clusters[args.cluster]
    else:
        cluster = max(clusters, key=lambda c: c.order)
    contour = None
    if args.rc is not None:
        contour = Contour(cluster.eigenvalue, args.rc, args.nodes)
    report = xi_residue(a, cluster, contour)
    _emit(args, json.dumps(report.to_json()) + "\n")
    return 0 if report.converged else 2


def _cmd_fig2(args) -> int:
    table = experiments.fig2_table(args.d_min, args.d_max, args.eps)
    _emit(args, table.to_csv())
    return 0


def _cmd_fig3(args) -> int:
    table = experiments.fig3_table(args.eps_min, args.eps_max, args.detuning)
    _emit(args, table.to_csv())
    return 0


def _cmd_fig4(args) -> int:
    frame = None
    if args.window:
        frame = ((args.window[0], args.window[1]), (args.window[2], args.window[3]))
    grid, c_star = experiments.fig4_grid(args.detuning, frame, args.resolution,
                                         (args.c_lo, args.c_hi))
    out = args.out or args.default_out
    grid.write_csv(out)
    sidecar = out.rsplit(".", 1)[0] + ".json"
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump({"separatrix_c": c_star}, fh)
        fh.write("\n")
    sys.stdout.write(f"separatrix_c = {c_star:.4f} ({out}, {sidecar})\n")
    return 0


def _cmd_fig5(args) -> int:
    r_c = args.rc if args.rc is not None else 1e-11
    table = experiments.fig5_table(args.d_min, args.d_max, r_c, args.eta,
                                   args.seed)
    _emit(args, table.to_csv())
    return 0


def _scan_values(spec: dict) -> list[float]:
    values = spec.get("values")
    if isinstance(values, dict) and "geomspace" in values:
        lo, hi, num = values["geomspace"]
        return [float(v) for v in np.geomspace(float(lo), float(hi), int(num))]
    if isinstance(values, list):
        return [float(v) for v in values]
    raise ValueError('scan spec needs "values": [..] or {"geomspace": [lo, hi, n]}')


def _cmd_scan_surface(args) -> int:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    base = dict(spec["base"])
    vary = spec["vary"]
    order = int(spec["order"])
    compensate = int(spec.get("compensate", 1))
    params_cls = ToyModelParams if args.model == "toy" else ChiralityModelParams
    build = toy_h0 if args.model == "toy" else chirality_h0

    def generator(value: float):
        merged = dict(base)
        merged[vary] = value
        return build(params_cls.from_dict(merged))

    table = surface_scan(generator, _scan_values(spec), order,
                         compensate_power=compensate,
                         tolerance=args.tol_cluster,
                         nodes=args.nodes, radius=args.rc)
    _emit(args, table.to_csv())
    return 0


def _cmd_petermann(args) -> int:
    a = _require_matrix(args)
    records = petermann_records(a)
    out = args.out
    if out is None:
        records_to_csv(records, sys.stdout)
    else:
        records_to_csv(records, out)
    return 0


def _cmd_decompose(args) -> int:
    a = _require_matrix(args)
    clusters = _clusters_for(args, a)
    deco = spectral_decomposition(a, clusters)
    payload = {"clusters": []}
    for cluster, proj, nils in zip(deco.clusters, deco.projectors,
                                   deco.nilpotent_powers):
        lam = complex(cluster.eigenvalue)
        payload["clusters"].append({
            "eigenvalue": [lam.real, lam.imag],
            "multiplicity": cluster.algebraic_multiplicity,
            "order": cluster.order,
            "projector": matrix_to_json(proj),
            "nilpotent_powers": [matrix_to_json(n) for n in nils],
        })
    _emit(args, json.dumps(payload) + "\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except EpsrsError as exc:
        print(f"epsrs: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"epsrs: input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
