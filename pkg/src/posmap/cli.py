"""Command-line surface: inspect, normalize, zeros, section, builtin, rings.

Exit codes: 0 success, 2 parse/usage/input errors, 3 non-convergence,
4 violated preconditions. Identical flags (including the seed) give
byte-identical output files; POSMAP_SEED in the environment overrides
--seed everywhere.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import builtin as builtins_mod
from .bipartite import Witness, diagnostics
from .normalize import normalize
from .sections import plane_from_states, project_point, scan_boundary, section_of_type
from .serialize import (FormatError, atomic_write, curves_to_csv,
                        diagnostics_to_json, hermitian_to_obj,
                        normalization_to_json, render_section_svg,
                        rings_to_csv, witness_from_json, witness_to_json,
                        zeros_to_json)
from .zeros import find_zeros

__all__ = ["main"]

BUILTIN_NAMES = ("choi-lam", "horodecki-2x4", "identity", "transposition")
SECTION_TYPES = ("A", "B", "C", "D", "E", "F", "diag", "tangent")


# =============================================================================
# Helpers
# =============================================================================

def _emit(text: str, output: str) -> None:
    if output:
        atomic_write(output, text)
    else:
        sys.stdout.write(text)


def _resolve_seed(seed: int) -> int:
    env = os.environ.get("POSMAP_SEED")
    if env is None:
        return seed
    try:
        return int(env)
    except ValueError:
        raise FormatError(f"POSMAP_SEED must be an integer, got {env!r}")


def _builtin_witness(name: str, dim: int, scale: str) -> Witness:
    if name == "choi-lam":
        return builtins_mod.choi_lam_witness(scale=scale)
    if name == "horodecki-2x4":
        return builtins_mod.horodecki_2x4_witness()
    if name == "identity":
        return builtins_mod.identity_witness(dim)
    if name == "transposition":
        return builtins_mod.transposition_witness(dim)
    raise FormatError(f"unknown builtin {name!r}")


def _load_witness(args) -> Witness:
    if getattr(args, "input", None):
        try:
            with open(args.input, "r") as handle:
                text = handle.read()
        except OSError as exc:
            raise FormatError(f"cannot read {args.input}: {exc}")
        return witness_from_json(text)
    return _builtin_witness(args.builtin, getattr(args, "dim", 3),
                            getattr(args, "scale", "map"))


def _add_witness_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="witness JSON file")
    group.add_argument("--builtin", choices=BUILTIN_NAMES,
                       help="named builtin witness")
    parser.add_argument("--dim", type=int, default=3,
                        help="dimension for identity/transposition (default 3)")
    parser.add_argument("--scale", choices=("map", "paper"), default="map",
                        help="choi-lam normalization (default map)")


# =============================================================================
# Subcommands
# =============================================================================

def _cmd_inspect(args) -> int:
    W = _load_witness(args)
    sys.stdout.write(diagnostics_to_json(diagnostics(W)))
    return 0


def _cmd_normalize(args) -> int:
    W = _load_witness(args)
    result = normalize(W, tol=args.tol, max_iter=args.max_iter)
    _emit(normalization_to_json(result), args.output)
    if not result.converged:
        print(f"did not converge within {args.max_iter} iterations",
              file=sys.stderr)
        return 3
    return 0


def _cmd_zeros(args) -> int:
    W = _load_witness(args)
    seed = _resolve_seed(args.seed)
    zeros = find_zeros(W, starts=args.starts, seed=seed, tol=args.tol)
    _emit(zeros_to_json(zeros), args.output)
    return 0


def _section_plane(W: Witness, kind: str, seed: int):
    eye = np.eye(W.m, dtype=complex)
    if kind == "diag":
        if W.m < 2:
            raise ValueError("diag section needs m >= 2")
        return plane_from_states(eye / W.m, np.outer(eye[:, 0], eye[:, 0]),
                                 np.outer(eye[:, 1], eye[:, 1]),
                                 norm_frame="image", W=W)
    if kind == "tangent":
        if W.m != 3 or W.n != 3:
            raise ValueError("tangent section is defined for 3x3 maps")
        rho0, rho1, rho2 = builtins_mod.choi_lam_tangent_section()
        return plane_from_states(rho0, rho1, rho2, norm_frame="image", W=W)
    return section_of_type(kind, k=W.m, seed=seed, norm_frame="image", W=W)


def _cmd_section(args) -> int:
    W = _load_witness(args)
    seed = _resolve_seed(args.seed)
    plane = _section_plane(W, args.type, seed)
    source = scan_boundary(plane, transform="none", n_theta=args.samples)
    image_of_source = scan_boundary(plane, transform="map", W=W,
                                    n_theta=args.samples)
    image_plane = scan_boundary(plane, transform="image_plane", W=W,
                                n_theta=args.samples)

    a, b, c = plane.abc
    markers = {
        "rho1_image": (1.0 / a, 0.0),
        "rho2_image": (-c / (a * b), 1.0 / b),
        "max_mixed_projection": project_point(
            plane, np.eye(W.n, dtype=complex) / W.n),
    }

    atomic_write(args.output, curves_to_csv([source, image_of_source,
                                             image_plane]))
    sidecar = {
        "type": args.type,
        "norm_frame": plane.norm_frame,
        "abc": [float(a), float(b), float(c)],
        "samples": args.samples,
        "seed": seed,
        "markers": {k: (None if v is None else [float(v[0]), float(v[1])])
                    for k, v in markers.items()},
        "rho0": hermitian_to_obj(plane.rho0),
    }
    atomic_write(os.path.splitext(args.output)[0] + ".json",
                 json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    if args.svg:
        atomic_write(args.svg,
                     render_section_svg([image_of_source, image_plane],
                                        markers))
    return 0


def _cmd_builtin(args) -> int:
    W = _builtin_witness(args.name, args.dim, args.scale)
    _emit(witness_to_json(W), args.output)
    return 0


def _cmd_rings(args) -> int:
    params = builtins_mod.RingParams(a=args.a, b=args.b, theta0=args.theta0)
    theta = np.linspace(0.0, 2.0 * np.pi, args.samples, endpoint=False)
    plus = builtins_mod.ring_points(theta, params, branch=+1)
    minus = builtins_mod.ring_points(theta, params, branch=-1)
    _emit(rings_to_csv(theta, plus, minus), args.output)
    return 0


# =============================================================================
# Parser and entry point
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    defaults = builtins_mod.RingParams()
    parser = argparse.ArgumentParser(
        prog="posmap",
        description="Entanglement witness and positive map toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="structural report of a witness")
    _add_witness_source(p)
    p.set_defaults(func=_cmd_inspect)

    p = sub.add_parser("normalize",
                       help="transform to unital, trace preserving form")
    _add_witness_source(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--output", help="result JSON path (default stdout)")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("zeros", help="locate and classify product zeros")
    _add_witness_source(p)
    p.add_argument("--starts", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--output", help="zeros JSON path (default stdout)")
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("section", help="boundary curves of a 2D section")
    _add_witness_source(p)
    p.add_argument("--type", required=True, choices=SECTION_TYPES)
    p.add_argument("--samples", type=int, default=720)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--output", required=True, help="curve CSV path")
    p.add_argument("--svg", help="optional SVG rendering path")
    p.set_defaults(func=_cmd_section)

    p = sub.add_parser("builtin", help="emit a builtin witness as JSON")
    p.add_argument("name", choices=BUILTIN_NAMES)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--scale", choices=("map", "paper"), default="map")
    p.add_argument("--output", help="witness JSON path (default stdout)")
    p.set_defaults(func=_cmd_builtin)

    p = sub.add_parser("rings", help="sample the 2x4 map's zero rings")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--a", type=float, default=defaults.a)
    p.add_argument("--b", type=float, default=defaults.b)
    p.add_argument("--theta0", type=float, default=defaults.theta0)
    p.add_argument("--output", help="ring CSV path (default stdout)")
    p.set_defaults(func=_cmd_rings)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
