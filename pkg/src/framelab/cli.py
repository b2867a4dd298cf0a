"""Command-line front end: ``framelab <command> [options]``.

Exit codes: 0 on success, 1 when a verification finds a genuine
(outside-band) counterexample, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys

import numpy as np

from . import __version__
from .errors import FramelabError
from .hilbert_frames import DEFAULT_TOL, random_tight_frame
from .module_frames import ModuleFamily, classify_module_sampled
from .scalar_linalg import psd_det
from .translates import (Case, GridSpec, TranslateInstance, classify, family_from_json,
                         failure_measure, interpolate_pe, intersection_membership,
                         operator_blocks, random_family, random_instance, slice_grid,
                         verify_biconditional)
from .translates.verify import DEFAULT_BAND, DEFAULT_RADIUS

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


def _ints(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _summands(text: str) -> tuple:
    """``"1x2,2x2"`` -> ``((1, 2), (2, 2))``."""
    out = []
    for part in text.split(","):
        m, k = part.lower().split("x")
        out.append((int(m), int(k)))
    return tuple(out)


def _coeffs(text: str, field: str) -> np.ndarray:
    values = [complex(x.strip().replace(" ", "")) for x in text.split(",")]
    if field == "R":
        if any(v.imag for v in values):
            raise InvalidInput("complex coefficients given for a real instance")
        return np.array([v.real for v in values])
    return np.array(values)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_instance(args) -> TranslateInstance:
    return TranslateInstance.from_json(_load_json(args.instance), tol=args.tol)


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    cfg["version"] = __version__
    return cfg


def _emit(args, result, text: str | None = None) -> None:
    if text is None:
        report = {"command": args.command, "config": _config(args), "result": result}
        if not args.deterministic:
            report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(family, tol: float) -> dict:
    info = classify(family, tol).to_json()
    info["dets"] = [psd_det(b) for b in operator_blocks(family)]
    return info


def cmd_gen(args) -> int:
    case = Case(args.case)
    dims = dict(n=args.n, signature=args.signature, summands=args.summands, field=args.field)
    if args.l is not None:
        inst = random_instance(case, args.seed, args.l, args.N, corollary=args.corollary,
                               random_weights=args.random_weights, **dims)
        families = {f"U({i})": f for i, f in enumerate(inst.U)}
        families.update({f"A({i})": f for i, f in enumerate(inst.A)})
        payload = inst.to_json()
    else:
        if args.tight:
            if case is not Case.HILBERT:
                raise InvalidInput("--tight is only available for hilbert families")
            fam = random_tight_frame(args.seed, args.N, args.n, args.a, args.field)
        else:
            fam = random_family(case, args.seed, args.N, frame=args.frame, **dims)
        families = {"family": fam}
        payload = fam.to_json()
    payload["generated_by"] = {"command": "gen", "config": _config(args)}
    for name, fam in families.items():
        info = classify(fam, args.tol)
        print(f"{name}: {info.kind} A={info.lower:.6g} B={info.upper:.6g} "
              f"margin={info.margin:.3g}", file=sys.stderr)
    _emit(args, None, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    family = family_from_json(_load_json(args.family))
    result = _summary(family, args.tol)
    if isinstance(family, ModuleFamily) and args.probes:
        result["sampled"] = classify_module_sampled(
            family, args.probes, args.tol, args.seed).to_json()
        result["note"] = ("module frame criterion checked empirically; "
                          "evidence, not proof")
    _emit(args, result)
    return EXIT_OK


def cmd_membership(args) -> int:
    inst = _load_instance(args)
    c = _coeffs(args.c, inst.field)
    _emit(args, intersection_membership(inst, c, args.tol).to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args)
    rep = verify_biconditional(inst, args.samples, args.seed, args.tol, args.band,
                               args.radius, args.distribution)
    result = rep.to_json()
    if inst.case is Case.MODULE:
        result["note"] = "conjectural case: empirical evidence, not proof"
    _emit(args, result)
    return EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def cmd_measure(args) -> int:
    inst = _load_instance(args)
    est = failure_measure(inst, args.radius, args.samples, args.seed, args.tol,
                          args.band, args.distribution)
    result = est.to_json()
    if inst.case is Case.MODULE:
        result["note"] = "conjectural case: empirical evidence, not proof"
    _emit(args, result)
    if args.max_fraction is not None and est.fraction > args.max_fraction:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_slice(args) -> int:
    inst = _load_instance(args)
    axes = _ints(args.axes)
    if len(axes) != 2:
        raise InvalidInput("--axes takes two indices, e.g. 0,1")
    c0 = _coeffs(args.c0, inst.field) if args.c0 else None
    grid_j = GridSpec.parse(args.grid_j) if args.grid_j else None
    grid = slice_grid(inst, axes, GridSpec.parse(args.grid), grid_j, c0, args.tol)
    if args.format == "csv":
        _emit(args, None, grid.to_csv())
    else:
        _emit(args, grid.to_json())
    return EXIT_OK


def cmd_interp(args) -> int:
    inst = _load_instance(args)
    blocks = range(len(inst.block_dims)) if args.block is None else [args.block]
    result = {"e": args.e, "blocks": {}}
    for b in blocks:
        poly = interpolate_pe(inst, args.e, b, extra_degree=args.extra_degree,
                              seed=args.seed)
        result["blocks"][str(b)] = poly.to_json(cutoff=args.cutoff)
    _emit(args, result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--out", default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="report format (default: csv for slice, json otherwise)")
    common.add_argument("--deterministic", action="store_true",
                        help="omit the timestamp so reports are byte-reproducible")
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, default=None,
                          help="default 10000 for verify, 100000 for measure")
    sampling.add_argument("--band", type=float, default=DEFAULT_BAND)
    sampling.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    sampling.add_argument("--distribution", choices=("uniform", "gaussian"),
                          default="uniform")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a family or instance")
    p.add_argument("--case", choices=[c.value for c in Case], default="hilbert")
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--signature", type=_ints, help="block sizes, e.g. 1,2")
    p.add_argument("--summands", type=_summands, help="shapes, e.g. 1x2,2x2")
    p.add_argument("--field", choices=("R", "C"), default="R")
    p.add_argument("--frame", action="store_true")
    p.add_argument("--tight", action="store_true")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--corollary", action="store_true", help="A(i) = 2 U(i), U(i) frames")
    p.add_argument("--random-weights", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("classify", parents=[common], help="classify a family file")
    p.add_argument("family")
    p.add_argument("--probes", type=int, default=100,
                   help="random probes for module families (0 disables)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("membership", parents=[common], help="test one coefficient tuple")
    p.add_argument("instance")
    p.add_argument("--c", required=True, help="comma-separated coefficients")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("verify", parents=[common, sampling],
                       help="Monte Carlo check of the membership biconditional")
    p.add_argument("instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("measure", parents=[common, sampling],
                       help="Monte Carlo estimate of the failure set's measure")
    p.add_argument("instance")
    p.add_argument("--max-fraction", type=float, default=None,
                   help="exit 1 if the estimated fraction exceeds this")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("slice", parents=[common], help="2-D grid through coefficient space")
    p.add_argument("instance")
    p.add_argument("--axes", default="0,1")
    p.add_argument("--grid", default="-2:2:41", help="lo:hi:num")
    p.add_argument("--grid-j", default=None, help="separate grid for the second axis")
    p.add_argument("--c0", default=None, help="frozen values of the other coordinates")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("interp", parents=[common], help="monomial coefficients of P_e")
    p.add_argument("instance")
    p.add_argument("--e", type=int, default=0)
    p.add_argument("--block", type=int, default=None)
    p.add_argument("--extra-degree", type=int, default=0)
    p.add_argument("--cutoff", type=float, default=0.0,
                   help="drop terms whose |coefficient| is at most this")
    p.set_defaults(func=cmd_interp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "slice" else "json"
    if getattr(args, "samples", 0) is None:
        args.samples = 100_000 if args.command == "measure" else 10_000
    try:
        return args.func(args)
    except (FramelabError, InvalidInput, ValueError, KeyError, IndexError, TypeError,
            OSError, json.JSONDecodeError) as exc:
        print(f"framelab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
