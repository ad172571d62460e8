"""Command-line front end: ``sgrover {spectrum,verify,walk,bloch}``.

Exit codes: 0 success, 2 invalid input or complex, 3 parameter out of
range, 4 unmet eigenfunction precondition, 5 numeric failure (including a
failed check).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import bloch, walk
from .checks import Tolerances, run_suite
from .complex import GENERATORS, generate_complex, read_complex
from .errors import ComplexError, NumericError, SGroverError
from .operators import build_cochain_ops, build_discriminant, build_edge_ops, build_g_walk
from .spectra import eig

OPS = ("disc-up", "disc-down", "lap-up", "lap-down", "lap",
       "unitary-up", "unitary-down", "g-walk", "dg")
KINDS = ("up", "down", "ordered", "ordered-fpp1")


def _positive(x: str) -> float:
    v = float(x)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgrover", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_complex=True):
        if needs_complex:
            src = sp.add_mutually_exclusive_group(required=True)
            src.add_argument("--input", help="facet file")
            src.add_argument("--gen", choices=GENERATORS, help="named generator")
            sp.add_argument("--n", type=int)
            sp.add_argument("--k", type=int)
            sp.add_argument("--m", type=int)
            sp.add_argument("--N", type=int)
            sp.add_argument("--allow-invalid", action="store_true",
                            help="skip the purity / strong connectivity check")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", help="write here instead of stdout")
        sp.add_argument("--tol-cluster", type=_positive, default=1e-8)
        sp.add_argument("--tol-identity", type=_positive, default=1e-10)
        sp.add_argument("--tol-construction", type=_positive, default=1e-12)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("spectrum", help="eigenvalues of one operator")
    common(sp)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--op", choices=OPS, required=True)
    sp.add_argument("--basis", choices=("full", "reduced"), default="reduced",
                    help="discriminants only; cochain operators are always reduced")

    sp = sub.add_parser("verify", help="run every identity check")
    common(sp)

    sp = sub.add_parser("walk", help="evolve a stationary state")
    common(sp)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--f", choices=("constant", "random", "auto"), default=None,
                    help="initial cochain (default: constant, or auto for ordered-fpp1)")
    sp.add_argument("--steps", type=int, default=20)

    sp = sub.add_parser("bloch", help="cylinder band structure")
    common(sp, needs_complex=False)
    sp.add_argument("--dq", type=int, required=True)
    sp.add_argument("--samples", type=int, default=360)
    sp.add_argument("--quotient", type=int, default=None)
    return p


def load_complex(args):
    if args.input:
        try:
            return read_complex(args.input)
        except OSError as exc:
            raise ComplexError(f"cannot read {args.input}: {exc}") from exc
    params = {k: getattr(args, k) for k in ("n", "k", "m", "N") if getattr(args, k) is not None}
    return generate_complex(args.gen, **params)


def _tolerances(args) -> Tolerances:
    return Tolerances(args.tol_cluster, args.tol_identity, args.tol_construction)


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def operator_spectrum(c, q: int, op: str, basis: str = "full", tol: float = 1e-8,
                      allow_invalid: bool = False):
    """Eigen-report for one CLI operator name."""
    if op in ("disc-up", "disc-down"):
        M = build_discriminant(c, q, op[5:], basis, allow_invalid=allow_invalid)
        return eig(M, "hermitian", tol)
    if op in ("lap-up", "lap-down", "lap"):
        ops = build_cochain_ops(c, q, allow_invalid=allow_invalid)
        M = {"lap-up": ops.L_up, "lap-down": ops.L_down, "lap": ops.L}[op]
        return eig(M, "hermitian", tol, basis="oriented-reduced")
    if op in ("unitary-up", "unitary-down"):
        return eig(build_edge_ops(c, q, op[8:], allow_invalid).U, "unitary", tol)
    g = build_g_walk(c, q, allow_invalid)
    if op == "g-walk":
        return eig(g.G, "unitary", tol)
    return eig(g.discriminant(), "hermitian", tol)


def cmd_spectrum(args) -> int:
    c = load_complex(args)
    rep = operator_spectrum(c, args.q, args.op, args.basis, args.tol_cluster, args.allow_invalid)
    if args.format == "json":
        out = rep.to_dict()
        out.update({"complex": c.name, "q": args.q, "operator": args.op})
        _emit(args, _dumps(out))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "re", "im"])
        for i, z in enumerate(rep.eigenvalues):
            w.writerow([i, repr(float(np.real(z))), repr(float(np.imag(z)))])
        _emit(args, buf.getvalue())
    return 0


def cmd_verify(args) -> int:
    c = load_complex(args)
    rep = run_suite(c, args.seed, _tolerances(args), args.allow_invalid)
    if args.format == "json":
        _emit(args, _dumps(rep.to_dict()))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "skipped", "residual"])
        for r in rep.results:
            w.writerow([r.name, r.passed, r.skipped, repr(r.residual)])
        _emit(args, buf.getvalue())
    return 0 if rep.passed else NumericError.exit_code


def cmd_walk(args) -> int:
    c = load_complex(args)
    choice = args.f or ("auto" if args.kind == "ordered-fpp1" else "constant")
    if args.kind == "ordered-fpp1":
        if choice != "auto":
            raise ComplexError("ordered-fpp1 takes --f auto (an eigenvalue-1 cochain)")
        f = None
    elif choice == "constant":
        f = walk.constant_symmetric(c, args.q)
    elif choice == "random":
        f = walk.random_symmetric(c, args.q, np.random.default_rng(args.seed))
    else:
        raise ComplexError("--f auto is only meaningful for ordered-fpp1")
    if args.steps < 0:
        raise ComplexError("--steps must be non-negative")
    rep = walk.stationarity_report(c, args.q, args.kind, f, args.steps,
                                   args.tol_identity, args.allow_invalid)
    if args.format == "json":
        out = rep.to_dict()
        out["complex"] = c.name
        _emit(args, _dumps(out))
    else:
        _emit(args, rep.table.to_csv())
    return 0 if rep.passed else NumericError.exit_code


def cmd_bloch(args) -> int:
    rep = bloch.band(args.dq, args.samples)
    resid = bloch.closed_form_residual(args.dq, args.samples)
    quotient = None
    if args.quotient is not None:
        quotient = bloch.finite_quotient_check(args.quotient, args.dq, args.tol_cluster)
    ok = resid < args.tol_identity and quotient is not False
    if args.format == "json":
        out = rep.to_dict()
        out.update({"closed_form_residual": resid, "closed_form_passed": resid < args.tol_identity,
                    "quotient_N": args.quotient, "quotient_passed": quotient, "passed": ok})
        _emit(args, _dumps(out))
    else:
        _emit(args, rep.to_csv())
    return 0 if ok else NumericError.exit_code


COMMANDS = {"spectrum": cmd_spectrum, "verify": cmd_verify, "walk": cmd_walk, "bloch": cmd_bloch}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SGroverError as exc:
        print(f"sgrover: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"sgrover: numeric failure: {exc}", file=sys.stderr)
        return NumericError.exit_code


if __name__ == "__main__":
    sys.exit(main())
