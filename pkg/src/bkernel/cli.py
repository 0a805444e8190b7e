"""Command line driver.

Subcommands: kernel (emit the closed form), verify (compare against an
oracle), eval (evaluate the closed form at a point pair), shadow (sample the
boundary curves as CSV).  Exit codes: 0 success, 1 invalid or unbounded
matrix, 2 verification failure, 3 I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    KernelToolError,
    ParseError,
    SingularMatrix,
    UnboundedDomain,
)
from .intmat import IntMatrix2
from .kernel import eval_kernel, general_kernel
from .oracle import SERIES_CAP, DomainSpec, shadow_boundary_samples, verify

EXIT_OK = 0
EXIT_BAD_MATRIX = 1
EXIT_VERIFY_FAILED = 2
EXIT_IO = 3


def parse_matrix(text: str) -> IntMatrix2:
    """Parse 'm11,m12;m21,m22' (rows separated by ';') into a matrix."""
    rows = text.strip().split(";")
    if len(rows) != 2:
        raise ParseError(f"expected two ';'-separated rows, got {text!r}")
    entries = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise ParseError(f"expected two ','-separated entries in row {row!r}")
        for cell in cells:
            token = cell.strip().replace("−", "-")
            try:
                entries.append(int(token))
            except ValueError:
                raise ParseError(f"matrix entry {cell.strip()!r} is not an integer") from None
    return IntMatrix2(*entries)


def parse_point(text: str) -> tuple[complex, complex]:
    """Parse 're,im;re,im' into a pair of complex coordinates."""
    rows = text.strip().split(";")
    if len(rows) != 2:
        raise ParseError(f"expected two ';'-separated coordinates, got {text!r}")
    coords = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise ParseError(f"expected 're,im' in coordinate {row!r}")
        try:
            re, im = (float(c.strip().replace("−", "-")) for c in cells)
        except ValueError:
            raise ParseError(f"coordinate {row!r} is not a pair of floats") from None
        value = complex(re, im)
        if value != value or abs(value) == float("inf"):
            raise ParseError(f"coordinate {row!r} is not finite")
        coords.append(value)
    return coords[0], coords[1]


def _format_complex(value: complex) -> str:
    return f"{value.real:.15g} {value.imag:+.15g}i"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _json_text(data) -> str:
    return json.dumps(data, indent=2)


def _cmd_kernel(args) -> int:
    formula = general_kernel(parse_matrix(args.matrix))
    if args.format == "json":
        _emit(_json_text(formula.to_json_dict()), args.out)
    elif args.format == "latex":
        _emit(formula.latex(), args.out)
    else:
        _emit(formula.text(), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = DomainSpec.from_matrix(parse_matrix(args.matrix))
    kinds = ["series", "bell"] if args.oracle == "both" else [args.oracle]
    reports = [
        verify(spec, kind, n_points=args.points, tol=args.tol, seed=args.seed,
               trunc_cap=args.trunc_cap)
        for kind in kinds
    ]
    if args.format == "json":
        payload = [r.to_json_dict() for r in reports]
        _emit(_json_text(payload[0] if len(payload) == 1 else payload), args.out)
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            err = f"{r.max_rel_err:.3e}" if r.max_rel_err == r.max_rel_err and r.max_rel_err != float("inf") else "n/a"
            lines.append(
                f"{r.oracle_kind}: max relative error {err} over {len(r.points)} points"
                f" (tol {r.tol:g}, seed {r.seed}) -> {status}"
            )
        _emit("\n".join(lines), args.out)
    if args.plot:
        from . import plots

        plots.render_verification(reports[0], args.plot)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def _cmd_eval(args) -> int:
    formula = general_kernel(parse_matrix(args.matrix))
    z = parse_point(args.z)
    w = parse_point(args.w) if args.w is not None else z
    value = eval_kernel(formula, z, w)
    if args.format == "json":
        _emit(_json_text({"value": [value.real, value.imag]}), args.out)
    else:
        _emit(_format_complex(value), args.out)
    return EXIT_OK


def _cmd_shadow(args) -> int:
    matrix = parse_matrix(args.matrix)
    rows = shadow_boundary_samples(matrix, samples=args.samples)
    lines = ["r1,r2,constraint"]
    lines += [f"{r1:.12g},{r2:.12g},{c}" for r1, r2, c in rows]
    _emit("\n".join(lines), args.out)
    if args.plot:
        from . import plots

        plots.render_shadow(matrix, args.plot, samples=args.samples)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bkernel",
        description="Closed-form Bergman kernels of bounded monomial polyhedra",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--matrix", required=True,
                       help="defining matrix as 'm11,m12;m21,m22'")
        p.add_argument("--out", default=None, help="write output to this file")

    p_kernel = sub.add_parser("kernel", help="emit the closed-form kernel")
    add_common(p_kernel)
    p_kernel.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p_kernel.set_defaults(func=_cmd_kernel)

    p_verify = sub.add_parser("verify", help="check the closed form against an oracle")
    add_common(p_verify)
    p_verify.add_argument("--oracle", choices=("series", "bell", "both"), default="series")
    p_verify.add_argument("--points", type=int, default=20)
    p_verify.add_argument("--tol", type=float, default=None,
                          help="tolerance (defaults: series 1e-6, bell 1e-9)")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trunc-cap", type=int,
                          default=int(os.environ.get("BKERNEL_TRUNC_CAP", SERIES_CAP)),
                          help="series truncation cap (env BKERNEL_TRUNC_CAP overrides the default)")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--plot", default=None, help="also render an error chart to this file")
    p_verify.set_defaults(func=_cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate the kernel at a point pair")
    add_common(p_eval)
    p_eval.add_argument("--z", required=True, help="first point as 're,im;re,im'")
    p_eval.add_argument("--w", default=None, help="second point (defaults to --z)")
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.set_defaults(func=_cmd_eval)

    p_shadow = sub.add_parser("shadow", help="sample the boundary curves as CSV")
    add_common(p_shadow)
    p_shadow.add_argument("--samples", type=int, default=400,
                          help="samples per defining curve")
    p_shadow.add_argument("--plot", default=None, help="also render the shadow to this file")
    p_shadow.set_defaults(func=_cmd_shadow)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; fold that into the parse error code
        return EXIT_IO if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (SingularMatrix, UnboundedDomain) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_MATRIX
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except KernelToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_MATRIX


if __name__ == "__main__":
    sys.exit(main())
