"""Command-line surface: every checker as a subcommand with TSV output.

Exit codes: 0 all checks passed, 1 a numeric check exceeded its tolerance,
2 input or usage error.  stdout carries data only (header line plus TSV
rows, 15-significant-digit scientific notation); diagnostics go to stderr.
"""

import argparse
import os
import sys

from . import critical_line, fields, inverse_theta, theta
from .errors import ConvergenceError, ZetaThetaError


def _sci(v):
    return f"{float(v):.14e}"


def _resolve_field(spec_str):
    if os.path.exists(spec_str):
        chars = fields.parse_character_file(spec_str)
        label = os.path.splitext(os.path.basename(spec_str))[0]
        return fields.make_field_abelian(chars, label=label)
    try:
        return fields.builtin_field(spec_str)
    except ZetaThetaError:
        raise ZetaThetaError(
            f"{spec_str!r} is neither a readable file nor a builtin field name")


def _parse_complex(text):
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected re or re,im, got {text!r}")


def _parse_range(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected a,b, got {text!r}")
    return float(parts[0]), float(parts[1])


def _emit(columns, rows):
    print("\t".join(columns))
    for row in rows:
        print("\t".join(row))


def _cmd_field_info(args):
    F = _resolve_field(args.field_file)
    h = fields.residue_constant(F)
    c = fields.laurent_constant(F)
    _emit(["field", "r1", "r2", "degree", "disc", "H_F", "C_F"],
          [[F.label or args.field_file, str(F.r1), str(F.r2), str(F.degree),
            str(F.disc), _sci(h), _sci(c)]])
    return 0


def _cmd_theta_check(args):
    F = _resolve_field(args.field)
    rows, failed = [], False
    for xs in args.x:
        x = _parse_complex(xs)
        if x == -1.0:
            # boundary form: Re + Im of the kernel sum against 2^r1 C_F
            rep = theta.exact_eval_check(F, tol=args.tol)
            rows.append(["exact-eval", _sci(x.real), _sci(x.imag),
                         _sci(rep.lhs.real + rep.lhs.imag), _sci(rep.rhs),
                         _sci(rep.boundary_residual), "boundary-form"])
            failed |= rep.boundary_residual > args.tol
        else:
            rep = theta.check_theta(F, args.k, x, tol=args.tol)
            rows.append(["theta", _sci(x.real), _sci(x.imag),
                         _sci(abs(rep.lhs)), _sci(abs(rep.rhs)), _sci(rep.rel_error),
                         "ok" if rep.converged else "flagged"])
            failed |= rep.rel_error > args.tol
    _emit(["check", "x_re", "x_im", "lhs", "rhs", "residual", "status"], rows)
    return 1 if failed else 0


def _cmd_inverse_check(args):
    F = _resolve_field(args.field)
    zeros = inverse_theta.load_zeros(args.zeros)
    rows, failed = [], False
    for xs in args.x:
        x = _parse_complex(xs)
        rep = inverse_theta.check_inverse_theta(F, args.k, x, zeros, tol=args.tol)
        rows.append([_sci(x.real), _sci(x.imag), _sci(abs(rep.lhs)), _sci(abs(rep.rhs)),
                     _sci(rep.rel_error), str(rep.zeros_used)])
        failed |= rep.rel_error > args.tol
    _emit(["x_re", "x_im", "lhs", "rhs", "rel_error", "zeros"], rows)
    return 1 if failed else 0


def _cmd_hlr_check(args):
    zeros = inverse_theta.load_zeros(args.zeros)
    rows, failed = [], False
    for xs in args.x:
        x = float(xs)
        rep = inverse_theta.hlr_check(x, zeros, tol=args.tol, n_smooth=args.n_smooth)
        rows.append([_sci(x), _sci(rep.lhs.real), _sci(rep.rhs.real),
                     _sci(rep.residual), str(rep.zeros_used)])
        failed |= rep.residual > args.tol
    _emit(["x", "lhs", "rhs", "residual", "zeros"], rows)
    return 1 if failed else 0


def _cmd_dgv_check(args):
    F = _resolve_field(args.field)
    zeros = inverse_theta.load_zeros(args.zeros)
    rows, failed = [], False
    for xs in args.x:
        x = float(xs)
        rep = inverse_theta.dgv_check(F, x, zeros, tol=args.tol)
        rows.append([_sci(x), _sci(abs(rep.lhs)), _sci(abs(rep.rhs)),
                     _sci(rep.residual), str(rep.zeros_used)])
        failed |= rep.residual > args.tol
    _emit(["x", "lhs", "rhs", "residual", "zeros"], rows)
    return 1 if failed else 0


def _cmd_zeros_scan(args):
    F = _resolve_field(args.field)
    lo, hi = _parse_range(args.range)
    result = critical_line.scan_zeros(F, lo, hi, args.step)
    rows = [[f"{g:.12f}", _sci(r)] for g, r in zip(result.refined, result.residuals)]
    _emit(["gamma", "xi_residual"], rows)
    if args.emit:
        inverse_theta.write_zeros(args.emit, result.refined)
        print(f"wrote {len(result.refined)} zeros to {args.emit}", file=sys.stderr)
    return 0


def _cmd_phi_check(args):
    F = _resolve_field(args.field)
    rows, failed = [], False
    for zs in args.z:
        z = _parse_complex(zs)
        rep = critical_line.phi_identity_check(F, z, tol=args.tol)
        rows.append([_sci(z.real), _sci(z.imag), _sci(rep.integral.real),
                     _sci(rep.theta_side.real), _sci(rep.residual)])
        failed |= rep.residual > args.tol
    _emit(["z_re", "z_im", "integral", "theta_side", "residual"], rows)
    return 1 if failed else 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="zetatheta",
        description="Numerical checks of theta relations and critical-line zeros "
                    "for Dedekind zeta functions of abelian number fields.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("field-info", help="signature, discriminant and constants of a field")
    q.add_argument("field_file", help="character file path or builtin name (Q, sqrt5, cubic7, zeta5, gauss)")
    q.set_defaults(func=_cmd_field_info)

    q = sub.add_parser("theta-check", help="forward theta relation W(1/x) = sqrt(x) W(x)")
    q.add_argument("--field", required=True)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--x", action="append", required=True, metavar="RE[,IM]",
                   help="evaluation point; -1 routes to the exact boundary evaluation")
    q.add_argument("--tol", type=float, default=1e-8)
    q.set_defaults(func=_cmd_theta_check)

    q = sub.add_parser("inverse-check", help="inverse theta relation U(1/x) = sqrt(x) U(x)")
    q.add_argument("--field", required=True)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--x", action="append", required=True, metavar="RE[,IM]")
    q.add_argument("--zeros", required=True, help="zeros file (see zeros-scan --emit)")
    q.add_argument("--tol", type=float, default=1e-5)
    q.set_defaults(func=_cmd_inverse_check)

    q = sub.add_parser("hlr-check", help="Hardy-Littlewood-Ramanujan exponential identity")
    q.add_argument("--x", action="append", required=True)
    q.add_argument("--zeros", required=True)
    q.add_argument("--tol", type=float, default=1e-4)
    q.add_argument("--n-smooth", type=int, default=1_000_000)
    q.set_defaults(func=_cmd_hlr_check)

    q = sub.add_parser("dgv-check", help="Dixit-Gupta-Vatwani identity (Q and quadratic fields)")
    q.add_argument("--field", required=True)
    q.add_argument("--x", action="append", required=True)
    q.add_argument("--zeros", required=True)
    q.add_argument("--tol", type=float, default=1e-5)
    q.set_defaults(func=_cmd_dgv_check)

    q = sub.add_parser("zeros-scan", help="sign-change scan of Xi_F on the critical line")
    q.add_argument("--field", required=True)
    q.add_argument("--range", required=True, metavar="A,B")
    q.add_argument("--step", type=float, default=0.02)
    q.add_argument("--emit", help="write refined zeros to this file")
    q.set_defaults(func=_cmd_zeros_scan)

    q = sub.add_parser("phi-check", help="Phi integral identity between Xi and the theta side")
    q.add_argument("--field", required=True)
    q.add_argument("--z", action="append", required=True, metavar="RE[,IM]")
    q.add_argument("--tol", type=float, default=1e-6)
    q.set_defaults(func=_cmd_phi_check)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1
    except (ZetaThetaError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
