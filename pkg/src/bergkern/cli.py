"""Command line interface: ``bergkern <pw|annulus|circular|scan|check|sweep> ...``.

Tables go to stdout as CSV unless ``--out`` is given; check suites emit a
JSON report.  Exit status is 0 on success, 1 when an asserted check fails
and 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import annulus, checks, circular, elliptic, levi
from .errors import BergkernError


def _fmt(x) -> str:
    return format(float(x), ".17g")


def parse_complex(text: str) -> complex:
    """``RE`` or ``RE,IM``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def parse_point(text: str) -> np.ndarray:
    """Semicolon-separated coordinates, each ``RE`` or ``RE,IM``."""
    return np.array([parse_complex(c) for c in text.split(";")], dtype=complex)


def parse_ints(text: str) -> list:
    return [int(t) for t in text.split(",")]


def _complex_arg(args, name):
    val = getattr(args, name)
    abs_val = getattr(args, f"{name}_abs", None)
    if val is not None and abs_val is not None:
        raise BergkernError(f"give only one of --{name} and --{name}-abs")
    if abs_val is not None:
        return complex(abs_val)
    if val is None:
        raise BergkernError(f"--{name} or --{name}-abs is required")
    return val


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BERGKERN_THREADS", "1")))
    except ValueError:
        return 1


# -- commands -------------------------------------------------------------------

def cmd_pw(args):
    lat = elliptic.RectLattice.from_zeta(args.zeta) if args.zeta is not None \
        else elliptic.RectLattice(args.omega1)
    if args.func == "quasi":
        qp = elliptic.quasi_periods(lat)
        return _csv(["omega1", "eta", "c"], [[_fmt(lat.omega1), _fmt(qp.eta), _fmt(qp.c)]])
    fn = {"wp": elliptic.wp, "wp-prime": elliptic.wp_prime, "wzeta": elliptic.wzeta}[args.func]
    val = complex(fn(args.u, lat))
    return _csv(["omega1", "u_re", "u_im", "function", "value_re", "value_im"],
                [[_fmt(lat.omega1), _fmt(args.u.real), _fmt(args.u.imag), args.func,
                  _fmt(val.real), _fmt(val.imag)]])


def cmd_annulus(args):
    zeta, z = _complex_arg(args, "zeta"), _complex_arg(args, "z")
    p = annulus.AnnulusPoint(zeta, z)
    if args.what == "kernel":
        if args.method == "closed":
            kv = annulus.kernel_closed(p)
        else:
            kv = annulus.kernel_series(abs(zeta), abs(z), args.eps)
        return _csv(["zeta_abs", "z_abs", "method", "value"],
                    [[_fmt(abs(zeta)), _fmt(abs(z)), kv.method, _fmt(kv.value)]])
    if args.what == "levi":
        formula = annulus.levi_zeta_component(p)
        fd_c = annulus.levi_zeta_fd(p, args.h, "closed")
        fd_s = annulus.levi_zeta_fd(p, args.h, "series")
        return _csv(["zeta_abs", "z_abs", "formula", "fd_closed", "fd_series"],
                    [[_fmt(abs(zeta)), _fmt(abs(z)), _fmt(formula), _fmt(fd_c), _fmt(fd_s)]])
    lhs, rhs, res = annulus.remark_identity_residual(p, args.h)
    return _csv(["zeta_abs", "z_abs", "lhs", "rhs", "residual"],
                [[_fmt(abs(zeta)), _fmt(abs(z)), _fmt(lhs), _fmt(rhs), _fmt(res)]])


def cmd_circular(args):
    basis = circular.CircularDomainBasis(args.domain, args.dim)
    rho = circular.radius_function(args.rho, args.m, args.a)
    zeta = parse_point(args.zeta)
    if args.what == "u0":
        return _csv(["rho", "u0"], [[_fmt(rho(zeta)), _fmt(circular.u0_eval(rho, zeta, args.dim))]])
    z = parse_point(args.z)
    if args.what == "partial":
        val = circular.truncated_log_kernel(basis, rho, zeta, z, args.k)
        return _csv(["k", "log_partial_sum"], [[args.k, _fmt(val)]])
    tk = circular.truncated_kernel(basis, rho, zeta, z, args.eps)
    return _csv(["domain", "dim", "rho", "value", "degree_cutoff", "tail_bound"],
                [[args.domain, args.dim, rho.id, _fmt(tk.value), tk.k, _fmt(tk.tail_bound)]])


def cmd_scan(args):
    f, sampler = checks.scan_setup(args.domain, args.dim, args.rho, args.m,
                                   z_max=args.z_max, zeta_min=args.zeta_min,
                                   zeta_max=args.zeta_max)
    scan = levi.strict_psh_scan if args.strict else levi.psh_scan
    rep = scan(f, sampler, args.h, args.tol, args.seed, args.grid, _threads())
    _emit(rep.to_csv(), args.out)
    sys.stderr.write(f"samples={rep.sample_count} global_min={_fmt(rep.global_min)} "
                     f"flagged={len(rep.flagged)} errors={len(rep.errors)}\n")
    return 1 if rep.flagged or rep.errors else 0


def cmd_check(args):
    suite = checks.SUITES[args.suite]
    kwargs = {}
    if args.suite == "identities" and args.omega1:
        kwargs["omega1s"] = args.omega1
    if args.suite in ("theorem11", "remark21"):
        kwargs.update(seed=args.seed, count=args.grid, workers=_threads())
        if args.h is not None:
            kwargs["h"] = args.h
    if args.suite == "theorem11" and args.tol is not None:
        kwargs["tol"] = args.tol
    if args.suite in ("theorem12", "remark32") and args.h is not None:
        kwargs["h"] = args.h
    if args.suite == "kernels" and args.eps is not None:
        kwargs["eps"] = args.eps
    rep = suite(**kwargs)
    _emit(rep.to_json(), args.out)
    return rep.exit_status


def cmd_sweep(args):
    zeta = _complex_arg(args, "zeta")
    prof = annulus.boundary_decay_profile(zeta, args.approach, args.ks)
    rows = [[_fmt(r.z_abs), _fmt(r.u), _fmt(r.levi_value), _fmt(r.ratio_to_previous)]
            for r in prof.rows]
    _emit(_csv(["z_abs", "u", "levi_value", "ratio_to_previous"], rows), args.out)
    return 0


# -- parser -----------------------------------------------------------------------

def _common(p, eps=1e-14):
    p.add_argument("--eps", type=float, default=eps, help="series truncation tolerance")
    p.add_argument("--h", type=float, default=None, help="finite-difference step")
    p.add_argument("--tol", type=float, default=None, help="check tolerance")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default=None, help="output file (stdout when absent)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergkern", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pw", help="Weierstrass functions on the lattice (2*omega1, 2*pi*i)")
    p.add_argument("func", choices=["wp", "wp-prime", "wzeta", "quasi"])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--omega1", type=float)
    g.add_argument("--zeta", type=parse_complex, help="lattice from omega1 = -log|zeta|")
    p.add_argument("--u", type=parse_complex, default=complex(0.5))
    _common(p)
    p.set_defaults(run=cmd_pw)

    p = sub.add_parser("annulus", help="planar annulus {|zeta| < |z| < 1}")
    p.add_argument("what", choices=["kernel", "levi", "remark"])
    p.add_argument("--zeta", type=parse_complex)
    p.add_argument("--zeta-abs", type=float)
    p.add_argument("--z", type=parse_complex)
    p.add_argument("--z-abs", type=float)
    p.add_argument("--method", choices=["closed", "series"], default="closed")
    _common(p)
    p.set_defaults(run=cmd_annulus)

    p = sub.add_parser("circular", help="series kernel of Omega minus rho(zeta)*Omega")
    p.add_argument("what", choices=["kernel", "partial", "u0"])
    p.add_argument("--domain", choices=list(circular.KINDS), default="ball")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--rho", choices=list(circular.RADIUS_CATALOG), default="abs")
    p.add_argument("--m", type=int, default=1, help="dimension of the parameter domain")
    p.add_argument("--a", type=float, default=1.0, help="exponent for abs-power")
    p.add_argument("--zeta", required=True, help="point of C^m, e.g. '0.3,0.1'")
    p.add_argument("--z", default="0", help="point of C^n, e.g. '0.1,0.2;0.3'")
    p.add_argument("--k", type=int, default=10, help="degree cutoff for 'partial'")
    _common(p)
    p.set_defaults(run=cmd_circular)

    p = sub.add_parser("scan", help="sampled Levi-form scan of log K on U x Omega")
    p.add_argument("--domain", choices=list(circular.KINDS), default="ball")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--rho", choices=list(circular.RADIUS_CATALOG), default="abs")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--grid", type=int, default=100, help="number of samples")
    p.add_argument("--strict", action="store_true", help="flag non-positive eigenvalues")
    p.add_argument("--z-max", type=float, default=0.9)
    p.add_argument("--zeta-min", type=float, default=None)
    p.add_argument("--zeta-max", type=float, default=None)
    _common(p)
    p.set_defaults(run=cmd_scan)

    p = sub.add_parser("check", help="run a named check suite and write a JSON report")
    p.add_argument("--suite", choices=list(checks.SUITES), required=True)
    p.add_argument("--omega1", type=float, action="append",
                   help="lattice parameter for 'identities' (repeatable)")
    p.add_argument("--grid", type=int, default=100, help="samples for scan suites")
    _common(p, eps=None)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("sweep", help="zeta-Levi formula along a boundary approach")
    p.add_argument("--zeta", type=parse_complex)
    p.add_argument("--zeta-abs", type=float)
    p.add_argument("--approach", choices=["outer", "inner"], default="outer")
    p.add_argument("--ks", type=parse_ints, default=[1, 2, 3, 4])
    _common(p)
    p.set_defaults(run=cmd_sweep)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", None) is None and args.command == "scan":
        args.tol = levi.DEFAULT_TOL
    if getattr(args, "h", None) is None and args.command == "scan":
        args.h = levi.DEFAULT_H
    try:
        result = args.run(args)
    except (BergkernError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"bergkern: error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 2
    if isinstance(result, str):
        _emit(result, getattr(args, "out", None))
        return 0
    return result


if __name__ == "__main__":
    sys.exit(main())
