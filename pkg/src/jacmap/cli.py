"""Command-line front end: ``jacmap {analyze,invert,gapset,simulate,gen,catalog}``.

Exit status: 0 on success, 1 when ``--strict`` is given and the verdict is
not Invertible (or a catalog check fails), 2 on usage and parse errors.
"""
from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stdout
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from jacmap import dynamics, oracle
from jacmap.analyzer import Certificate, NormalizedMap, SingularLinearPart, Verdict, certify, normalize
from jacmap.inverter import DEFAULT_CAP, CapExceeded, NotJacobian, formal_inverse
from jacmap.parse_io import ParseError, emit_certificate, format_gapset, format_map, format_poly
from jacmap.parse_io import parse_map, parse_poly
from jacmap.poly import PolyMap


class UsageError(Exception):
    pass


VERDICT_TEXT = {
    Verdict.INVERTIBLE: "Invertible",
    Verdict.UNDECIDED: "JacobianButUndecided",
    Verdict.NOT_JACOBIAN: "NotJacobian",
    Verdict.MALFORMED_ORDER: "MalformedOrder",
}


def _yn(flag) -> str:
    return "yes" if flag else "no"


def certificate_text(cert: Certificate) -> str:
    r, s, f, n = cert.report, cert.split, cert.flags, cert.normalized
    lines = [f"map: {format_map(cert.map)}"]
    if r.is_jacobian:
        lines.append(f"jacobian map: yes, det = {r.det_value}")
    else:
        lines.append(f"jacobian map: no, det = {format_poly(r.det_poly)}")
    lines.append(f"linear part: a = {s.a}, b = {s.b}, c = {s.c}, d = {s.d}")
    lines.append(f"p = {format_poly(s.p)}")
    lines.append(f"q = {format_poly(s.q)}")
    if n is not None:
        lines.append(f"p* = {format_poly(n.pstar)}")
        lines.append(f"q* = {format_poly(n.qstar)}")
        lines.append(f"T* = {format_poly(n.Tstar)}")
        lines.append(f"D* = {format_poly(n.Dstar)}")
    if f is not None:
        lines.append("theorem 2 conditions: " + (", ".join(f.theorem2_list()) or "none"))
        lines.append(f"homogeneous same-degree corollary: {_yn(f.corollary_homogeneous)}")
        if f.t3_i is None:
            lines.append("theorem 4 conditions: n/a (linear part is not the identity)")
        else:
            lines.append("theorem 4 conditions: " + (", ".join(f.theorem4_list()) or "none"))
    verdict = VERDICT_TEXT[cert.verdict]
    if cert.via:
        verdict += " via " + ", ".join(cert.via)
    lines.append(f"verdict: {verdict}")
    if cert.mechanism:
        lines.append(f"mechanism: {cert.mechanism}")
    for note in cert.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _source(args) -> str:
    if args.file:
        with open(args.file) as fh:
            return fh.read()
    if args.expr is None:
        raise UsageError("expected an expression argument or --file PATH")
    return args.expr


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    cert = certify(parse_map(_source(args)))
    _write(args, emit_certificate(cert) if args.format == "cert" else certificate_text(cert))
    if args.strict and cert.verdict is not Verdict.INVERTIBLE:
        return 1
    return 0


def cmd_invert(args) -> int:
    m = parse_map(_source(args))
    try:
        res = formal_inverse(m, cap=args.cap)
    except NotJacobian:
        sys.stderr.write("error: not a jacobian map\n")
        return 1
    except CapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _write(args, f"{format_map(res.inverse)}\nverified: {_yn(res.verified)}\n"
                 f"truncation degree: {res.truncation_degree_used}\n")
    return 0


def cmd_gapset(args) -> int:
    _write(args, format_gapset(parse_poly(_source(args)).gap_set()) + "\n")
    return 0


def _normalized(m: PolyMap) -> NormalizedMap:
    try:
        return normalize(m, translate=True)
    except SingularLinearPart as exc:
        raise UsageError(str(exc)) from None


def cmd_simulate(args) -> int:
    m = parse_map(_source(args))
    n = _normalized(m)
    out: List[str] = [f"normalized: {format_map(n.as_map())}"]
    if args.x0 is not None:
        traj = dynamics.integrate(n, tuple(args.x0), t_max=args.tmax, h0=args.h0, tol=args.tol)
        if args.out:
            dynamics.dump_trajectory(traj, args.out)
        out.append(f"initial point: ({args.x0[0]!r}, {args.x0[1]!r})")
        out.append(f"status: {traj.status}")
        out.append(f"converged: {_yn(traj.converged)}")
        out.append(f"final time: {traj.final_time:.6g}")
        out.append(f"final norm: {traj.final_norm:.6e}")
        sys.stdout.write("\n".join(out) + "\n")
        return 0
    lo, hi, cnt = args.grid if args.grid else dynamics.DEFAULT_GRID
    rep = dynamics.basin_scan(n, lo, hi, int(cnt), t_max=args.tmax, h0=args.h0, tol=args.tol,
                              workers=args.workers, dump_dir=args.out)
    samples = dynamics.eigen_certificate_sample(n, rep.grid)
    out.append(f"grid: {int(cnt)}x{int(cnt)} on [{lo:g}, {hi:g}]^2")
    out.append(f"converged: {rep.converged_count}/{len(rep.grid)}")
    out.append(f"max final norm: {rep.max_final_norm:.6e}")
    out.append(f"max trace(-J): {samples.max_trace!r}")
    out.append(f"min det(-J): {samples.min_det!r}")
    for pt in rep.failures:
        out.append(f"not converged: ({pt[0]!r}, {pt[1]!r})")
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _parse_step(text: str) -> oracle.Step:
    kind, sep, body = text.partition(":")
    if not sep:
        raise UsageError(f"step {text!r} must look like x:EXPR, y:EXPR or lin:a,b,c,d")
    if kind == "x":
        return oracle.AddToX(parse_poly(body))
    if kind == "y":
        return oracle.AddToY(parse_poly(body))
    if kind == "lin":
        parts = body.split(",")
        if len(parts) != 4:
            raise UsageError("lin step needs four coefficients")
        return oracle.Linear(*(Fraction(p.strip()) for p in parts))
    raise UsageError(f"unknown step kind {kind!r}")


def cmd_gen(args) -> int:
    try:
        if args.family == "meisters":
            m = oracle.gen_meisters(*(Fraction(v) for v in args.params))
        elif args.family == "elementary":
            m = oracle.gen_elementary([_parse_step(s) for s in args.steps])
        else:
            maps = oracle.random_corpus(args.count, seed=args.seed)
            _write(args, "".join(format_map(mm) + "\n" for mm in maps))
            return 0
    except (oracle.ParameterViolation, oracle.SingularLinear, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise UsageError(str(exc)) from None
    text = emit_certificate(certify(m)) if args.format == "cert" else format_map(m) + "\n"
    _write(args, text)
    return 0


def cmd_catalog(args) -> int:
    lines, failed = [], 0
    for entry in oracle.paper_catalog():
        problems = oracle.check_entry(entry)
        failed += bool(problems)
        status = "PASS" if not problems else "FAIL"
        lines.append(f"{status} {entry.name}: {format_map(entry.map)}")
        lines.extend(f"  mismatch: {p}" for p in problems)
        lines.extend(f"  note: {n}" for n in entry.notes)
    total = len(oracle.paper_catalog())
    lines.append(f"{total - failed} of {total} catalog entries reproduce")
    _write(args, "\n".join(lines) + "\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true",
                        help="exit 1 unless the verdict is Invertible")
    common.add_argument("--format", choices=("text", "cert"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output to PATH")
    common.add_argument("--file", metavar="PATH", help="read the expression from PATH")

    parser = argparse.ArgumentParser(prog="jacmap", description="Exact analysis of planar polynomial jacobian maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="certify a planar map")
    p.add_argument("expr", nargs="?")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("invert", parents=[common], help="polynomial inverse of a jacobian map")
    p.add_argument("expr", nargs="?")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, metavar="D")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("gapset", parents=[common], help="gap-set of a polynomial")
    p.add_argument("expr", nargs="?")
    p.set_defaults(func=cmd_gapset)

    p = sub.add_parser("simulate", parents=[common], help="integrate the associated ODE")
    p.add_argument("expr", nargs="?")
    p.add_argument("--x0", nargs=2, type=float, metavar=("U", "V"),
                   help="single trajectory (default: basin scan)")
    p.add_argument("--grid", nargs=3, type=float, metavar=("A", "B", "N"))
    p.add_argument("--tmax", type=float, default=dynamics.DEFAULT_T_MAX, metavar="T")
    p.add_argument("--tol", type=float, default=dynamics.DEFAULT_TOL, metavar="E")
    p.add_argument("--h0", type=float, default=dynamics.DEFAULT_H0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen", help="generate jacobian maps")
    fam = p.add_subparsers(dest="family", required=True)
    g = fam.add_parser("meisters", parents=[common])
    g.add_argument("params", nargs=7, metavar="Q", help="a b c d mu alpha beta")
    g = fam.add_parser("elementary", parents=[common])
    g.add_argument("steps", nargs="+", help="x:EXPR | y:EXPR | lin:a,b,c,d")
    g = fam.add_parser("random", parents=[common])
    g.add_argument("--count", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("catalog", parents=[common], help="check the worked-example catalog")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        sys.stderr.write(f"jacmap {args.command}: error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"jacmap {args.command}: error: {exc}\n")
        return 2


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Run the CLI in-process and capture standard output."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        status = main(list(argv))
    return status, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
