"""Command-line front end.

Every subcommand prints one or more text documents (see ``textio``).  Exit
status: 0 on success, 1 for invalid input, 2 for a mathematical failure such
as a singular matrix or a common factor.
"""
from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from . import textio
from .bezoutian import (
    bez_hankel_oracle,
    bez_toeplitz_oracle,
    hankel_inverse_structured,
    q_transform,
    toeplitz_inverse_structured,
)
from .companion import Kind, companion, companion_power
from .exactmat import Matrix, PolyVec, mat_inverse, reverse
from .extension import ExtensionSpec, check_extension_kernel, extend_full, verify_structure_preservation
from .similarity import canonical_q, hankel_similarity_report, toeplitz_similarity_report
from .statespace import SisoSystem, controller_form, late_state, long_state, mixed_state, simulate, transformed_form
from .structured import HankelBand, ToeplitzBand, complete_band, del_hankel, del_toeplitz, kernel_del_euclid

__all__ = ["run", "main", "build_parser"]


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; here 2 means a mathematical failure
    def error(self, message: str):
        raise UsageError(message)


def _vec(value: str) -> PolyVec:
    return PolyVec(textio.parse_list(textio.read_payload(value)))


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' and '.join(missing)}")


def _band(args):
    _need(args, "band")
    vals = textio.parse_list(textio.read_payload(args.band))
    return HankelBand(vals) if args.hankel else ToeplitzBand(vals)


def _generator(args, n: int) -> Matrix:
    if args.matrix is not None:
        m = textio.parse_matrix_text(textio.read_payload(args.matrix))
    elif args.band is not None:
        m = _band(args).to_dense()
    else:
        m = Matrix.identity(n)
    return m


def _spec(args) -> ExtensionSpec:
    if args.spec is not None:
        k, l, s, t, hankel = textio.parse_document(textio.read_text_arg("@" + args.spec)).as_spec()
        return ExtensionSpec(k, l, s, t, hankel or args.hankel)
    return ExtensionSpec(args.k or 0, args.l or 0, args.s or 0, args.t or 0, args.hankel)


def _system(args) -> SisoSystem:
    if args.system is not None:
        u, v = textio.parse_document(textio.read_text_arg("@" + args.system)).as_system()
        return SisoSystem(u, v)
    _need(args, "u", "v")
    return SisoSystem(_vec(args.u), _vec(args.v))


def _file_vec(path: str | None, what: str) -> tuple:
    if path is None:
        raise UsageError(f"--{what} FILE is required")
    return textio.parse_list(textio.read_payload(path, is_file=True))


def cmd_companion(args):
    _need(args, "u", "kind")
    return [textio.matrix_doc(companion(_vec(args.u), args.kind, args.barred))]


def cmd_power(args):
    _need(args, "u", "kind", "k")
    return [textio.matrix_doc(companion_power(_vec(args.u), args.kind, args.k, args.barred))]


def cmd_bezout(args):
    _need(args, "u", "v")
    u, v = _vec(args.u), _vec(args.v)
    return [textio.matrix_doc(bez_hankel_oracle(u, v) if args.hankel else bez_toeplitz_oracle(u, v))]


def cmd_del(args):
    b = _band(args)
    return [textio.matrix_doc(del_hankel(b) if args.hankel else del_toeplitz(b))]


def cmd_kernel(args):
    b = _band(args)
    # del H w = del(HJ) w^J with the same band
    first, second = kernel_del_euclid(b.flipped() if args.hankel else b)
    if args.hankel:
        first, second = reverse(first), reverse(second)
    return [textio.vector_doc(first), textio.vector_doc(second)]


def cmd_complete(args):
    _need(args, "u", "free")
    return [textio.band_doc(complete_band(_vec(args.u), textio.parse_list(textio.read_payload(args.free))))]


def cmd_similar(args):
    _need(args, "u")
    b = _band(args)
    u = _vec(args.u)
    rep = hankel_similarity_report(b, u) if args.hankel else toeplitz_similarity_report(b, u)
    return [textio.report_doc(rep.lines() + [f"all_true = {rep.all_true}"])]


def cmd_q(args):
    _need(args, "u", "v")
    if args.canonical:
        a = textio.parse_list(textio.read_payload(args.u))
        b = textio.parse_list(textio.read_payload(args.v))
        return [textio.matrix_doc(canonical_q(a, b))]
    return [textio.matrix_doc(q_transform(_vec(args.u), _vec(args.v)))]


def cmd_invert(args):
    b = _band(args)
    if args.dense:
        return [textio.matrix_doc(mat_inverse(b.to_dense()))]
    inv = hankel_inverse_structured(b) if args.hankel else toeplitz_inverse_structured(b)
    return [textio.matrix_doc(inv)]


def cmd_extend(args):
    _need(args, "u")
    u = _vec(args.u)
    grid = extend_full(_generator(args, u.n), u, _spec(args))
    return [textio.matrix_doc(grid.matrix)]


def cmd_check_extension(args):
    _need(args, "u")
    u = _vec(args.u)
    spec = _spec(args)
    lines = [f"spec = {spec}", f"kernel = {check_extension_kernel(_generator(args, u.n), u, spec)}"]
    if args.band is not None and args.matrix is None:
        band = verify_structure_preservation(_band(args), u, spec)
        lines.append(f"structure = {'Hankel' if args.hankel else 'Toeplitz'}")
        lines.append(f"extended band a_{band.lo}..a_{band.hi} = {textio.format_vector(band.values)}")
    return [textio.report_doc(lines)]


def cmd_simulate(args):
    sys_ = _system(args)
    state = _file_vec(args.state, "state")
    inputs = _file_vec(args.inputs, "inputs")
    real = transformed_form(sys_) if args.form == "transformed" else controller_form(sys_)
    tr = simulate(real, state, inputs)
    lines = [f"state {k} = {textio.format_vector(s)}" for k, s in enumerate(tr.states)]
    lines += [f"output {k + 1} = {textio.format_vector([y])}" for k, y in enumerate(tr.outputs)]
    return [textio.report_doc(lines)]


def cmd_longstate(args):
    sys_ = _system(args)
    state = _file_vec(args.state, "state")
    inputs = _file_vec(args.inputs, "inputs")
    if args.mode == "long":
        out = long_state(sys_, state, inputs)
    elif args.mode == "late":
        out = late_state(sys_, state, inputs)
    else:
        if args.q is None:
            raise UsageError("--mode mixed needs --q")
        out = mixed_state(sys_, state, inputs, args.q)
    return [textio.vector_doc(out)]


def cmd_selftest(args):
    from .selftest import render, run_selftest

    rows, ok = run_selftest(seed=args.seed, count=args.count)
    lines = render(rows)
    lines.append(f"overall = {'PASS' if ok else 'FAIL'}")
    return [textio.report_doc(lines)], (0 if ok else 2)


COMMANDS = {
    "companion": (cmd_companion, "companion matrix of --u"),
    "power": (cmd_power, "integer power of a companion matrix"),
    "bezout": (cmd_bezout, "Toeplitz (or --hankel) Bezoutian of --u, --v"),
    "del": (cmd_del, "del of a Toeplitz/Hankel band"),
    "kernel": (cmd_kernel, "two-vector basis of ker(del)"),
    "complete": (cmd_complete, "complete a band so --u annihilates its del"),
    "similar": (cmd_similar, "three-way similarity report for --band and --u"),
    "q": (cmd_q, "Q = -B_T^T J, or --canonical observer/controller transform"),
    "invert": (cmd_invert, "structured (or --dense) inverse of a band"),
    "extend": (cmd_extend, "four-directional extension T[A:k,l;s,t]"),
    "check-extension": (cmd_check_extension, "rank/kernel and structure checks of an extension"),
    "simulate": (cmd_simulate, "step a realization of -v/u"),
    "longstate": (cmd_longstate, "closed-form state sequences"),
    "selftest": (cmd_selftest, "claim-by-claim pass/fail table"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="companionmat", description="Exact companion-matrix, Bezoutian and extension tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("--u", help="coefficients u_1..u_(n+1), comma separated, or @file")
        p.add_argument("--v", help="coefficients v_1..v_(n+1)")
        p.add_argument("--band", help="band a_(1-n)..a_(n-1), or @file")
        p.add_argument("--free", help="free band values a_(1-n)..a_0")
        p.add_argument("--matrix", help="generator matrix, rows separated by ';', or @file")
        p.add_argument("--kind", choices=[k.value for k in Kind])
        p.add_argument("--barred", action="store_true", help="use the reversed vector")
        p.add_argument("--hankel", action="store_true")
        for flag in ("k", "l", "s", "t"):
            p.add_argument(f"--{flag}", type=int)
        p.add_argument("--spec", metavar="FILE", help="spec document instead of --k/--l/--s/--t")
        p.add_argument("--system", metavar="FILE", help="system document instead of --u/--v")
        p.add_argument("--inputs", metavar="FILE")
        p.add_argument("--state", metavar="FILE")
        p.add_argument("--form", choices=("controller", "transformed"), default="controller")
        p.add_argument("--mode", choices=("long", "late", "mixed"), default="long")
        p.add_argument("--q", type=int)
        p.add_argument("--canonical", action="store_true", help="treat --u/--v as a_1..a_n and b_1..b_n")
        p.add_argument("--dense", action="store_true")
        p.add_argument("--seed", type=int, default=2024)
        p.add_argument("--count", type=int, default=25)
    return parser


_NUMERIC = re.compile(r"^-[0-9][0-9/.,;\s-]*$")


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "--free -1,0,0" as two flags; glue numeric payloads to their flag
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NUMERIC.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = _attach_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.command][0](args)
        docs, code = result if isinstance(result, tuple) else (result, 0)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    print("\n\n".join(str(d) for d in docs), file=out)
    return code


def main() -> None:
    sys.exit(run())
