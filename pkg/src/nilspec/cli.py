"""Command-line front end: ``nilspec <command> ...``.

Exit status 0 on success, 1 on a domain error (bad file, bad parameters,
non-automorphism), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr
from dataclasses import dataclass

from . import __version__
from .canonical import (
    CanonicalError,
    I32Intermediate,
    bqf_lambda_equivalent,
    classify_in1,
    reduce_i32,
)
from .families import (
    ParameterError,
    aut_even,
    aut_i32,
    aut_i42,
    aut_odd,
    make_abelian,
    make_Gd,
    make_Gd_times_Z,
    make_I32,
    make_I42,
    make_path7,
)
from .group import GroupError, invariants
from .intlin import ExtNat, IntMatrix, InvalidPolynomial, RankError, SkewError
from .io import (
    FormatError,
    aut_to_json,
    dumps,
    encode_int,
    group_to_json,
    load_aut,
    load_group,
    loads_json,
    matrix_from_json,
    spectrum_to_json,
)
from .morphism import MorphismError, check_endomorphism, is_automorphism
from .oracle import (
    BudgetError,
    FiniteQuotient,
    ModulusError,
    abelian_closed_form,
    abelian_twisted_classes,
    finite_quotient_twisted_classes,
    stabilization_report,
)
from .reidemeister import (
    is_hyperbolic,
    reidemeister_number,
    reidemeister_via_center_series,
    spectrum_search,
)

DOMAIN_ERRORS = (
    FormatError, GroupError, MorphismError, ParameterError, CanonicalError, BudgetError,
    ModulusError, RankError, SkewError, InvalidPolynomial, ArithmeticError, OSError,
)


class DomainError(Exception):
    pass


@dataclass
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str = ""


def ext_json(x: ExtNat):
    return "inf" if x.is_infinite else encode_int(x.value)


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def form(text: str) -> tuple[int, int, int]:
    vals = int_list(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"a form needs three coefficients a,b,c, got {text!r}")
    return tuple(vals)


# --- input helpers ------------------------------------------------------------

def _read(path: str | None, stdin) -> str:
    if path is None or path == "-":
        return stdin.read()
    with open(path) as fh:
        return fh.read()


def _group_and_aut(args, stdin):
    if args.group in (None, "-") and args.aut == "-":
        raise DomainError("--group and --aut cannot both come from stdin")
    G = load_group(_read(args.group, stdin))
    return G, load_aut(_read(args.aut, stdin), G)


def _matrix_arg(text: str) -> IntMatrix:
    """Either JSON rows or rows separated by ';' with comma-separated entries."""
    text = text.strip()
    if text.startswith("["):
        v = loads_json(text, "--matrix")
        if not isinstance(v, list) or not v:
            raise FormatError("--matrix", "expected a nonempty list of rows")
        k = len(v)
        return matrix_from_json(v, "--matrix", (k, k))
    rows = [r for r in text.split(";") if r.strip()]
    try:
        data = [[int(x) for x in r.split(",")] for r in rows]
    except ValueError:
        raise FormatError("--matrix", f"not an integer matrix: {text!r}") from None
    k = len(data)
    if k == 0 or any(len(r) != k for r in data):
        raise FormatError("--matrix", "expected a square matrix")
    return IntMatrix.from_rows(data)


# --- commands -------------------------------------------------------------------

def cmd_group_info(args, stdin) -> str:
    G = load_group(_read(args.group, stdin))
    inv = invariants(G)
    data = {
        "n": G.n,
        "m": G.m,
        "hirsch": inv.hirsch,
        "class": [inv.class_n, inv.class_m],
        "normalized": G.is_normalized(),
        "gamma2_rank": inv.gamma2_rank,
        "divisors": [encode_int(d) for d in inv.divisors],
        "center_rank": inv.center_rank,
        "delta": inv.delta,
        "lambda": inv.lam,
    }
    if args.json:
        return dumps(data)
    lines = [
        f"hirsch {inv.hirsch}",
        f"class ({inv.class_n},{inv.class_m})",
        f"normalized {'yes' if data['normalized'] else 'no'}",
        f"divisors {' '.join(str(d) for d in inv.divisors) or '-'}",
        f"center_rank {inv.center_rank}",
    ]
    if inv.delta is not None:
        lines.append(f"delta {inv.delta}")
        lines.append(f"lambda {inv.lam}")
    return "\n".join(lines) + "\n"


def cmd_aut_check(args, stdin) -> str:
    G, e = _group_and_aut(args, stdin)
    endo = check_endomorphism(G, e)
    G.require_normalized()
    aut = endo and is_automorphism(G, e)
    if args.json:
        return dumps({"endomorphism": endo, "automorphism": aut})
    return f"endomorphism {'yes' if endo else 'no'}\nautomorphism {'yes' if aut else 'no'}\n"


def cmd_reid(args, stdin) -> str:
    G, e = _group_and_aut(args, stdin)
    res = reidemeister_number(G, e)
    if args.json:
        data = {
            "R": ext_json(res.total),
            "r_phi1": ext_json(res.r_phi1),
            "r_phi2": ext_json(res.r_phi2),
            "hyperbolic": is_hyperbolic(G, e),
        }
        if args.check:
            data["center_series"] = ext_json(reidemeister_via_center_series(G, e))
        return dumps(data)
    out = f"{res.total}\n"
    if args.check:
        alt = reidemeister_via_center_series(G, e)
        out += f"center_series {alt}\n"
    return out


def cmd_spectrum(args, stdin) -> str:
    G = load_group(_read(args.group, stdin))
    if args.height < 1:
        raise DomainError("--height must be positive")
    if args.limit is not None and args.limit < 1:
        raise DomainError("--limit must be positive")
    sample = spectrum_search(G, args.height, limit=args.limit, threads=args.threads, progress=args.progress)
    if args.json:
        return dumps(spectrum_to_json(sample))
    vals = " ".join(str(v) for v in sample.finite_values) or "(none)"
    return (
        f"height {sample.height}\n"
        f"finite_values {vals}\n"
        f"candidates_scanned {sample.candidates_scanned}\n"
        f"automorphisms_found {sample.automorphisms_found}\n"
        f"truncated {'yes' if sample.truncated else 'no'}\n"
    )


FAMILY_ARITY = {"Gd": None, "GdTimesZ": None, "I32": 3, "I42": 5, "Path7": 0, "Abelian": 1}


def cmd_family_make(args, stdin) -> str:
    p = args.params
    want = FAMILY_ARITY[args.kind]
    if want is not None and len(p) != want:
        raise DomainError(f"params: {args.kind} takes {want} integers, got {len(p)}")
    if args.kind == "Gd":
        G = make_Gd(*p)
    elif args.kind == "GdTimesZ":
        G = make_Gd_times_Z(*p)
    elif args.kind == "I32":
        G = make_I32(*p)
    elif args.kind == "I42":
        G = make_I42(p[0], p[1], p[2:])
    elif args.kind == "Path7":
        G = make_path7()
    else:
        G = make_abelian(p[0])
    return dumps(group_to_json(G))


def cmd_family_aut(args, stdin) -> str:
    kind = args.kind
    if kind in ("even", "odd"):
        ds = args.d if args.d is not None else [1] * len(args.k)
        if len(ds) != len(args.k):
            raise DomainError(f"--d: expected {len(args.k)} values to match --k, got {len(ds)}")
        if kind == "even":
            G = make_Gd(*ds)
            e = aut_even(G, args.k)
        else:
            G = make_Gd_times_Z(*ds)
            e = aut_odd(G, args.k)
    elif kind == "i32":
        G = make_I32(args.alpha, args.beta, args.gamma)
        e = aut_i32(G, args.alpha, args.beta, args.gamma, args.k, args.l)
    else:
        G = make_I42(args.delta, args.lam, args.phi)
        e = aut_i42(G, args.delta, args.lam, args.phi)
    if args.with_group:
        return dumps({"group": group_to_json(G), "automorphism": aut_to_json(e)})
    return dumps(aut_to_json(e))


def cmd_reduce_i32(args, stdin) -> str:
    alpha, beta, gamma, trail = reduce_i32(I32Intermediate(args.alpha, args.beta, args.t13, args.t23))
    if args.json:
        return dumps({
            "alpha": encode_int(alpha),
            "beta": encode_int(beta),
            "gamma": encode_int(gamma),
            "trail": [
                {"label": step.label, "X": step.X.tolist(), "Z": step.Z.tolist()} for step in trail
            ],
        })
    lines = [f"{alpha} {beta} {gamma}"]
    lines += [f"  {step.label}" for step in trail]
    return "\n".join(lines) + "\n"


def cmd_bqf_equiv(args, stdin) -> str:
    w = bqf_lambda_equivalent(args.phi, args.psi, args.lam, args.bound)
    if args.json:
        if w is None:
            return dumps({"found": False, "bound": args.bound})
        return dumps({"found": True, "matrix": [list(r) for r in w.matrix], "sign": w.sign})
    if w is None:
        return "NOT-FOUND-WITHIN-BOUND\n"
    (p, q), (r, s) = w.matrix
    return f"[[{p},{q}],[{r},{s}]] sign {'+' if w.sign > 0 else '-'}\n"


def cmd_classify_in1(args, stdin) -> str:
    G = load_group(_read(args.group, stdin))
    ds, free = classify_in1(G)
    if args.json:
        return dumps({"d": [encode_int(d) for d in ds], "free_rank": free})
    name = "G(" + ",".join(str(d) for d in ds) + ")"
    return name + (f" x Z^{free}" if free else "") + "\n"


def cmd_oracle_abelian(args, stdin) -> str:
    A = _matrix_arg(args.matrix)
    if args.mod < 2:
        raise ModulusError("--mod must be at least 2")
    count = abelian_twisted_classes(A, args.mod)
    closed = abelian_closed_form(A, args.mod)
    if count != closed:
        raise ArithmeticError(f"orbit count {count} disagrees with closed form {closed}")
    if args.json:
        return dumps({"count": count, "closed_form": closed})
    return f"{count}\n"


def cmd_oracle_quotient(args, stdin) -> str:
    G, e = _group_and_aut(args, stdin)
    count = finite_quotient_twisted_classes(FiniteQuotient(G, args.mod), e)
    if args.json:
        return dumps({"N": args.mod, "count": count})
    return f"{count}\n"


def cmd_oracle_stabilize(args, stdin) -> str:
    G, e = _group_and_aut(args, stdin)
    rows = stabilization_report(G, e, args.mods)
    if args.json:
        return dumps({"rows": [{"N": r.N, "count": r.count, "R": ext_json(r.formula)} for r in rows]})
    lines = ["N count R"]
    lines += [f"{r.N} {r.count} {r.formula}" for r in rows]
    return "\n".join(lines) + "\n"


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    group_opt = argparse.ArgumentParser(add_help=False)
    group_opt.add_argument("--group", metavar="FILE", help="group JSON (default: stdin)")

    aut_opt = argparse.ArgumentParser(add_help=False)
    aut_opt.add_argument("--aut", metavar="FILE", required=True, help="automorphism JSON ('-' for stdin)")

    parser = argparse.ArgumentParser(prog="nilspec", description="Reidemeister numbers of 2-step nilpotent groups.")
    parser.add_argument("--version", action="version", version=f"nilspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="group queries")
    gsub = g.add_subparsers(dest="action", required=True)
    gsub.add_parser("info", parents=[common, group_opt], help="invariants of a group").set_defaults(func=cmd_group_info)

    a = sub.add_parser("aut", help="automorphism queries")
    asub = a.add_subparsers(dest="action", required=True)
    asub.add_parser("check", parents=[common, group_opt, aut_opt],
                    help="is the data an endomorphism / automorphism").set_defaults(func=cmd_aut_check)

    r = sub.add_parser("reid", parents=[common, group_opt, aut_opt], help="Reidemeister number")
    r.add_argument("--check", action="store_true", help="also compute it via the centre series")
    r.set_defaults(func=cmd_reid)

    s = sub.add_parser("spectrum", parents=[common, group_opt], help="bounded Reidemeister spectrum search")
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--limit", type=int)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--progress", action="store_true", help="progress on stderr")
    s.set_defaults(func=cmd_spectrum)

    f = sub.add_parser("family", help="explicit groups and automorphisms")
    fsub = f.add_subparsers(dest="action", required=True)
    fm = fsub.add_parser("make", help="emit a group JSON")
    fm.add_argument("kind", choices=sorted(FAMILY_ARITY))
    fm.add_argument("params", type=int, nargs="*")
    fm.set_defaults(func=cmd_family_make)

    fa = fsub.add_parser("aut", help="emit an automorphism JSON")
    fasub = fa.add_subparsers(dest="kind", required=True)
    aut_common = argparse.ArgumentParser(add_help=False)
    aut_common.add_argument("--with-group", action="store_true", help="wrap output with the group")
    for kind in ("even", "odd"):
        p = fasub.add_parser(kind, parents=[aut_common])
        p.add_argument("--k", type=int_list, required=True, help="k_1,...,k_r")
        p.add_argument("--d", type=int_list, help="d_1,...,d_r (default all 1)")
        p.set_defaults(func=cmd_family_aut)
    p = fasub.add_parser("i32", parents=[aut_common])
    for name in ("alpha", "beta", "gamma", "k", "l"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_family_aut)
    p = fasub.add_parser("i42", parents=[aut_common])
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--phi", type=form, required=True, help="a,b,c (use --phi=-1,0,1 for a leading minus)")
    p.set_defaults(func=cmd_family_aut)

    ri = sub.add_parser("reduce-i32", parents=[common], help="canonical I(3,2) parameters")
    for name in ("alpha", "beta", "t13", "t23"):
        ri.add_argument(f"--{name}", type=int, required=True)
    ri.set_defaults(func=cmd_reduce_i32)

    b = sub.add_parser("bqf", help="binary quadratic forms")
    bsub = b.add_subparsers(dest="action", required=True)
    be = bsub.add_parser("equiv", parents=[common], help="bounded lambda-equivalence search")
    be.add_argument("--phi", type=form, required=True)
    be.add_argument("--psi", type=form, required=True)
    be.add_argument("--lambda", dest="lam", type=int, required=True)
    be.add_argument("--bound", type=int, required=True)
    be.set_defaults(func=cmd_bqf_equiv)

    sub.add_parser("classify-in1", parents=[common, group_opt],
                   help="G(d) x Z^k form of a group with 1-dimensional commutator").set_defaults(func=cmd_classify_in1)

    o = sub.add_parser("oracle", help="brute-force counts in finite quotients")
    osub = o.add_subparsers(dest="action", required=True)
    oa = osub.add_parser("abelian", parents=[common])
    oa.add_argument("--matrix", required=True, help="'2,1;1,1' or JSON rows")
    oa.add_argument("--mod", type=int, required=True)
    oa.set_defaults(func=cmd_oracle_abelian)
    oq = osub.add_parser("quotient", parents=[common, group_opt, aut_opt])
    oq.add_argument("--mod", type=int, required=True)
    oq.set_defaults(func=cmd_oracle_quotient)
    ost = osub.add_parser("stabilize", parents=[common, group_opt, aut_opt])
    ost.add_argument("--mods", type=int_list, default=[3, 5, 7])
    ost.set_defaults(func=cmd_oracle_stabilize)
    return parser


def _one_line(msg) -> str:
    return " ".join(str(msg).split())


def _dispatch(argv, stdin) -> tuple[int, str]:
    """Exit code and stdout text; diagnostics go to the current stderr."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        return 0, args.func(args, stdin)
    except DOMAIN_ERRORS + (DomainError, ValueError) as exc:
        print(f"nilspec: error: {_one_line(exc)}", file=sys.stderr)
        return 1, ""


def run(argv=None, stdin=None) -> CommandResult:
    """Parse and execute with captured streams; never raises and never exits."""
    if stdin is None:
        stdin = io.StringIO("")
    elif isinstance(stdin, str):
        stdin = io.StringIO(stdin)
    err = io.StringIO()
    with redirect_stderr(err):
        code, out = _dispatch(argv, stdin)
    return CommandResult(code, out, err.getvalue())


def main(argv=None) -> int:
    code, out = _dispatch(sys.argv[1:] if argv is None else argv, sys.stdin)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
