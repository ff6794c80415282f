"""Command-line interface.

Exit codes: 0 when every requested relation holds and the pipeline
succeeds, 1 when a relation fails (reports are still emitted), 2 on
malformed input.
"""

import argparse
import sys
from fractions import Fraction

from .bialgebra import (builtin_constants, canonical_element,
                        check_heisenberg_relations)
from .drinfeld import (check_double_consistency, r_matrix, s_family,
                       s_primes_from_reps)
from .errors import SchemaError
from .formal import verify_dilog_identity, weyl_pentagon_check
from .reconstruction import reconstruct
from .relations import (check_mixed_pentagons, check_pentagon,
                        check_reversed_pentagon, check_yang_baxter)
from .scalars import FIELD_Q
from .serialize import (constants_to_json, dump_json, load_constants,
                        load_operator, operator_to_json, save_json)

LARGE_SPACE = 10000


def _add_source(parser, constants=False):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--example", metavar="NAME",
                       help="built-in example: zn:<n> (n <= 12), s3, trivial")
    group.add_argument("--input", metavar="FILE",
                       help="JSON file with %s"
                       % ("structure constants" if constants
                          else "an operator"))


def _add_common(parser):
    parser.add_argument("--json", action="store_true",
                        help="emit reports as a JSON array")


def _source_constants(args):
    if args.example is not None:
        return builtin_constants(args.example, FIELD_Q)
    return load_constants(args.input)


def _source_operator(args):
    if args.example is not None:
        return canonical_element(builtin_constants(args.example, FIELD_Q))
    return load_operator(args.input)


def _emit(reports, as_json):
    if as_json:
        sys.stdout.write(dump_json([rep.to_json() for rep in reports]))
    else:
        for rep in reports:
            print(rep)
    return 0 if all(rep.holds for rep in reports) else 1


def _guard_large(space_dim, allow_large):
    if space_dim > LARGE_SPACE and not allow_large:
        print("error: refusing to sweep a %d-dimensional space without"
              " --allow-large" % space_dim, file=sys.stderr)
        raise SystemExit(2)


def _maybe_plot(args, op, title):
    if getattr(args, "plot", None):
        from .plots import save_sparsity

        save_sparsity(args.plot, op, title=title)


def _cmd_verify(args):
    relation = args.relation
    if relation in ("heisenberg", "drinfeld"):
        sc = _source_constants(args)
        if relation == "heisenberg":
            reports = [check_heisenberg_relations(sc)]
        else:
            reports = check_double_consistency(sc)
        return _emit(reports, args.json)
    if relation == "pentagon":
        op = _source_operator(args)
        _maybe_plot(args, op, "S")
        reports = [check_pentagon(op)]
    elif relation == "reversed":
        op = _source_operator(args)
        if args.example is not None:
            op = op.transpose()
        _maybe_plot(args, op, "S~")
        reports = [check_reversed_pentagon(op)]
    elif relation == "mixed":
        if args.example is not None:
            family = s_primes_from_reps(builtin_constants(args.example,
                                                          FIELD_Q))
        else:
            family = s_family(load_operator(args.input))
        _maybe_plot(args, family.s, "S")
        reports = check_mixed_pentagons(family.s, family.s_tilde,
                                        family.s_prime,
                                        family.s_double_prime)
    else:
        if args.example is not None:
            family = s_primes_from_reps(builtin_constants(args.example,
                                                          FIELD_Q))
            op = r_matrix(family)
        else:
            op = load_operator(args.input)
        _guard_large(_triple_dim(op), args.allow_large)
        _maybe_plot(args, op, "R")
        reports = [check_yang_baxter(op)]
    return _emit(reports, args.json)


def _triple_dim(op):
    total = 1
    for d in op.row_dims:
        total *= d
    half = len(op.row_dims) // 2 or 1
    block = 1
    for d in op.row_dims[:half]:
        block *= d
    return block ** 3


def _cmd_reconstruct(args):
    op = _source_operator(args)
    _maybe_plot(args, op, "S")
    result = reconstruct(op)
    sc = result.constants()
    if result.unit is not None or result.counit is not None:
        from .bialgebra import StructureConstants

        sc = StructureConstants(result.dim, op.field, result.m, result.mu,
                                unit=result.unit, counit=result.counit)
    data = constants_to_json(sc)
    data["g"] = [operator_to_json(mat) for mat in result.g]
    data["f"] = [operator_to_json(mat) for mat in result.f]
    data["g_dual"] = [operator_to_json(mat) for mat in result.g_dual]
    data["f_dual"] = [operator_to_json(mat) for mat in result.f_dual]
    if args.output:
        save_json(args.output, data)
    if args.diagnostics:
        save_json(args.diagnostics,
                  [rep.to_json() for rep in result.diagnostics])
    return _emit(result.diagnostics, args.json)


def _cmd_rmatrix(args):
    if args.example is not None:
        family = s_primes_from_reps(builtin_constants(args.example, FIELD_Q))
    else:
        family = s_family(load_operator(args.input))
    r = r_matrix(family)
    _maybe_plot(args, r, "R")
    if args.output:
        save_json(args.output, operator_to_json(r))
    reports = []
    for what in args.check or ():
        if what == "ybe":
            _guard_large(_triple_dim(r), args.allow_large)
            reports.append(check_yang_baxter(r))
        else:
            reports.extend(check_mixed_pentagons(
                family.s, family.s_tilde, family.s_prime,
                family.s_double_prime))
    return _emit(reports, args.json)


def _cmd_dilog(args):
    numeric = Fraction(args.numeric_q) if args.numeric_q else None
    report = verify_dilog_identity(args.degree, set_w_zero=args.set_w_zero,
                                   numeric_q=numeric)
    return _emit([report], args.json)


def _cmd_weyl(args):
    report = weyl_pentagon_check(args.max_occupation)
    return _emit([report], args.json)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hdouble",
        description="Exact pentagon, Yang-Baxter and double checks")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="check one family of relations")
    verify.add_argument("relation",
                        choices=["pentagon", "reversed", "mixed", "ybe",
                                 "heisenberg", "drinfeld"])
    _add_source(verify)
    verify.add_argument("--allow-large", action="store_true",
                        help="permit sweeps of spaces above %d dimensions"
                        % LARGE_SPACE)
    verify.add_argument("--plot", metavar="FILE",
                        help="write a sparsity figure of the checked operator")
    _add_common(verify)
    verify.set_defaults(func=_cmd_verify)

    recon = sub.add_parser("reconstruct",
                           help="extract dual bialgebras from a pentagon"
                                " solution")
    _add_source(recon)
    recon.add_argument("--output", metavar="FILE",
                       help="write the reconstructed constants and factors")
    recon.add_argument("--diagnostics", metavar="FILE",
                       help="write the diagnostic reports")
    recon.add_argument("--plot", metavar="FILE",
                       help="write a sparsity figure of the input")
    _add_common(recon)
    recon.set_defaults(func=_cmd_reconstruct)

    rmat = sub.add_parser("rmatrix", help="assemble the factorized R-matrix")
    _add_source(rmat)
    rmat.add_argument("--check", action="append", choices=["ybe", "mixed"],
                      help="verify a relation family for the result")
    rmat.add_argument("--output", metavar="FILE",
                      help="write the R-matrix as an operator file")
    rmat.add_argument("--allow-large", action="store_true",
                      help="permit sweeps of spaces above %d dimensions"
                      % LARGE_SPACE)
    rmat.add_argument("--plot", metavar="FILE",
                      help="write a sparsity figure of the R-matrix")
    _add_common(rmat)
    rmat.set_defaults(func=_cmd_rmatrix)

    dilog = sub.add_parser("dilog",
                           help="check the generalized dilogarithm identity")
    dilog.add_argument("--degree", type=int, required=True,
                       help="truncation bound for the total degree")
    dilog.add_argument("--set-w-zero", action="store_true",
                       help="project to the quotient W = 0 before comparing")
    dilog.add_argument("--numeric-q", metavar="P/Q",
                       help="run over plain rationals at this q")
    _add_common(dilog)
    dilog.set_defaults(func=_cmd_dilog)

    weyl = sub.add_parser("weyl",
                          help="check the exponential pentagon on Fock"
                               " states")
    weyl.add_argument("--max-occupation", type=int, required=True,
                      help="sweep all occupation triples up to this value")
    _add_common(weyl)
    weyl.set_defaults(func=_cmd_weyl)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, TypeError, ArithmeticError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
