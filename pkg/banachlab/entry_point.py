import json
import logging
import sys
from argparse import ArgumentParser

from banachlab import argparse_types, dual, generators, inequalities, reports
from banachlab.config import Caps
from banachlab.embeddings import measure_distortion, parse_embedding, parse_metric
from banachlab.errors import CapExceededError, MalformedInputError
from banachlab.hamming import HammingSpace, diameter_brute, hamming_distance, johnson_distance
from banachlab.norming import norming_value
from banachlab.norms import brute_force_tsirelson, engine_for
from banachlab.spaces import Tsirelson, TsirelsonDual, describe_space, format_space, parse_space
from banachlab.version import __version__

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

LEMMAS = ("block-c0", "dm", "cm", "l2", "hat", "c0-subseq", "spreading")


def run(argv=None):
    logging.basicConfig(
        level=logging.INFO,
        format="{asctime} [{levelname}] {message}",
        style="{",
    )
    parser = ArgumentParser(description=f"v{__version__}", prog="banachlab")
    add_global_args(parser)
    subparsers = parser.add_subparsers(help="commands")

    norm_command = add_command_parser(subparsers, "norm", "Exact norm of a finitely supported vector", func=norm)
    add_space_arg(norm_command)
    add_vector_arg(norm_command)
    norm_command.add_argument(
        "--oracle",
        action="store_true",
        help="Cross-check against an independent evaluator (T: set families and norming set, "
        "T*: decomposition program) and fail on mismatch",
    )

    dual_command = add_command_parser(
        subparsers, "dual-norm", "Norm in the dual of Tsirelson space by linear programming", func=dual_norm
    )
    add_space_arg(dual_command, default="T*", help_text="T or T*; both evaluate the T* norm. Default - T*")
    add_vector_arg(dual_command)
    dual_command.add_argument(
        "--witness", action="store_true", help="Print the norming vector of the unit ball of T as well"
    )

    metric_command = add_command_parser(subparsers, "metric", "Distance of two k-subsets", func=metric)
    add_space_arg(metric_command, default="l1", help_text="Generating space of d_e. Default - l1")
    metric_command.add_argument("--k", required=True, type=argparse_types.positive_int, help="Size of the subsets")
    metric_command.add_argument("--a", required=True, type=argparse_types.ksubset, help="First subset, e.g. 1,3,5")
    metric_command.add_argument("--b", required=True, type=argparse_types.ksubset, help="Second subset")
    metric_command.add_argument(
        "--kind", choices=("hamming", "johnson", "d_e"), default="d_e", help="Metric to evaluate. Default - d_e"
    )

    diameter_command = add_command_parser(
        subparsers, "diameter", "Diameter of [N]^k under the metric generated by a space", func=diameter
    )
    add_space_arg(diameter_command)
    diameter_command.add_argument("--k", required=True, type=argparse_types.positive_int, help="Size of the subsets")
    diameter_command.add_argument(
        "--check",
        type=argparse_types.positive_int,
        metavar="N",
        help="Compare with the largest distance over all pairs of [N]^k",
    )
    add_workers_arg(diameter_command)

    distortion_command = add_command_parser(
        subparsers, "distortion", "Measure the distortion of an embedding of [n]^k", func=distortion
    )
    distortion_command.add_argument(
        "--embedding",
        required=True,
        help="prop73:p=P,k=K[,inner=SPACE] | xpq:p=P,q=Q,k=K[,width=W] | array:FILE",
    )
    distortion_command.add_argument(
        "--metric", default="hamming", help="hamming | johnson | d_e:SPACE. Default - hamming"
    )
    distortion_command.add_argument("--n", required=True, type=argparse_types.positive_int, help="Ground set size")
    distortion_command.add_argument("--csv", metavar="FILE", help="Write every pair with both distances as CSV")
    add_workers_arg(distortion_command)

    verify_command = add_command_parser(
        subparsers, "verify", "Verify or estimate the constant of a block inequality", func=verify
    )
    add_verify_args(verify_command)

    parse_command = add_command_parser(subparsers, "parse", "Canonical form of a space expression", func=parse)
    parse_command.add_argument("--space", required=True, help="Space expression, e.g. sum(T*,repeat(lp(2)))")

    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help()
        sys.exit(0)
    if args.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    exit_code = EXIT_FAILURE
    try:
        args.caps = Caps.load(args.config, args.caps)
        success, message = args.func(args)
        if not success:
            print(message, file=sys.stderr)
        elif message is not None:
            print(message)
        exit_code = 0 if success else EXIT_FAILURE
    except CapExceededError as e:
        print(f"refused: {e}", file=sys.stderr)
        exit_code = EXIT_REFUSED
    except MalformedInputError as e:
        print(f"{args.commandName}: {e}", file=sys.stderr)
        exit_code = EXIT_USAGE
    except Exception as e:  # pylint: disable=broad-exception-caught
        logging.exception(f"FAIL! {e}")

    sys.exit(exit_code)


def add_command_parser(subparsers, name, help_text, func):
    command_parser = subparsers.add_parser(name, help=help_text)
    command_parser.set_defaults(func=func, commandName=name)
    return command_parser


def add_global_args(parser):
    parser.add_argument("--config", type=argparse_types.file, help="YAML file with cap values")
    parser.add_argument(
        "--caps",
        type=argparse_types.caps,
        help="Cap overrides, e.g. tsirelson=10,dual=8. Applied after --config and BANACHLAB_CAPS",
    )
    parser.add_argument("--quiet", action="store_true", help="Log warnings and errors only")
    parser.add_argument(
        "--decimal",
        type=argparse_types.non_negative_int,
        metavar="D",
        help="Add decimals rounded to D places next to exact rationals",
    )
    parser.add_argument(
        "--format", choices=("json", "markdown"), default="json", help="Report format. Default - json"
    )


def add_space_arg(parser, default=None, help_text="Space expression, e.g. T, lp(2), sum(T*,repeat(l1))"):
    parser.add_argument("--space", required=default is None, default=default, help=help_text)


def add_vector_arg(parser):
    parser.add_argument(
        "--vec", required=True, type=argparse_types.vector, help="Sparse vector, e.g. 1:1,3:-1/2 or 1.2:1,2.1:1"
    )


def add_workers_arg(parser):
    parser.add_argument(
        "--workers", type=argparse_types.positive_int, default=1, help="Worker processes. Default - 1"
    )


def add_verify_args(parser):
    parser.add_argument("lemma", choices=LEMMAS, help="Inequality to check")
    parser.add_argument("--max-support", type=argparse_types.positive_int, default=6, help="Default - 6")
    parser.add_argument("--variant", choices=("strict", "relaxed"), default="strict", help="block-c0 variant")
    parser.add_argument("--n", type=argparse_types.positive_int, default=2, help="Family size for dm. Default - 2")
    parser.add_argument("--k", type=argparse_types.positive_int, default=2, help="Default - 2")
    parser.add_argument("--cuts", type=argparse_types.int_list, help="l2 cut points n_0 < ... < n_k")
    parser.add_argument("--samples", type=argparse_types.non_negative_int, default=20, help="Default - 20")
    parser.add_argument("--seed", type=int, help="Sampling seed. Default - the seed cap")
    parser.add_argument(
        "--instance", type=argparse_types.non_negative_int, default=0, help="hat/c0-subseq instance index"
    )
    parser.add_argument("--space", default="T", help="spreading space. Default - T")
    parser.add_argument(
        "--blocks", choices=("unit", "diagonal", "pair"), default="unit", help="spreading block family"
    )
    parser.add_argument("--shift", type=argparse_types.non_negative_int, default=0, help="spreading shift")
    add_workers_arg(parser)


def _space(text):
    try:
        return parse_space(text)
    except MalformedInputError as e:
        raise MalformedInputError(f"invalid space '{text}': {e}") from e


def norm(args):
    space = _space(args.space)
    value = engine_for(space, args.caps).norm(args.vec)
    if args.oracle:
        if isinstance(space, Tsirelson):
            checks = {
                "set families": brute_force_tsirelson(args.vec, args.caps),
                "norming set": norming_value(args.vec.leading_support(), args.vec, args.caps),
            }
        elif isinstance(space, TsirelsonDual):
            checks = {"decomposition": dual.dual_norm_by_decomposition(args.vec, args.caps)}
        else:
            raise MalformedInputError(f"no independent evaluator for {format_space(space)}")
        mismatches = [f"{name} gives {other}" for name, other in checks.items() if other != value]
        if mismatches:
            return False, f"oracle mismatch: {value} but {', '.join(mismatches)}"
        logging.info(f"{', '.join(checks)} agree on {value}")
    return True, reports.format_norm(value, args.decimal)


def dual_norm(args):
    space = _space(args.space)
    if not isinstance(space, (Tsirelson, TsirelsonDual)):
        raise MalformedInputError(f"dual-norm evaluates T*, got {format_space(space)}")
    result = dual.dual_norm(args.vec, args.caps)
    lines = [reports.format_norm(result.value, args.decimal)]
    if args.witness:
        lines.append(f"witness: {result.witness}")
    return True, "\n".join(lines)


def metric(args):
    if args.a.k != args.k or args.b.k != args.k:
        raise MalformedInputError(f"expected {args.k}-subsets, got {args.a.k} and {args.b.k} elements")
    if args.kind == "hamming":
        return True, str(hamming_distance(args.a, args.b))
    if args.kind == "johnson":
        value = johnson_distance(args.a, args.b)
    else:
        value = HammingSpace(args.k, _space(args.space)).distance(args.a, args.b, args.caps)
    return True, reports.format_distance(value, args.decimal)


def diameter(args):
    space = HammingSpace(args.k, _space(args.space))
    value = space.diameter(args.caps)
    if args.check is None:
        return True, reports.format_distance(value, args.decimal)
    brute = diameter_brute(space, args.check, args.caps, args.workers)
    message = (
        f"diameter: {reports.format_distance(value, args.decimal)}\n"
        f"largest distance on [{args.check}]^{args.k}: {reports.format_distance(brute, args.decimal)}"
    )
    if brute != value:
        print(message)
        return False, "diameter check failed"
    return True, message


def distortion(args):
    spec = parse_embedding(args.embedding, args.caps)
    report = measure_distortion(
        spec, parse_metric(args.metric), args.n, args.caps, args.workers, keep_rows=args.csv is not None
    )
    if args.csv is not None:
        reports.write_distortion_csv(report, args.csv)
        logging.info(f"{len(report.rows)} pairs written to {args.csv}")
    payload = reports.distortion_payload(report)
    if args.format == "markdown":
        return True, reports.render_markdown(reports.DISTORTION_TEMPLATE, payload, args.decimal)
    return True, reports.dumps(payload, args.decimal)


def verify(args):
    report = run_verifier(args)
    payload = reports.verifier_payload(report)
    if args.format == "markdown":
        print(reports.render_markdown(reports.VERIFIER_TEMPLATE, payload, args.decimal))
    else:
        print(reports.dumps(payload, args.decimal))
    if report.failed:
        return False, f"{report.lemma}: hard assertion failed, max ratio {report.max_ratio}"
    return True, None


def run_verifier(args) -> inequalities.VerifierReport:  # pylint: disable=too-many-return-statements
    caps = args.caps
    seed = caps.seed if args.seed is None else args.seed
    if args.lemma == "block-c0":
        return inequalities.verify_block_c0(args.max_support, args.variant, caps, args.workers)
    if args.lemma == "dm":
        return inequalities.estimate_DM(args.n, args.max_support, caps)
    if args.lemma == "cm":
        return inequalities.estimate_CM(args.max_support, args.samples, seed, caps)
    if args.lemma == "l2":
        cuts = args.cuts if args.cuts is not None else [args.k * 2**j for j in range(args.k + 1)]
        return inequalities.verify_lemma_L2(args.k, cuts, args.samples, seed, caps)
    if args.lemma == "hat":
        cuts, w_list = generators.hat_instance(args.k, seed, args.instance, caps=caps)
        report = inequalities.hat_select(args.k, w_list, cuts, caps)[2]
    elif args.lemma == "c0-subseq":
        cuts, x_list = generators.c0_instance(args.k, seed, args.instance, caps)
        report = inequalities.select_c0_subsequence(args.k, x_list, cuts, caps)[2]
    else:
        return inequalities.spreading_report(_space(args.space), args.blocks, args.k, args.shift, caps)
    report.seed = seed
    report.params["instance"] = args.instance
    return report


def parse(args):
    space = _space(args.space)
    return True, json.dumps({"canonical": format_space(space), "tree": describe_space(space)}, indent=2, sort_keys=True)
