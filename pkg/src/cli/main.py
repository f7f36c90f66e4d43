"""Command-line surface: embed, rip, verify, sweep and replay."""

from typing import Any, Callable, Sequence
import argparse
import logging
import sys

from pydantic import ValidationError

from src.constructions.builders import CONSTRUCTIONS
from src.core.errors import (
    DimensionError,
    InputFormatError,
    NumericError,
    ParameterError,
    ResourceLimitError,
    SearchRangeError,
)
from src.models.schemas import PointSetKind, RunManifest, TrialConfig
from src.services.experiment_service import get_experiment_service
from src.services.verification_service import SUITES, get_verification_service
from src.utils.io_utils import (
    manifest_body,
    read_manifest,
    read_matrix,
    to_json,
    write_manifest,
    write_matrix,
    write_report,
)
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_IO = 2
EXIT_PARAMETER = 3
EXIT_RESOURCE = 4

SEED_FIELDS = ("matrix_seed", "sign_seed", "data_seed", "root_seed", "seed")
STDOUT_MANIFEST = "embed.manifest.json"


def _manifest(command: str, args: argparse.Namespace) -> RunManifest:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    seeds = {k: params[k] for k in SEED_FIELDS if params.get(k) is not None}
    return RunManifest(command=command, parameters=params, seeds=seeds, version=settings.APP_VERSION)


def _emit_report(command: str, args: argparse.Namespace, result: dict[str, Any]) -> None:
    """Print the JSON report and, with --output, write it together with its manifest."""
    manifest = _manifest(command, args)
    payload = {"manifest": manifest_body(manifest), **result}
    if args.output:
        write_report(args.output, payload)
        write_manifest(manifest, args.output)
    sys.stdout.write(to_json(payload))


def _parse_values(text: str) -> list[float]:
    """Comma list "a,b,c" or range "start:stop:step" (stop inclusive)."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0 or stop < start:
                raise ParameterError(f"Invalid range: {text}")
            count = int((stop - start) / step + 1e-9) + 1
            return [start + i * step for i in range(count)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ParameterError(f"Invalid axis values: {text}") from e


# ===== Commands =====

def cmd_embed(args: argparse.Namespace) -> int:
    points = read_matrix(args.input, args.delimiter, args.header)
    N = points.shape[1]
    if args.m > N:
        logger.warning("m=%d exceeds N=%d; the map does not reduce dimension", args.m, N)
    embedded, value = get_experiment_service(args.jobs).embed(
        points,
        args.construction,
        args.m,
        args.matrix_seed,
        args.sign_seed,
        args.mode,
        args.variant,
        args.replacement == "with",
    )
    if args.output:
        write_matrix(args.output, embedded.points, args.delimiter or ",")
    else:
        sys.stdout.flush()
        write_matrix(sys.stdout.buffer, embedded.points, args.delimiter or ",")
        sys.stdout.buffer.flush()
    target = getattr(args, "manifest", None) or (None if args.output else STDOUT_MANIFEST)
    path = write_manifest(_manifest("embed", args), args.output, target)
    logger.info("Manifest written to %s", path)
    print(f"max_distortion {value:.17g}")
    return EXIT_OK


def cmd_rip(args: argparse.Namespace) -> int:
    service = get_experiment_service(args.jobs)
    if args.input:
        Phi = read_matrix(args.input, args.delimiter, args.header)
    else:
        if args.m is None or args.n is None:
            raise ParameterError("A generated matrix needs --m and --n")
        if args.m > args.n:
            logger.warning("m=%d exceeds N=%d; the map does not reduce dimension", args.m, args.n)
        Phi = service.generated_matrix(
            args.construction, args.m, args.n, args.matrix_seed, args.variant, args.replacement == "with"
        )
    estimate = service.rip(Phi, args.k, args.method, args.trials, args.seed)
    _emit_report("rip", args, {"result": estimate.model_dump(mode="json")})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    service = get_verification_service(args.root_seed)
    sizes = {
        "prop53": dict(matrices=args.matrices, m=args.m, n=args.n, s=args.s),
        "prop54": dict(matrices=args.matrices, vectors=args.vectors, m=args.m, n=args.n, s=args.s),
        "expansion": dict(instances=args.instances, m=args.m, n=args.n, s=args.s),
        "tails": dict(trials=args.trials),
        "theorem": dict(n=args.n, m=args.m, p=args.p, eta=args.eta, epsilon=args.epsilon,
                        sign_trials=args.trials),
        "nullspace": dict(n=args.n, m=args.m, sign_trials=args.trials),
        "concentration": dict(n=args.n, epsilon=args.epsilon, trials=args.trials),
    }[args.suite]
    report = service.run(args.suite, **sizes)
    _emit_report("verify", args, {
        "checks": [c.model_dump(mode="json") for c in report.checks],
        "summary": {**report.summary, "passed": report.passed, "violations": report.violations},
        "suite": report.suite,
    })
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sweep(args: argparse.Namespace) -> int:
    values = _parse_values(args.values)
    m = args.m if args.m is not None else (int(values[0]) if args.axis == "m" else args.n)
    template = TrialConfig(
        N=args.n,
        m=m,
        p=args.p,
        epsilon=args.epsilon if args.axis == "m" else values[0],
        eta=args.eta,
        construction=args.construction,
        variant=args.variant,
        replace=args.replacement == "with",
        pointset=args.pointset,
        support=args.support,
        mode=args.mode,
    )
    m_range = (args.m_min, args.m_max) if args.m_max is not None else None
    report = get_experiment_service(args.jobs).sweep(
        template, args.axis, values, args.trials, args.root_seed, args.fit, m_range, args.data_seed
    )
    _emit_report("sweep", args, {"result": report.model_dump(mode="json")})
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "embed": cmd_embed,
    "rip": cmd_rip,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def cmd_replay(args: argparse.Namespace) -> int:
    manifest = read_manifest(args.manifest)
    params = dict(manifest.parameters)
    if args.output:
        params["output"] = args.output
    logger.info("Replaying %s from %s", manifest.command, args.manifest)
    return COMMANDS[manifest.command](argparse.Namespace(**params))


# ===== Parser =====

def _add_construction_args(parser: argparse.ArgumentParser, required_m: bool = True) -> None:
    parser.add_argument("--construction", choices=sorted(CONSTRUCTIONS), default="gaussian")
    parser.add_argument("--m", type=int, required=required_m, default=None, help="Embedding dimension")
    parser.add_argument("--variant", choices=["gaussian", "rademacher"], default="gaussian",
                        help="Generator distribution for circulant")
    parser.add_argument("--replacement", choices=["with", "without"], default="with",
                        help="Row/frequency sampling for hadamard and fourier")
    parser.add_argument("--matrix-seed", type=int, default=settings.DEFAULT_MATRIX_SEED)


def _add_input_args(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--input", type=str, required=required, default=None,
                        help="Delimiter-separated text, one vector per line")
    parser.add_argument("--header", action="store_true", help="Skip a single header line")
    parser.add_argument("--delimiter", type=str, default=None, help="Field separator (default: comma or whitespace)")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Johnson-Lindenstrauss embeddings from RIP matrices with random signs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level (default settings.LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    embed = sub.add_parser("embed", help="Embed a point set with Phi D_xi")
    _add_input_args(embed, required=True)
    _add_construction_args(embed)
    embed.add_argument("--sign-seed", type=int, default=settings.DEFAULT_SIGN_SEED)
    embed.add_argument("--mode", choices=["direct", "pairwise"], default="direct")
    embed.add_argument("--output", type=str, default=None, help="Output file (default: standard output)")
    embed.add_argument("--manifest", type=str, default=None,
                       help=f"Manifest file (default: <output>.manifest.json, or {STDOUT_MANIFEST} for standard output)")
    embed.add_argument("--jobs", type=int, default=settings.JOBS)
    embed.set_defaults(func=cmd_embed)

    rip = sub.add_parser("rip", help="Restricted isometry constant of a matrix")
    _add_input_args(rip, required=False)
    _add_construction_args(rip, required_m=False)
    rip.add_argument("--n", type=int, default=None, help="Columns of a generated matrix")
    rip.add_argument("--k", type=int, required=True, help="Sparsity order")
    rip.add_argument("--method", choices=["exact", "monte-carlo", "upper-bound"], default="exact")
    rip.add_argument("--trials", type=int, default=1000, help="Sampled supports for monte-carlo")
    rip.add_argument("--seed", type=int, default=0, help="Support sampling seed")
    rip.add_argument("--output", type=str, default=None)
    rip.add_argument("--jobs", type=int, default=settings.JOBS)
    rip.set_defaults(func=cmd_rip)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", choices=SUITES, required=True)
    verify.add_argument("--matrices", type=int, default=None)
    verify.add_argument("--vectors", type=int, default=None)
    verify.add_argument("--instances", type=int, default=None)
    verify.add_argument("--m", type=int, default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--s", type=int, default=None)
    verify.add_argument("--p", type=int, default=None)
    verify.add_argument("--eta", type=float, default=None)
    verify.add_argument("--epsilon", type=float, default=None)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--root-seed", type=int, default=settings.DEFAULT_ROOT_SEED)
    verify.add_argument("--output", type=str, default=None)
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="Failure rates along m or epsilon")
    sweep.add_argument("--axis", choices=["m", "epsilon"], required=True)
    sweep.add_argument("--values", type=str, required=True, help='"a,b,c" or "start:stop:step"')
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--p", type=int, required=True)
    sweep.add_argument("--epsilon", type=float, default=0.5)
    sweep.add_argument("--eta", type=float, default=0.1)
    sweep.add_argument("--construction", choices=sorted(CONSTRUCTIONS), default="gaussian")
    sweep.add_argument("--m", type=int, default=None, help="Fixed m for the epsilon axis")
    sweep.add_argument("--variant", choices=["gaussian", "rademacher"], default="gaussian")
    sweep.add_argument("--replacement", choices=["with", "without"], default="with")
    sweep.add_argument("--pointset", choices=[k.value for k in PointSetKind], default=PointSetKind.GAUSSIAN_UNIT.value)
    sweep.add_argument("--support", type=int, default=None)
    sweep.add_argument("--mode", choices=["direct", "pairwise"], default="direct")
    sweep.add_argument("--trials", type=int, default=100)
    sweep.add_argument("--fit", action="store_true", help="Search minimal m per epsilon and fit the slope")
    sweep.add_argument("--m-min", type=int, default=1)
    sweep.add_argument("--m-max", type=int, default=None)
    sweep.add_argument("--root-seed", type=int, default=settings.DEFAULT_ROOT_SEED)
    sweep.add_argument("--data-seed", type=int, nargs="?", const=settings.DEFAULT_DATA_SEED, default=None,
                       help="Keep one point set across trials (bare flag: settings.DEFAULT_DATA_SEED)")
    sweep.add_argument("--jobs", type=int, default=settings.JOBS)
    sweep.add_argument("--output", type=str, default=None)
    sweep.set_defaults(func=cmd_sweep)

    replay = sub.add_parser("replay", help="Re-run the command recorded in a manifest")
    replay.add_argument("manifest", type=str)
    replay.add_argument("--output", type=str, default=None, help="Write to a different output file")
    replay.set_defaults(func=cmd_replay)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI.

    Returns:
        Exit code: 0 success, 1 failed verification or numeric error,
        2 I/O or input format error, 3 parameter error, 4 resource cap
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    del args.log_level

    try:
        return args.func(args)
    except (InputFormatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except SearchRangeError as e:
        print(f"error: {e} ({len(e.history)} probes)", file=sys.stderr)
        return EXIT_PARAMETER
    except (DimensionError, ParameterError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMETER
    except NumericError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
