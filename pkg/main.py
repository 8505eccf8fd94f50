"""
Command-line entry point.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv()

from config import RLAB_THREADS  # noqa: E402

# BLAS reads these once, when numpy is first imported
for _name in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_name, str(RLAB_THREADS))

from rlab.building import (  # noqa: E402
    LocalFieldParams,
    building_ball,
    colored_quotient,
    load_colored_complex,
    save_colored_complex,
)
from rlab.complexes import quotient_by_action  # noqa: E402
from rlab.errors import InvalidParams, NumericalError, RlabError, ValidationError  # noqa: E402
from rlab.generators import (  # noqa: E402
    complete,
    complete_multipartite,
    cycle,
    petersen,
    prism,
    random_regular,
    torus_triangulation,
    tripartite_circulant,
)
from rlab.io import (  # noqa: E402
    complex_payload,
    load_complex,
    load_group_action,
    read_model,
    save_complex,
    write_json,
    write_report,
    write_spectrum_csv,
)
from rlab.logging_config import setup_logging  # noqa: E402
from rlab.models import ComplexFile, Report, RunConfig  # noqa: E402
from rlab.operators.catalog import family_constructor, parse_operator_names  # noqa: E402
from rlab.pipeline import cmd_pipeline, run_metadata  # noqa: E402
from rlab.spectra import ReferenceSpectrum, alon_boppana_scan, parse_reference, random_lift  # noqa: E402

logger = setup_logging()


def _require(value, flag: str):
    if value is None:
        raise InvalidParams(f"{flag} is required")
    return value


def cmd_generate(config: RunConfig) -> Path:
    """Write the requested generated complex to ``config.output``."""
    name = config.generator
    output = _require(config.output, "--out")
    if name == "cycle":
        X = cycle(_require(config.n, "--n"))
    elif name == "complete":
        X = complete(_require(config.n, "--n"))
    elif name == "petersen":
        X = petersen()
    elif name == "prism":
        X = prism(_require(config.n, "--n"))
    elif name == "regular":
        X = random_regular(_require(config.n, "--n"), _require(config.k, "--k"), config.seed)
    elif name == "torus":
        X = torus_triangulation(_require(config.m, "--m"), _require(config.n, "--n"))
    elif name == "tripartite":
        return save_colored_complex(complete_multipartite(_require(config.n, "--n"), config.d or 3), output)
    elif name == "circulant":
        if not config.shifts:
            raise InvalidParams("--shifts is required")
        return save_colored_complex(tripartite_circulant(_require(config.n, "--n"), config.shifts), output)
    else:
        raise InvalidParams(f"unknown generator {name!r}")
    return save_complex(X, output)


def cmd_building_ball(config: RunConfig) -> Path:
    params = LocalFieldParams(_require(config.q, "--q"), _require(config.d, "--d"), config.r)
    colored = building_ball(params, _require(config.radius, "--radius"))
    return save_colored_complex(colored, _require(config.output, "--out"))


def cmd_quotient(config: RunConfig, group: str) -> Path:
    """Quotient a plain or colored complex; colors pass to the orbits."""
    path = _require(config.input, "--in")
    action = load_group_action(group)
    output = _require(config.output, "--out")
    if read_model(path, ComplexFile).d is not None:
        colored, _ = colored_quotient(load_colored_complex(path), action)
        return save_colored_complex(colored, output)
    result = quotient_by_action(load_complex(path), action)
    return save_complex(result.quotient, output)


def cmd_lift(config: RunConfig) -> Path:
    X = load_complex(_require(config.input, "--in"))
    lift = random_lift(X, config.r, config.seed)
    payload = complex_payload(lift.cover)
    payload["projection"] = list(lift.projection.vertex_map)
    path = write_json(_require(config.output, "--out"), payload)
    logger.info(f"Wrote {config.r}-fold lift with f-vector {lift.cover.f_vector} to {path}")
    return path


def cmd_scan(config: RunConfig) -> Report:
    """Alon–Boppana scan over generated family members of the given sizes."""
    if not config.sizes:
        raise InvalidParams("--sizes is required")
    if config.generator == "cycle":
        members = [cycle(n) for n in config.sizes]
        default = ReferenceSpectrum.tree(2)
    elif config.generator in (None, "regular"):
        k = _require(config.k, "--k")
        members = [random_regular(n, k, config.seed + offset) for offset, n in enumerate(config.sizes)]
        default = ReferenceSpectrum.tree(k)
    else:
        raise InvalidParams(f"scans support the cycle and regular generators, not {config.generator!r}")
    reference = parse_reference(config.reference) if config.reference else default
    constructor = family_constructor(parse_operator_names(config.operator), config.dim)
    scan = alon_boppana_scan(members, constructor, reference, threads=config.threads, seed=config.seed)
    return Report(
        metadata=run_metadata(config),
        config=config,
        operators=[config.operator],
        scan=scan.rows(),
        warnings=scan.warnings + ([] if scan.monotone else [f"covering radius not monotone: {scan.epsilons}"]),
    )


def emit(report: Report, output: Optional[str]) -> None:
    if output is None:
        print(report.model_dump_json(indent=2))
        return
    path = write_report(report, output)
    if report.spectrum:
        write_spectrum_csv(report, path.with_suffix(".csv"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlab", description="Spectra and Ramanujan verdicts for simplicial complexes")
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", dest="output")
        p.add_argument("--seed", type=int)
        p.add_argument("--threads", type=int)

    def spectral(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--dim", type=int, default=0)
        p.add_argument("--operator", default="adjacency", help="Comma-separated operator names")
        p.add_argument("--ref", dest="reference")
        p.add_argument("--tol", type=float)
        p.add_argument("--top", type=int)
        common(p)

    generate = commands.add_parser("generate", help="Write a generated complex")
    generate.add_argument("generator", choices=["cycle", "complete", "petersen", "prism", "regular", "torus", "tripartite", "circulant"])
    for flag in ("--n", "--m", "--k", "--d"):
        generate.add_argument(flag, type=int)
    generate.add_argument("--shifts", type=int, nargs="+")
    common(generate)

    building = commands.add_parser("building", help="Building balls")
    building_commands = building.add_subparsers(dest="action", required=True)
    ball = building_commands.add_parser("ball")
    for flag in ("--q", "--d", "--radius"):
        ball.add_argument(flag, type=int, required=True)
    ball.add_argument("--r", type=int, default=1)
    common(ball)

    quotient = commands.add_parser("quotient", help="Quotient by an admissible group action")
    quotient.add_argument("--in", dest="input", required=True)
    quotient.add_argument("--group", required=True)
    common(quotient)

    lift = commands.add_parser("lift", help="Random r-fold cover of a graph")
    lift.add_argument("--in", dest="input", required=True)
    lift.add_argument("--r", type=int, default=2)
    common(lift)

    spec = commands.add_parser("spec", help="Spectra and verdicts")
    spec_commands = spec.add_subparsers(dest="action", required=True)
    spectral(spec_commands.add_parser("compute"))
    spectral(spec_commands.add_parser("verdict"))

    scan = commands.add_parser("scan", help="Alon–Boppana family scans")
    scan_commands = scan.add_subparsers(dest="action", required=True)
    family = scan_commands.add_parser("family")
    family.add_argument("--generator", default="regular", choices=["regular", "cycle"])
    family.add_argument("--sizes", type=int, nargs="+", required=True)
    family.add_argument("--k", type=int)
    family.add_argument("--operator", default="adjacency")
    family.add_argument("--dim", type=int, default=0)
    family.add_argument("--ref", dest="reference")
    common(family)

    spectral(commands.add_parser("pipeline", help="Full verdict pipeline"))
    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    command = args.command if getattr(args, "action", None) is None else f"{args.command} {args.action}"
    fields = {key: value for key, value in vars(args).items() if value is not None}
    fields.pop("action", None)
    fields.pop("log_level", None)
    fields.pop("group", None)
    fields["command"] = command
    return RunConfig(**fields)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logging(args.log_level)
    try:
        config = to_config(args)
        if config.command == "generate":
            cmd_generate(config)
        elif config.command == "building ball":
            cmd_building_ball(config)
        elif config.command == "quotient":
            cmd_quotient(config, args.group)
        elif config.command == "lift":
            cmd_lift(config)
        elif config.command == "scan family":
            emit(cmd_scan(config), config.output)
        else:
            emit(cmd_pipeline(config), config.output)
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        return ValidationError.exit_code
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        return NumericalError.exit_code
    except RlabError as e:
        logger.error(f"{e}")
        return RlabError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
