import argparse
import sys
from typing import TYPE_CHECKING, NoReturn, Sequence

import structlog
from pydantic import ValidationError

from syllogist.config import RunConfig
from syllogist.dsl import PATTERN_NAMES
from syllogist.errors import USAGE_EXIT_CODE, ConfigError, SyllogistError
from syllogist.settings import get_settings
from syllogist.utils import TimeUsage, new_run_id, setup_logging, time_usage
from .commands import COMMANDS
from .output import emit

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors exiting 1 like every other usage error."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT_CODE, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="syllogist", description="Interval and fuzzy syllogistic reasoning.")
    parser.add_argument("--lexicon", help="quantifier lexicon (.json, .yaml); default $SYLLOGIST_LEXICON")
    parser.add_argument("--format", choices=["text", "json"], dest="output_format")
    parser.add_argument("--log-level")
    parser.add_argument("--log-format", choices=["console", "json"])
    parser.add_argument("--oracle-budget", type=int, help="largest model size for attained ranges")
    parser.add_argument("--sweep-step", type=float, help="grid step of the Pattern I search")
    parser.add_argument("--converse-step", type=float, help="grid step for unknown converse proportions")
    parser.add_argument("--alpha-resolution", type=int, help="number of α levels of fuzzy numbers")
    parser.add_argument("--tolerance", type=float)
    parser.add_argument("--upper-bound-form", choices=["derived", "printed"])

    commands = parser.add_subparsers(dest="command", required=True, metavar="<command>")

    infer = commands.add_parser("infer", help="conclude from a syllogism file")
    infer.add_argument("file")
    infer.add_argument("--pattern", choices=PATTERN_NAMES)
    infer.add_argument("--version", choices=["general", "particular"])
    infer.add_argument("--assume-inclusion", action="store_true", help="declare that every B is an A (mc)")
    infer.add_argument("--data", help="fuzzy sets used to check the mc inclusion")
    infer.add_argument("--mix", type=float, help="share of the first antecedent, |A|/(|A|+|B|)")
    infer.add_argument("--point", action="store_true", help="require a point antecedent result")

    check_mood = commands.add_parser("check-mood", help="decide a classical mood by model enumeration")
    check_mood.add_argument("mood", help="e.g. AAA-1")
    check_mood.add_argument("--max", type=int, help="largest model size")

    compat = commands.add_parser("compat", help="mood compatibility of the chaining patterns")
    compat.add_argument("--tables", action="store_true", help="print the Figure I tables")
    compat.add_argument("--grid-step", type=float, help="grid step of the converse sweep")

    evaluate = commands.add_parser("eval", help="truth degrees of statements over fuzzy sets")
    evaluate.add_argument("statements")
    evaluate.add_argument("--data", required=True)
    evaluate.add_argument("--tnorm", choices=["min", "product"])

    oracle_range = commands.add_parser("oracle-range", help="attained range of a proportion")
    oracle_range.add_argument("constraints")
    oracle_range.add_argument("--max", type=int, help="largest model size")

    lexicon = commands.add_parser("lexicon-validate", help="check a quantifier lexicon")
    lexicon.add_argument("path")

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig.from_settings(
            get_settings(),
            lexicon_path=args.lexicon,
            output_format=args.output_format,
            oracle_budget=args.oracle_budget,
            sweep_step=args.sweep_step,
            converse_step=args.converse_step,
            alpha_resolution=args.alpha_resolution,
            tolerance=args.tolerance,
            upper_bound_form=args.upper_bound_form,
            tnorm=getattr(args, "tnorm", None),
        )
    except ValidationError as e:
        errors = "; ".join(err["msg"] for err in e.errors())
        raise ConfigError(f"invalid configuration: {errors}") from e


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, args.log_format or settings.log_format)

    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=args.command)
    new_run_id()

    usage = TimeUsage()
    try:
        config = _run_config(args)
        with time_usage() as usage:
            result = COMMANDS[args.command](args, config)
        logger.debug("Command finished", **usage.log_fields())
    except SyllogistError as e:
        logger.error(
            "Command failed", error=e.message, error_type=type(e).__name__, **e.context, **usage.log_fields()
        )
        print(f"syllogist: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code

    emit(result, config.output_format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
