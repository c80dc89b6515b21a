"""Command-line entry point.

Exit codes: 0 indistinguishable / pass, 1 distinguishable / fail, 2 usage or computation
error (with a JSON error body on stderr).
"""

import logging
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from posenc_wl.cli.commands import COMMANDS
from posenc_wl.cli.dependencies import ArgumentParser, get_current_settings, settings_overrides
from posenc_wl.core.exceptions import CliUsageError, PosEncError
from posenc_wl.models.schemas import CliConfig, EngineKind, ErrorResponse, ReportFormat
from posenc_wl.utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_ERROR = 2


def build_parser() -> ArgumentParser:
    settings = get_current_settings()
    common = ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output path (default: stdout)")
    common.add_argument("--format", dest="report_format", choices=[f.value for f in ReportFormat])
    common.add_argument("--jobs", type=int, help="pair-level workers (0 = all cores)")
    common.add_argument("--seed", type=int)
    common.add_argument("--quant-step", dest="quant_step", type=float)
    common.add_argument("--log-level", dest="log_level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    parser = ArgumentParser(prog="posenc-wl", description=settings.DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for module in COMMANDS.values():
        module.register(sub, [common])
    return parser


def to_config(args) -> CliConfig:
    """Validate the parsed flags; unset flags fall back to the environment-derived settings."""
    settings = get_current_settings()
    engine = getattr(args, "engine", None)
    try:
        return CliConfig(
            command=args.command,
            input=getattr(args, "input", None),
            output=args.output,
            encoding=getattr(args, "rpe", None) or getattr(args, "ape", None),
            engine=engine if engine in {e.value for e in EngineKind} else None,
            test=getattr(args, "test", None),
            corpus=getattr(args, "corpus", None),
            theorem=getattr(args, "theorem", None),
            quant_step=args.quant_step,
            seed=settings.SEED if args.seed is None else args.seed,
            jobs=settings.JOBS if args.jobs is None else args.jobs,
            report_format=args.report_format or settings.REPORT_FORMAT,
            options={"encodings": getattr(args, "encodings", None), "family": getattr(args, "family", None)},
        )
    except ValidationError as e:
        raise CliUsageError("invalid flags", {"errors": e.errors(include_url=False, include_context=False)}) from e


def _error_body(body: ErrorResponse) -> int:
    sys.stderr.write(body.model_dump_json() + "\n")
    sys.stderr.flush()
    return EXIT_ERROR


def _fail(exc: PosEncError) -> int:
    details = dict(exc.details)
    frames = traceback.extract_tb(exc.__traceback__)
    if frames:
        details.setdefault("module", Path(frames[-1].filename).stem)
    return _error_body(ErrorResponse(error=type(exc).__name__, message=exc.message, details=details))


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv``, run the sub-command and return its exit status.

    Args:
        argv: Arguments without the program name (default: ``sys.argv[1:]``)

    Returns:
        0, 1 or 2
    """
    try:
        args = build_parser().parse_args(argv)
        config = to_config(args)
    except SystemExit as e:  # --help and --version
        return int(e.code or 0)
    except PosEncError as e:
        return _fail(e)

    setup_logging(args.log_level)
    try:
        with settings_overrides(config) as settings:
            logger.debug(f"Running {config.command}", extra={"details": config.model_dump(mode="json")})
            return COMMANDS[config.command].handle(args, settings)
    except PosEncError as e:
        logger.error(f"{config.command} failed: {e.message}", extra={"details": e.details})
        return _fail(e)
    except Exception as e:
        logger.error(f"Unhandled exception: {str(e)}", exc_info=True)
        return _error_body(
            ErrorResponse(
                error="InternalError",
                message="An unexpected error occurred",
                details={"exception": type(e).__name__, "reason": str(e)},
            )
        )


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
