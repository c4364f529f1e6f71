import logging
import logging.config
import sys
from contextvars import ContextVar
from typing import Any, Literal, MutableMapping, Optional, TypeAlias
from uuid import uuid4

import structlog

EventDict: TypeAlias = MutableMapping[str, Any]
LogFormat: TypeAlias = Literal["console", "json"]

# Identifier of the current command invocation
run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


def add_run_id(_, __, event_dict: EventDict) -> EventDict:
    if rid := run_id.get():
        event_dict["run_id"] = rid
    return event_dict


def new_run_id() -> str:
    rid = uuid4().hex
    run_id.set(rid)
    return rid


# Enrichment only; rendering is left to the formatters.
SHARED_PROCESSORS: tuple[structlog.typing.Processor, ...] = (
    structlog.contextvars.merge_contextvars,
    structlog.stdlib.add_log_level,
    structlog.stdlib.ExtraAdder(),
    structlog.processors.TimeStamper(fmt="iso", utc=True),
    add_run_id,
)


def _formatter(renderer: structlog.typing.Processor) -> dict[str, Any]:
    return {
        "()": structlog.stdlib.ProcessorFormatter,
        "processors": [
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            renderer,
        ],
        "foreign_pre_chain": SHARED_PROCESSORS,
    }


def build_logging_config(level: str, fmt: LogFormat) -> dict[str, Any]:
    """dictConfig for the root logger; records go to stderr, stdout carries command results."""
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "json": _formatter(structlog.processors.JSONRenderer(ensure_ascii=False)),
            "console": _formatter(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())),
        },
        "handlers": {
            "stderr": {
                "level": level,
                "class": "logging.StreamHandler",
                "stream": "ext://sys.stderr",
                "formatter": fmt,
            },
        },
        "root": {"handlers": ["stderr"], "level": level},
    }


def setup_logging(level: str = "INFO", fmt: LogFormat = "console") -> None:
    level = level.upper()
    logging.config.dictConfig(build_logging_config(level, fmt))
    # noinspection PyTypeChecker
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            *SHARED_PROCESSORS,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.CallsiteParameterAdder(
                {
                    structlog.processors.CallsiteParameter.FILENAME,
                    structlog.processors.CallsiteParameter.FUNC_NAME,
                    structlog.processors.CallsiteParameter.LINENO,
                }
            ),
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        # Commands and tests reconfigure the level between runs.
        cache_logger_on_first_use=False,
    )
