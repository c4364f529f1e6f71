from typing import Any

USAGE_EXIT_CODE = 1
SEMANTIC_EXIT_CODE = 2


class SyllogistError(ValueError):
    """Base class for every error raised by the engines, the DSL and the CLI."""

    exit_code: int = SEMANTIC_EXIT_CODE

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context: dict[str, Any] = {k: v for k, v in context.items() if v is not None}

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{self.message} ({details})"


# Usage / parse errors


class UsageError(SyllogistError):
    exit_code = USAGE_EXIT_CODE


class ConfigError(UsageError):
    ...


class DslSyntaxError(UsageError):
    def __init__(self, message: str, position: int | None = None, **context: Any) -> None:
        super().__init__(message, position=position, **context)
        self.position = position


class UnknownQuantifier(UsageError):
    ...


class MalformedInterval(UsageError):
    ...


class LexiconError(UsageError):
    ...


class SyllogismFileError(UsageError):
    def __init__(self, message: str, line: int | None = None, **context: Any) -> None:
        super().__init__(message, line=line, **context)
        self.line = line


class PatternArityError(UsageError):
    ...


# Semantic errors


class DivisionByZeroInterval(SyllogistError):
    ...


class MismatchedAlphaGrid(SyllogistError):
    ...


class EmptyTerm(SyllogistError):
    ...


class EmptySubject(SyllogistError):
    ...


class ZeroConverse(SyllogistError):
    ...


class InconsistentPremises(SyllogistError):
    ...


class KernelNotInSupport(SyllogistError):
    ...


class Unsatisfiable(SyllogistError):
    ...


UnsatisfiablePremises = Unsatisfiable


class UndefinedProportion(SyllogistError):
    ...


class ConstraintViolated(SyllogistError):
    ...


class MissingMixRatio(SyllogistError):
    ...


class ModelLimitExceeded(SyllogistError):
    ...
