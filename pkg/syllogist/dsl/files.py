import re
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict

from syllogist.errors import PatternArityError, SyllogismFileError, SyllogistError
from syllogist.numbers import DEFAULT_ALPHA_RESOLUTION
from .lexicon import Lexicon
from .parser import parse_statement
from .statement import Statement

PatternName = Literal[
    "dubois1",
    "dubois2",
    "dubois3",
    "mc",
    "mpr",
    "intersection",
    "antecedent-and",
    "antecedent-or",
    "consequent-and",
    "consequent-or",
]
Version = Literal["general", "particular"]

PATTERN_NAMES: tuple[str, ...] = PatternName.__args__  # type: ignore[attr-defined]

SEPARATOR = "---"

_PATTERN_LINE = re.compile(r"^pattern\s*:\s*(?P<name>[\w-]+)(?:\s+(?P<version>general|particular))?\s*$", re.IGNORECASE)


def pattern_arity(pattern: str, version: Version | None = None) -> int:
    """Number of premises a pattern takes."""
    if pattern == "dubois1":
        return 4
    if pattern == "dubois2":
        return 4 if version == "particular" else 6
    if pattern == "dubois3":
        return 2 if version == "particular" else 6
    return 2


def check_arity(pattern: str, version: Version | None, count: int, line: int | None = None) -> None:
    expected = pattern_arity(pattern, version)
    if count != expected:
        raise PatternArityError(
            f"{pattern} takes {expected} premises, got {count}",
            pattern=pattern,
            version=version,
            line=line,
        )


class Premise(BaseModel):
    model_config = ConfigDict(frozen=True)

    statement: Statement
    line: int


class SyllogismFile(BaseModel):
    model_config = ConfigDict(frozen=True)

    path: str | None = None
    pattern: str | None = None
    version: Version | None = None
    premises: tuple[Premise, ...]
    expected: Statement | None = None
    expected_line: int | None = None

    @property
    def statements(self) -> list[Statement]:
        return [p.statement for p in self.premises]


def parse_syllogism(
    text: str,
    lexicon: Lexicon | None = None,
    resolution: int = DEFAULT_ALPHA_RESOLUTION,
    path: str | None = None,
) -> SyllogismFile:
    """One statement per line, '#' comments, '---' before the expected conclusion."""
    pattern: str | None = None
    version: Version | None = None
    premises: list[Premise] = []
    expected: Statement | None = None
    expected_line: int | None = None
    after_separator = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue

        if line == SEPARATOR:
            if after_separator:
                raise SyllogismFileError("more than one separator", line=number, path=path)
            after_separator = True
            continue

        if match := _PATTERN_LINE.match(line):
            if premises or after_separator or pattern is not None:
                raise SyllogismFileError("the pattern line must come first", line=number, path=path)
            pattern = match.group("name").lower()
            if pattern not in PATTERN_NAMES:
                raise SyllogismFileError(f"unknown pattern {pattern!r}", line=number, path=path)
            version = match.group("version").lower() if match.group("version") else None  # type: ignore[assignment]
            continue

        try:
            statement = parse_statement(line, lexicon, resolution)
        except SyllogistError as e:
            context = {**e.context, "line": number, "path": path}
            raise type(e)(e.message, **context) from e

        if after_separator:
            if expected is not None:
                raise SyllogismFileError("only one expected conclusion is allowed", line=number, path=path)
            expected, expected_line = statement, number
        else:
            premises.append(Premise(statement=statement, line=number))

    if not premises:
        raise SyllogismFileError("no premises found", line=None, path=path)
    if pattern is not None:
        check_arity(pattern, version, len(premises))

    return SyllogismFile(
        path=path,
        pattern=pattern,
        version=version,
        premises=tuple(premises),
        expected=expected,
        expected_line=expected_line,
    )


def _strip_comment(raw: str) -> str:
    """Drop a '#' comment that is not inside a quoted term."""
    inside = False
    for i, char in enumerate(raw):
        if char == '"':
            inside = not inside
        elif char == "#" and not inside:
            return raw[:i].strip()
    return raw.strip()


def parse_file(
    path: str | Path,
    lexicon: Lexicon | None = None,
    resolution: int = DEFAULT_ALPHA_RESOLUTION,
) -> SyllogismFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SyllogismFileError(f"cannot read syllogism file: {e}", path=str(path)) from e
    return parse_syllogism(text, lexicon, resolution, path=str(path))
