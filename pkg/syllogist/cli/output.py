import json
import sys
from dataclasses import dataclass, field
from typing import Any, TextIO

from syllogist.compat import ANALYSED_PATTERNS, CompatReport, CompatVerdict, PatternId
from syllogist.config import OutputFormat
from syllogist.dsl import Statement, render_statement
from syllogist.frameworks.aristotle import VALID_MOODS, Figure
from syllogist.numbers import Interval, TrapezoidalQuantifier
from syllogist.oracle import AttainedRange, Validity, VennModel

PATTERN_TITLES = {
    PatternId.PATTERN_I: "Pattern I",
    PatternId.MC: "MC",
    PatternId.MPR: "MPR",
}


@dataclass
class CommandResult:
    """What a command prints: `text` for people, `data` for `--format json`."""

    text: str
    data: dict[str, Any] = field(default_factory=dict)


def emit(result: CommandResult, fmt: OutputFormat, stream: TextIO | None = None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        json.dump(result.data, stream, ensure_ascii=False, indent=2, sort_keys=False)
        stream.write("\n")
    else:
        stream.write(result.text.rstrip("\n") + "\n")


def interval_data(interval: Interval) -> dict[str, Any]:
    return {
        "lower": interval.lower,
        "upper": interval.upper,
        "lower_open": interval.lower_open,
        "upper_open": interval.upper_open,
        "text": interval.render(),
    }


def trapezoid_data(trapezoid: TrapezoidalQuantifier) -> dict[str, Any]:
    return {"points": list(trapezoid.points), "text": trapezoid.render()}


def statement_data(statement: Statement, reserved: frozenset[str] = frozenset()) -> dict[str, Any]:
    return {
        "text": render_statement(statement, reserved=reserved),
        "quantifier": statement.quantifier.kind,
        "subject": statement.subject,
        "predicate": statement.predicate,
        "at_least": statement.at_least,
    }


def model_data(model: VennModel) -> dict[str, Any]:
    return {"atoms": list(model.atoms), "inhabited": model.describe()}


def describe_model(model: VennModel) -> str:
    return ", ".join(f"{label}={count}" for label, count in model.describe().items()) or "empty"


def validity_data(mood_name: str, validity: Validity) -> dict[str, Any]:
    return {
        "mood": mood_name,
        "valid": validity.valid,
        "total_max": validity.total_max,
        "conclusive": validity.conclusive,
        "counterexample": model_data(validity.counterexample) if validity.counterexample else None,
    }


def validity_text(mood_name: str, validity: Validity) -> str:
    if validity.valid:
        scope = "" if validity.conclusive else f" up to {validity.total_max} elements"
        return f"{mood_name}: valid{scope}"
    assert validity.counterexample is not None
    return (
        f"{mood_name}: invalid\n"
        f"counterexample (A minor, B middle, C major): {describe_model(validity.counterexample)}"
    )


def attained_data(attained: AttainedRange) -> dict[str, Any]:
    return {
        "interval": interval_data(attained.interval),
        "lower": str(attained.lower),
        "upper": str(attained.upper),
        "admissible": attained.admissible,
        "total_max": attained.total_max,
        "lower_witness": model_data(attained.lower_witness),
        "upper_witness": model_data(attained.upper_witness),
    }


def attained_text(attained: AttainedRange) -> str:
    return "\n".join(
        [
            f"{attained.interval.render()}  (exact {attained.lower} .. {attained.upper})",
            f"admissible models: {attained.admissible} (up to {attained.total_max} elements)",
            f"minimum at: {describe_model(attained.lower_witness)}",
            f"maximum at: {describe_model(attained.upper_witness)}",
        ]
    )


def verdict_data(verdict: CompatVerdict) -> dict[str, Any]:
    return {
        "pattern": verdict.pattern.value,
        "mood": verdict.mood.name,
        "answer": verdict.answer,
        "reason": verdict.reason.value,
        "conclusion": interval_data(verdict.conclusion) if verdict.conclusion else None,
        "expected": interval_data(verdict.expected) if verdict.expected else None,
        "detail": verdict.detail,
        "confirmed": verdict.confirmed,
    }


def verdict_line(verdict: CompatVerdict) -> str:
    parts = [f"{verdict.pattern.value:<8}", f"{verdict.mood.name:<6}", f"{verdict.answer:<4}", verdict.reason.value]
    if verdict.conclusion is not None:
        assert verdict.expected is not None
        parts.append(f"computed {verdict.conclusion.render()} vs {verdict.expected.render()}")
    if verdict.detail:
        parts.append(f"({verdict.detail})")
    if verdict.confirmed is not None:
        parts.append("oracle: confirmed" if verdict.confirmed else "oracle: REFUTED")
    return "  ".join(parts)


def compat_tables_text(report: CompatReport) -> str:
    """Answer table for Figure I followed by the reason for every cell."""
    moods = VALID_MOODS[Figure.I]
    width = max(len(t) for t in PATTERN_TITLES.values()) + 2
    lines = ["Behaviour with respect to Figure I", ""]
    lines.append(" " * width + "  ".join(f"{m:<3}" for m in moods))
    for pattern in ANALYSED_PATTERNS:
        row = report.row(pattern)
        lines.append(f"{PATTERN_TITLES[pattern]:<{width}}" + "  ".join(f"{v.answer:<3}" for v in row))

    lines += ["", "Reasons"]
    for pattern in ANALYSED_PATTERNS:
        lines.extend(verdict_line(v) for v in report.row(pattern))

    mismatched = sum(1 for v in report.verdicts if v.mood.figure is not Figure.I)
    lines += ["", f"Figures II-IV: {mismatched} verdicts, all FigureMismatch"]
    if report.excluded:
        lines.append("Structurally excluded: " + ", ".join(p.value for p in report.excluded))
    for note in report.notes:
        lines += ["", f"Note: {note}"]
    return "\n".join(lines)


def compat_text(report: CompatReport) -> str:
    lines = [verdict_line(v) for v in report.verdicts]
    if report.excluded:
        lines.append("Structurally excluded: " + ", ".join(p.value for p in report.excluded))
    lines.extend(f"Note: {note}" for note in report.notes)
    return "\n".join(lines)


def compat_data(report: CompatReport) -> dict[str, Any]:
    return {
        "tables": {
            pattern.value: [v.answer for v in report.row(pattern)] for pattern in ANALYSED_PATTERNS
        },
        "verdicts": [verdict_data(v) for v in report.verdicts],
        "excluded": [p.value for p in report.excluded],
        "notes": list(report.notes),
    }
