import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

import structlog
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from syllogist.errors import LexiconError
from syllogist.numbers import (
    Classical,
    ClassicalLetter,
    Fuzzy,
    QuantifierKind,
    TrapezoidalQuantifier,
    make_interval,
    quantifier_from_interval,
)
from syllogist.utils import read_yaml

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()

QuantifierScale = Literal["proportional", "absolute"]


class LexiconEntry(BaseModel):
    """One named quantifier: a trapezoid, an interval or a classical letter."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    trapezoid: tuple[float, float, float, float] | None = None
    interval: tuple[float, float] | None = None
    lower_open: bool = False
    upper_open: bool = False
    classical: ClassicalLetter | None = None
    kind: QuantifierScale = "proportional"
    symmetric: bool = False

    @model_validator(mode="after")
    def _check_value(self) -> "LexiconEntry":
        given = [v for v in (self.trapezoid, self.interval, self.classical) if v is not None]
        if len(given) != 1:
            raise ValueError("exactly one of 'trapezoid', 'interval' or 'classical' is required")
        if self.classical is not None and self.kind == "absolute":
            raise ValueError("classical letters are proportional")

        points = self.trapezoid or self.interval or ()
        if self.trapezoid is not None:
            TrapezoidalQuantifier.from_points(self.trapezoid)
        if self.interval is not None and self.interval[0] > self.interval[1]:
            raise ValueError(f"interval bounds out of order: {list(self.interval)}")
        if self.kind == "proportional" and any(not 0.0 <= p <= 1.0 for p in points):
            raise ValueError("proportional quantifiers must lie within [0, 1]")
        if self.kind == "absolute" and any(p < 0 for p in points):
            raise ValueError("absolute quantifiers count elements and cannot be negative")
        return self

    def quantifier(self, name: str) -> QuantifierKind:
        if self.classical is not None:
            return Classical(letter=self.classical, label=name)
        if self.trapezoid is not None:
            return Fuzzy(trapezoid=TrapezoidalQuantifier.from_points(self.trapezoid), label=name)
        assert self.interval is not None
        interval = make_interval(*self.interval, lower_open=self.lower_open, upper_open=self.upper_open)
        return quantifier_from_interval(interval, label=name)


def normalize_name(name: str) -> str:
    return " ".join(name.lower().split())


class Lexicon(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: dict[str, LexiconEntry] = {}
    source: str | None = None

    @classmethod
    def empty(cls) -> "Lexicon":
        return cls()

    @classmethod
    def from_mapping(cls, data: Any, source: str | None = None) -> "Lexicon":
        if not isinstance(data, dict):
            raise LexiconError("a lexicon must map quantifier names to entries", source=source)
        entries: dict[str, LexiconEntry] = {}
        for raw_name, raw_entry in data.items():
            name = normalize_name(str(raw_name))
            if not name or not all(w.replace("-", "").replace("'", "").isalpha() for w in name.split()):
                raise LexiconError("quantifier names must be words", source=source, name=raw_name)
            if name in entries:
                raise LexiconError("duplicate quantifier name", source=source, name=name)
            try:
                entries[name] = LexiconEntry.model_validate(raw_entry)
            except ValidationError as e:
                errors = "; ".join(err["msg"] for err in e.errors())
                raise LexiconError(f"invalid entry: {errors}", source=source, name=name) from e
        return cls(entries=entries, source=source)

    @property
    def names(self) -> list[str]:
        return sorted(self.entries)

    @property
    def max_phrase_words(self) -> int:
        return max((len(name.split()) for name in self.entries), default=0)

    @property
    def symmetric_labels(self) -> frozenset[str]:
        return frozenset(name for name, entry in self.entries.items() if entry.symmetric)

    def __contains__(self, name: str) -> bool:
        return normalize_name(name) in self.entries

    def entry(self, name: str) -> LexiconEntry | None:
        return self.entries.get(normalize_name(name))

    def quantifier(self, name: str) -> QuantifierKind | None:
        entry = self.entry(name)
        return entry.quantifier(normalize_name(name)) if entry is not None else None

    def is_absolute(self, quantifier: QuantifierKind) -> bool:
        if quantifier.label is None:
            return False
        entry = self.entry(quantifier.label)
        return entry is not None and entry.kind == "absolute"

    def reserved_words(self) -> frozenset[str]:
        """Lexicon names that a term must be quoted to use."""
        return frozenset(self.entries)


def load_lexicon(path: str | Path) -> Lexicon:
    """Read a JSON or YAML lexicon, chosen by file extension."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in (".json", ".yaml", ".yml"):
        raise LexiconError("lexicon files must be .json, .yaml or .yml", path=str(path))
    try:
        if suffix == ".json":
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        else:
            data = read_yaml(path)
    except (OSError, ValueError) as e:
        raise LexiconError(f"cannot read lexicon: {e}", path=str(path)) from e

    lexicon = Lexicon.from_mapping(data, source=str(path))
    logger.debug("Lexicon loaded", path=str(path), quantifiers=len(lexicon.entries))
    return lexicon
