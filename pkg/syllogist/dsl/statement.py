from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from syllogist.numbers import QuantifierKind


class Statement(BaseModel):
    """"<quantifier> <subject> are <predicate>", optionally a lower bound ("≥")."""

    model_config = ConfigDict(frozen=True)

    quantifier: QuantifierKind
    subject: str
    predicate: str
    at_least: bool = False

    @field_validator("subject", "predicate")
    @classmethod
    def _check_term(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("term labels cannot be empty")
        if value != value.strip():
            raise ValueError("term labels cannot start or end with whitespace")
        if any(c in value for c in '"\n\r'):
            raise ValueError("term labels cannot contain quotes or line breaks")
        return value

    @model_validator(mode="after")
    def _check_distinct(self) -> "Statement":
        if self.subject == self.predicate:
            raise ValueError(f"subject and predicate must differ, got {self.subject!r} twice")
        return self


class Syllogism(BaseModel):
    model_config = ConfigDict(frozen=True)

    premises: tuple[Statement, ...]
    conclusion: Statement | None = None
