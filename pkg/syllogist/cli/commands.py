import argparse
import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Callable, Sequence

import structlog
from pydantic import BaseModel, ConfigDict

from syllogist.compat import reproduce_tables
from syllogist.config import RunConfig
from syllogist.dsl import (
    Lexicon,
    Premise,
    Statement,
    SyllogismFile,
    check_arity,
    load_lexicon,
    parse_file,
    render_statement,
)
from syllogist.errors import (
    ConstraintViolated,
    SyllogismFileError,
    UsageError,
)
from syllogist.frameworks.aristotle import Mood
from syllogist.frameworks.dubois import (
    SLOT_PROPORTIONS,
    PatternIIInput,
    PatternIIIInput,
    PatternIInput,
    pattern1_fuzzy,
    pattern1_search,
    pattern23_fuzzy,
    pattern23_range,
)
from syllogist.frameworks.zadeh import (
    FuzzyData,
    ZadehPattern,
    check_inclusion,
    load_fuzzy_data,
    statement_truth,
    zadeh_conclude,
)
from syllogist.numbers import (
    BoundedQuantifier,
    Composed,
    Fuzzy,
    Interval,
    QuantifierKind,
    TrapezoidalQuantifier,
    is_crisp,
    is_symmetric,
    iv_entails,
    make_interval,
    quantifier_from_interval,
    to_alpha_cuts,
)
from syllogist.oracle import AttainedRange, Proportion, ProportionConstraint, attained_range, mood_valid
from .output import (
    CommandResult,
    attained_data,
    attained_text,
    compat_data,
    compat_tables_text,
    compat_text,
    interval_data,
    statement_data,
    validity_data,
    validity_text,
)

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()

Template = Sequence[tuple[str | None, str | None]]

CHAINING_TEMPLATES: dict[str, Template] = {
    "dubois1": (("A", "B"), ("B", "A"), ("B", "C"), ("C", "B")),
    "mc": (("A", "B"), ("B", "C")),
    "mpr": (("B", "A"), ("B", "C")),
    # The subject of the second premise is the compound "A and B".
    "intersection": (("A", "B"), (None, "C")),
    "antecedent-and": (("A", "C"), ("B", "C")),
    "antecedent-or": (("A", "C"), ("B", "C")),
    "consequent-and": (("A", "B"), ("A", "C")),
    "consequent-or": (("A", "B"), ("A", "C")),
}


def load_config_lexicon(config: RunConfig) -> Lexicon:
    if config.lexicon_path is None:
        return Lexicon.empty()
    return load_lexicon(config.lexicon_path)


# Inference


class Conclusion(BaseModel):
    model_config = ConfigDict(frozen=True)

    statement: Statement
    support: Interval
    kernel: Interval
    diagnostics: tuple[str, ...] = ()
    provenance: str | None = None


class ExpectedCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    statement: Statement
    line: int | None = None
    terms_match: bool
    entailed: bool


class InferenceResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pattern: str
    version: str | None = None
    conclusions: tuple[Conclusion, ...]
    expected: ExpectedCheck | None = None
    samples: int | None = None
    methods_agree: bool | None = None
    attained: AttainedRange | None = None


def _bind_terms(premises: Sequence[Premise], template: Template, pattern: str) -> dict[str, str]:
    """Term of each letter, checking that every premise follows the pattern's layout."""
    terms: dict[str, str] = {}
    for premise, letters in zip(premises, template):
        actual = (premise.statement.subject, premise.statement.predicate)
        for letter, term in zip(letters, actual):
            if letter is None:
                continue
            known = terms.setdefault(letter, term)
            if known != term:
                raise SyllogismFileError(
                    f"expected {known!r} in this position, got {term!r}",
                    line=premise.line,
                    pattern=pattern,
                )
    if len(set(terms.values())) != len(terms):
        raise SyllogismFileError("the premises use one term in two roles", pattern=pattern)
    return terms


def _letters_in_order(template: Template) -> list[str]:
    seen: list[str] = []
    for pair in template:
        seen.extend(letter for letter in pair if letter is not None and letter not in seen)
    return seen


def _reject_bounds(premises: Sequence[Premise]) -> None:
    for premise in premises:
        if premise.statement.at_least:
            raise SyllogismFileError("premises must be exact, not '≥' bounds", line=premise.line)


def _crisp_conclusion(interval: Interval, subject: str, predicate: str) -> Conclusion:
    statement = Statement(quantifier=quantifier_from_interval(interval), subject=subject, predicate=predicate)
    return Conclusion(statement=statement, support=interval, kernel=interval)


def _fuzzy_conclusion(trapezoid: TrapezoidalQuantifier, subject: str, predicate: str) -> Conclusion:
    statement = Statement(quantifier=Fuzzy(trapezoid=trapezoid), subject=subject, predicate=predicate)
    return Conclusion(statement=statement, support=trapezoid.support, kernel=trapezoid.kernel)


def _infer_pattern1(parsed: SyllogismFile, config: RunConfig) -> InferenceResult:
    template = CHAINING_TEMPLATES["dubois1"]
    terms = _bind_terms(parsed.premises, template, "dubois1")
    q1, q1_conv, q2, q2_conv = (p.statement.quantifier for p in parsed.premises)
    pattern = PatternIInput(q1=q1, q1_conv=q1_conv, q2=q2, q2_conv=q2_conv)
    options = config.search_options()
    a, c = terms["A"], terms["C"]

    if pattern.is_crisp:
        forward = pattern1_search(pattern, options)
        backward = pattern1_search(pattern.converse(), options)
        return InferenceResult(
            pattern="dubois1",
            conclusions=(
                _crisp_conclusion(forward.conclusion, a, c),
                _crisp_conclusion(backward.conclusion, c, a),
            ),
            samples=forward.samples + backward.samples,
            methods_agree=forward.agreed and backward.agreed,
        )

    return InferenceResult(
        pattern="dubois1",
        conclusions=(
            _fuzzy_conclusion(pattern1_fuzzy(pattern, options), a, c),
            _fuzzy_conclusion(pattern1_fuzzy(pattern.converse(), options), c, a),
        ),
    )


def _infer_pattern23(parsed: SyllogismFile, pattern_name: str, version: str, config: RunConfig) -> InferenceResult:
    input_type = PatternIIInput if pattern_name == "dubois2" else PatternIIIInput
    slots = input_type.required[version]  # type: ignore[index]
    template = tuple(
        (SLOT_PROPORTIONS[slot].denominator, SLOT_PROPORTIONS[slot].numerator) for slot in slots
    )
    terms = _bind_terms(parsed.premises, template, pattern_name)
    pattern = input_type.from_premises(version, [p.statement.quantifier for p in parsed.premises])  # type: ignore[arg-type]

    joined = " and ".join(terms[letter] for letter in _letters_in_order(template) if letter in ("A", "B"))
    subject, predicate = (joined, terms["C"]) if pattern_name == "dubois2" else (terms["C"], joined)

    options = config.oracle_options()
    if all(is_crisp(q) for q in pattern.slots.values()):
        attained = pattern23_range(pattern, options)
        return InferenceResult(
            pattern=pattern_name,
            version=version,
            conclusions=(_crisp_conclusion(attained.interval, subject, predicate),),
            attained=attained,
        )
    return InferenceResult(
        pattern=pattern_name,
        version=version,
        conclusions=(_fuzzy_conclusion(pattern23_fuzzy(pattern, options), subject, predicate),),
    )


def _mpr_template(parsed: SyllogismFile, lexicon: Lexicon) -> tuple[Template, tuple[str, ...]]:
    """MPR expects "Q1 Bs are As"; a first premise "Q1 As are Bs" is reversed if its quantifier is symmetric."""
    first, second = (p.statement for p in parsed.premises)
    if first.subject == second.subject:
        return CHAINING_TEMPLATES["mpr"], ()
    if first.predicate == second.subject:
        if not is_symmetric(first.quantifier, lexicon.symmetric_labels):
            raise SyllogismFileError(
                "the first premise must read 'Bs are As'; its quantifier is not symmetric, so it cannot be reversed",
                line=parsed.premises[0].line,
                pattern="mpr",
            )
        return (("A", "B"), ("B", "C")), ("first premise reversed under a symmetric quantifier",)
    return CHAINING_TEMPLATES["mpr"], ()


def _inclusion_holds(args: argparse.Namespace, data: FuzzyData | None, terms: dict[str, str]) -> bool:
    if args.assume_inclusion:
        return True
    if data is None:
        raise ConstraintViolated(
            "every B must be an A; declare it with --assume-inclusion or check it with --data",
            constraint="B ⊆ A",
        )
    holds = check_inclusion(data.get(terms["B"]), data.get(terms["A"]))
    logger.debug("Inclusion checked against data", subset=terms["B"], superset=terms["A"], holds=holds)
    return holds


def _zadeh_statement(
    bounded: BoundedQuantifier,
    expression: str | None,
    subject: str,
    predicate: str,
) -> Statement:
    core = bounded.core
    quantifier: QuantifierKind
    if expression is not None:
        quantifier = Composed(expression=expression, value=core)
    elif core.is_crisp:
        quantifier = quantifier_from_interval(core.support)
    else:
        quantifier = Fuzzy(trapezoid=core.as_trapezoid())
    return Statement(quantifier=quantifier, subject=subject, predicate=predicate, at_least=bounded.mode == "at_least")


def _infer_zadeh(
    parsed: SyllogismFile,
    pattern_name: str,
    args: argparse.Namespace,
    config: RunConfig,
    lexicon: Lexicon,
) -> InferenceResult:
    pattern = ZadehPattern(pattern_name)
    notes: tuple[str, ...] = ()
    if pattern is ZadehPattern.MPR:
        template, notes = _mpr_template(parsed, lexicon)
    else:
        template = CHAINING_TEMPLATES[pattern_name]
    terms = _bind_terms(parsed.premises, template, pattern_name)
    first, second = (p.statement for p in parsed.premises)
    data = load_fuzzy_data(args.data) if getattr(args, "data", None) else None
    constraint_ok = pattern is ZadehPattern.MC and _inclusion_holds(args, data, terms)

    resolution = config.alpha_resolution
    cuts = (to_alpha_cuts(first.quantifier, resolution), to_alpha_cuts(second.quantifier, resolution))
    result = zadeh_conclude(
        pattern,
        first.quantifier,
        second.quantifier,
        cuts,
        constraint_ok=constraint_ok,
        mix=getattr(args, "mix", None),
        point=getattr(args, "point", False),
    )

    if pattern.is_chaining:
        subject, predicate = terms["A"], terms["C"]
    elif pattern is ZadehPattern.INTERSECTION:
        subject, predicate = terms["A"], f"{terms['B']} and {terms['C']}"
    elif pattern.is_antecedent:
        connective = "and" if pattern is ZadehPattern.ANTECEDENT_AND else "or"
        subject, predicate = f"{terms['A']} {connective} {terms['B']}", terms["C"]
    else:
        connective = "and" if pattern is ZadehPattern.CONSEQUENT_AND else "or"
        subject, predicate = terms["A"], f"{terms['B']} {connective} {terms['C']}"

    effective = result.value
    conclusion = Conclusion(
        statement=_zadeh_statement(result.quantifier, result.expression, subject, predicate),
        support=effective.support,
        kernel=effective.kernel,
        diagnostics=notes + result.diagnostics,
        provenance=result.provenance,
    )
    return InferenceResult(pattern=pattern_name, conclusions=(conclusion,))


def _check_expected(parsed: SyllogismFile, conclusion: Conclusion, resolution: int) -> ExpectedCheck | None:
    expected = parsed.expected
    if expected is None:
        return None
    cuts = to_alpha_cuts(expected.quantifier, resolution)
    bound = BoundedQuantifier.at_least(cuts) if expected.at_least else BoundedQuantifier(core=cuts)
    effective = bound.effective()
    entailed = iv_entails(conclusion.support, effective.support) and iv_entails(conclusion.kernel, effective.kernel)
    terms_match = (expected.subject, expected.predicate) == (
        conclusion.statement.subject,
        conclusion.statement.predicate,
    )
    return ExpectedCheck(statement=expected, line=parsed.expected_line, terms_match=terms_match, entailed=entailed)


def infer(
    parsed: SyllogismFile,
    args: argparse.Namespace,
    config: RunConfig,
    lexicon: Lexicon,
) -> InferenceResult:
    pattern_name = args.pattern or parsed.pattern
    if pattern_name is None:
        raise UsageError("no pattern given; use --pattern or a 'pattern:' line in the file")
    if args.pattern and parsed.pattern and args.pattern != parsed.pattern:
        raise UsageError("--pattern disagrees with the file's pattern line", option=args.pattern, file=parsed.pattern)
    version = args.version or parsed.version or "general"
    check_arity(pattern_name, version, len(parsed.premises))
    _reject_bounds(parsed.premises)

    log = logger.bind(pattern=pattern_name, version=version, premises=len(parsed.premises))
    log.debug("Running inference")
    if pattern_name == "dubois1":
        result = _infer_pattern1(parsed, config)
    elif pattern_name in ("dubois2", "dubois3"):
        result = _infer_pattern23(parsed, pattern_name, version, config)
    else:
        result = _infer_zadeh(parsed, pattern_name, args, config, lexicon)

    for note in (d for c in result.conclusions for d in c.diagnostics):
        log.warning("Conclusion diagnostic", diagnostic=note)
    if result.methods_agree is False:
        log.warning("Vertex and grid search disagree")

    expected = _check_expected(parsed, result.conclusions[0], config.alpha_resolution)
    return result.model_copy(update={"expected": expected})


def _inference_text(result: InferenceResult, reserved: frozenset[str]) -> str:
    lines = []
    for conclusion in result.conclusions:
        lines.append(render_statement(conclusion.statement, reserved=reserved))
        if not conclusion.support == conclusion.kernel:
            lines.append(f"  support {conclusion.support.render()}, kernel {conclusion.kernel.render()}")
        lines.extend(f"  note: {d}" for d in conclusion.diagnostics)
    if result.attained is not None:
        attained = result.attained
        lines.append(f"  exact bounds {attained.lower} .. {attained.upper} over {attained.admissible} models")
    if result.expected is not None:
        check = result.expected
        verdict = "entailed" if check.entailed and check.terms_match else "NOT entailed"
        detail = "" if check.terms_match else " (terms differ)"
        lines.append(f"expected: {render_statement(check.statement, reserved=reserved)}: {verdict}{detail}")
    return "\n".join(lines)


def _inference_data(result: InferenceResult, reserved: frozenset[str]) -> dict[str, Any]:
    return {
        "pattern": result.pattern,
        "version": result.version,
        "conclusions": [
            {
                "statement": statement_data(c.statement, reserved),
                "support": interval_data(c.support),
                "kernel": interval_data(c.kernel),
                "diagnostics": list(c.diagnostics),
                "provenance": c.provenance,
            }
            for c in result.conclusions
        ],
        "samples": result.samples,
        "methods_agree": result.methods_agree,
        "attained": attained_data(result.attained) if result.attained else None,
        "expected": (
            {
                "statement": statement_data(result.expected.statement, reserved),
                "line": result.expected.line,
                "terms_match": result.expected.terms_match,
                "entailed": result.expected.entailed,
            }
            if result.expected
            else None
        ),
    }


def cmd_infer(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    lexicon = load_config_lexicon(config)
    parsed = parse_file(args.file, lexicon, config.alpha_resolution)
    result = infer(parsed, args, config, lexicon)
    reserved = lexicon.reserved_words()
    return CommandResult(text=_inference_text(result, reserved), data=_inference_data(result, reserved))


# Oracle and compatibility


def cmd_check_mood(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    mood = Mood.parse(args.mood)
    total_max = args.max if args.max is not None else config.mood_budget
    validity = mood_valid(mood, total_max)
    return CommandResult(text=validity_text(mood.name, validity), data=validity_data(mood.name, validity))


def cmd_compat(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    options = config.search_options()
    if args.grid_step is not None:
        if not 0.0 < args.grid_step <= 0.5:
            raise UsageError("grid step must lie in (0, 0.5]", grid_step=args.grid_step)
        options = options.model_copy(update={"converse_step": args.grid_step})
    report = reproduce_tables(options, config.alpha_resolution, confirm_budget=config.mood_budget)
    text = compat_tables_text(report) if args.tables else compat_text(report)
    return CommandResult(text=text, data=compat_data(report))


class ConstraintSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    numerator: str
    denominator: str
    bounds: tuple[float, float]
    lower_open: bool = False
    upper_open: bool = False

    def constraint(self) -> ProportionConstraint:
        bounds = make_interval(*self.bounds, lower_open=self.lower_open, upper_open=self.upper_open, proportional=True)
        return ProportionConstraint(numerator=self.numerator, denominator=self.denominator, bounds=bounds)


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    constraints: list[ConstraintSpec] = []
    target: Proportion


def read_oracle_request(path: str | Path) -> OracleRequest:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return OracleRequest.model_validate(json.load(f))
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read constraints: {e}", path=str(path)) from e


def cmd_oracle_range(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    request = read_oracle_request(args.constraints)
    options = config.oracle_options(args.max)
    attained = attained_range(
        [spec.constraint() for spec in request.constraints],
        request.target,
        total_max=options.total_max,
        model_limit=options.model_limit,
    )
    data = attained_data(attained)
    data["target"] = request.target.render()
    return CommandResult(text=f"{request.target.render()} ∈ {attained_text(attained)}", data=data)


# Fuzzy data and lexicons


def cmd_eval(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    lexicon = load_config_lexicon(config)
    parsed = parse_file(args.statements, lexicon, config.alpha_resolution)
    data = load_fuzzy_data(args.data)
    tnorm = args.tnorm or config.tnorm
    reserved = lexicon.reserved_words()

    statements = [(p.statement, p.line) for p in parsed.premises]
    if parsed.expected is not None:
        statements.append((parsed.expected, parsed.expected_line or 0))

    rows = []
    for statement, line in statements:
        if statement.at_least:
            raise SyllogismFileError("'≥' bounds cannot be evaluated against data", line=line)
        truth = statement_truth(
            statement.quantifier,
            data.get(statement.subject),
            data.get(statement.predicate),
            tnorm=tnorm,
            absolute=lexicon.is_absolute(statement.quantifier),
        )
        rows.append({"statement": statement_data(statement, reserved), "line": line, "truth": truth})

    text = "\n".join(f"{row['truth']:.4f}  {row['statement']['text']}" for row in rows)
    return CommandResult(text=text, data={"tnorm": tnorm, "results": rows})


def cmd_lexicon_validate(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    lexicon = load_lexicon(args.path)
    rows = []
    for name in lexicon.names:
        entry = lexicon.entries[name]
        quantifier = entry.quantifier(name)
        if entry.trapezoid is not None:
            value = TrapezoidalQuantifier.from_points(entry.trapezoid).render()
        elif entry.classical is not None:
            value = entry.classical.value
        else:
            value = quantifier.interval.render()  # type: ignore[union-attr]
        rows.append({"name": name, "kind": entry.kind, "symmetric": entry.symmetric, "value": value})

    lines = [f"{lexicon.source}: {len(rows)} quantifiers"]
    lines += [
        f"  {r['name']}: {r['value']} ({r['kind']}{', symmetric' if r['symmetric'] else ''})" for r in rows
    ]
    return CommandResult(text="\n".join(lines), data={"source": lexicon.source, "quantifiers": rows})


Handler = Callable[[argparse.Namespace, RunConfig], CommandResult]

COMMANDS: dict[str, Handler] = {
    "infer": cmd_infer,
    "check-mood": cmd_check_mood,
    "compat": cmd_compat,
    "eval": cmd_eval,
    "oracle-range": cmd_oracle_range,
    "lexicon-validate": cmd_lexicon_validate,
}

