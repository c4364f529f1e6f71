from .files import (
    PATTERN_NAMES,
    PatternName,
    Premise,
    SyllogismFile,
    Version,
    check_arity,
    parse_file,
    parse_syllogism,
    pattern_arity,
)
from .lexicon import Lexicon, LexiconEntry, load_lexicon, normalize_name
from .parser import parse_statement, tokenize
from .render import render_operand, render_quantifier, render_statement, render_term, to_ascii
from .statement import Statement, Syllogism
