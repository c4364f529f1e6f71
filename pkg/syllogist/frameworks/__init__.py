from .aristotle import (
    CONCLUSION_TEMPLATE,
    FIGURE_TEMPLATES,
    VALID_MOODS,
    Figure,
    Letter,
    Mood,
    TermAssignment,
    all_moods,
    crisp_holds,
    instantiate,
    valid_moods,
)
