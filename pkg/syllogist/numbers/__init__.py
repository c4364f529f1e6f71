from .fuzzy_number import (
    DEFAULT_ALPHA_RESOLUTION,
    AlphaCut,
    AlphaCutNumber,
    BoundedQuantifier,
    Composed,
    Fuzzy,
    TrapezoidalQuantifier,
    alpha_grid,
    defuzz_bounds,
    extension_principle_cuts,
    fz_add,
    fz_clamp_floor,
    fz_max,
    fz_mul,
    fz_scale,
    fz_sub,
)
from .interval import (
    CLASSICAL_INTERVALS,
    DEFAULT_TOLERANCE,
    Classical,
    ClassicalLetter,
    Imprecise,
    Interval,
    Precise,
    format_number,
    iv_add,
    iv_clamp_floor,
    iv_div,
    iv_entails,
    iv_hull,
    iv_max,
    iv_min,
    iv_mul,
    iv_scale,
    iv_span,
    iv_sub,
    make_interval,
    quantifier_from_interval,
)
from .quantifier import (
    CrispQuantifier,
    QuantifierKind,
    crisp_interval,
    is_crisp,
    is_symmetric,
    membership_degree,
    support_kernel,
    to_alpha_cuts,
    to_trapezoid,
)
