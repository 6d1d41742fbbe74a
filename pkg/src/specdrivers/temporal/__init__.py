"""Temporal requirement templates, the pattern compiler and the finite-trace LTL oracle."""

from .ltl import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Const,
    Eventually,
    Formula,
    Implies,
    Next,
    Not,
    Or,
    Until,
    atoms,
    ltl_eval,
    pretty,
    satisfaction,
    weak_until,
)
from .monitor import monitor, segments
from .patterns import Pattern, PatternKind, Scope, UNSUPPORTED, pattern_to_ltl, required_slots, supported_pairs
from .templates import (
    DEFAULT_TIME_BOUNDARY,
    STIMULUS_RESPONSE,
    SlotDecl,
    TemporalRequirement,
    TemporalTemplate,
    check_pattern,
    check_requirement,
    get_template,
    instantiate_template,
    requirement_formula,
    template_catalog,
    verify_stimulus_response,
)
