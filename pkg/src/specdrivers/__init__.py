"""Executable requirement templates and specification drivers checked by bounded execution."""

from .errors import (
    ConfigError,
    GuardError,
    InstantiationError,
    ModelMismatchError,
    ResolutionError,
    SpecDriverError,
    UnsupportedPatternError,
)
from .kernel import (
    ActionDef,
    ConditionDef,
    EquivalenceDef,
    Outcome,
    QueryDef,
    StateRef,
    SystemModel,
    Trace,
    Verdict,
    generate_trace,
)
from .temporal import (
    Pattern,
    PatternKind,
    Scope,
    check_pattern,
    check_requirement,
    get_template,
    instantiate_template,
    ltl_eval,
    pattern_to_ltl,
    template_catalog,
    verify_stimulus_response,
)
from .adt import AxiomDriver, DriverSuite, check_driver, check_suite, contract_divergence_probe
from .examples import build_fixture
from .engine import SuiteConfig, render_requirement, resolve_suite, run_suite, serialize_report

__version__ = "0.1.0"
