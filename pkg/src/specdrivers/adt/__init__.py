"""Specification drivers for ADT axioms, frames, well-definedness and aliasing."""

from .drivers import (
    AxiomDriver,
    Call,
    DriverSuite,
    Env,
    InputGenerator,
    Lit,
    Param,
    Snapshot,
    aliasing_self_copy_driver,
    check_driver,
    check_suite,
    contract_divergence_probe,
    frame_check,
    run_driver,
    well_definedness_driver,
)
from .suites import build_queue_with_append_suite, build_stack_suite, build_tree_inord_suite, drain
