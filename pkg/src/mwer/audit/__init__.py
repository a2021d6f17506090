"""Property audits of the preference axioms for each decision rule."""

from .checks import (
    AuditReport,
    Axiom,
    Comparison,
    MenuPolicy,
    Witness,
    belief_distance,
    check_axiom,
    check_mdc,
    check_prop1,
    check_theorem2_identity,
    evaluate_probe,
    never_strictly_optimal,
    replay,
    state_independent_outcomes,
)
from .generate import ScenarioParams, random_scenario
from .search import (
    EXPECTED,
    ROW_AXIOMS,
    Table4Cell,
    Table4Report,
    audit_axiom,
    build_probe,
    find_counterexample,
    table4_matrix,
)

__all__ = [
    "AuditReport",
    "Axiom",
    "Comparison",
    "EXPECTED",
    "MenuPolicy",
    "ROW_AXIOMS",
    "ScenarioParams",
    "Table4Cell",
    "Table4Report",
    "Witness",
    "audit_axiom",
    "belief_distance",
    "build_probe",
    "check_axiom",
    "check_mdc",
    "check_prop1",
    "check_theorem2_identity",
    "evaluate_probe",
    "find_counterexample",
    "never_strictly_optimal",
    "random_scenario",
    "replay",
    "state_independent_outcomes",
    "table4_matrix",
]
