from .core import (
    BranchingResult,
    CatalogReport,
    CheckEntry,
    ConservationError,
    GammaError,
    branch,
    check_map,
    default_probes,
    gamma,
    gamma_of_result,
    verify_catalog,
)

__all__ = [
    "BranchingResult",
    "CatalogReport",
    "CheckEntry",
    "ConservationError",
    "GammaError",
    "branch",
    "check_map",
    "default_probes",
    "gamma",
    "gamma_of_result",
    "verify_catalog",
]

from .rules import RuleError, evaluate_rule_template, template_probes  # noqa: E402

__all__ += ["RuleError", "evaluate_rule_template", "template_probes"]
