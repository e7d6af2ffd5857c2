"""vizlint: lint and repair grammar-of-graphics chart specs."""

from .actions import Action, ActionError, apply_action, apply_actions
from .bip import Assignment, InfeasibleError, solve
from .facts import Fact, FactBase, extract_facts, fact_count_bound
from .fixer import (
    FixConfig,
    FixError,
    FixPlan,
    ScoredAction,
    Weights,
    fix,
    load_config,
    score_sets,
)
from .profiling import DataError, DatasetProfile, UnknownColumnError, profile_dataset
from .rules import (
    LintError,
    LintRule,
    RuleCatalog,
    RuleSemanticError,
    RuleSyntaxError,
    Violation,
    explain,
    lint,
    load_default_catalog,
    parse_rules,
)
from .spec_model import (
    ChartSpec,
    SpecParseError,
    SpecStructureError,
    VizlintError,
    apply_diff,
    diff_specs,
    parse_spec,
    parse_spec_dict,
    serialize_spec,
    spec_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionError",
    "Assignment",
    "ChartSpec",
    "DataError",
    "DatasetProfile",
    "Fact",
    "FactBase",
    "FixConfig",
    "FixError",
    "FixPlan",
    "InfeasibleError",
    "LintError",
    "LintRule",
    "RuleCatalog",
    "RuleSemanticError",
    "RuleSyntaxError",
    "ScoredAction",
    "SpecParseError",
    "SpecStructureError",
    "UnknownColumnError",
    "Violation",
    "VizlintError",
    "Weights",
    "apply_action",
    "apply_actions",
    "apply_diff",
    "diff_specs",
    "explain",
    "extract_facts",
    "fact_count_bound",
    "fix",
    "lint",
    "lint_spec",
    "load_config",
    "load_default_catalog",
    "parse_rules",
    "parse_spec",
    "parse_spec_dict",
    "profile_dataset",
    "score_sets",
    "serialize_spec",
    "solve",
    "spec_to_dict",
    "__version__",
]


def lint_spec(spec, profile=None, catalog=None):
    """Lint a ChartSpec: extract facts, evaluate the default catalog."""
    if catalog is None:
        catalog = load_default_catalog()
    return lint(extract_facts(spec, profile), catalog)
