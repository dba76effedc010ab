"""Rough-set rule induction over discretized gas data, with equal frequency
binning or an ant-colony search for the cut points."""

from .aco import (
    AcoParams,
    AntSolution,
    IterationStats,
    PercentileGrid,
    PheromoneModel,
    construct_solution,
    evaluate_solution,
    initial_model,
    optimize,
    purity_eta,
    select_next,
    selection_probabilities,
    update_pheromones,
    write_history_csv,
)
from .data import DecisionTable, SplitSpec, clip_outliers, load_csv, split, write_csv
from .discretize import (
    CutSet,
    DiscretizedTable,
    apply_cuts,
    cuts_from_json,
    cuts_to_json,
    efb_cuts,
    percentile_to_cut,
    percentile_value_grid,
)
from .metrics import (
    ConfusionMatrix,
    EvaluationReport,
    RocCurve,
    accuracy,
    auc,
    confusion,
    evaluate_pipeline,
    report_to_json,
    roc,
    roc_to_csv,
)
from .roughset import (
    Approximation,
    Partition,
    Rule,
    RuleSet,
    approximate,
    classify,
    classify_table,
    induce_rules,
    membership,
    partition,
    ruleset_from_json,
    ruleset_to_json,
)
from .synth import (
    FAULT_GASES,
    GAS_NAMES,
    GasDistribution,
    GasProfile,
    default_profile,
    generate,
    load_profile,
    profile_from_json,
    profile_to_json,
)

__all__ = [
    "AcoParams",
    "AntSolution",
    "Approximation",
    "ConfusionMatrix",
    "CutSet",
    "DecisionTable",
    "DiscretizedTable",
    "EvaluationReport",
    "FAULT_GASES",
    "GAS_NAMES",
    "GasDistribution",
    "GasProfile",
    "IterationStats",
    "Partition",
    "PercentileGrid",
    "PheromoneModel",
    "RocCurve",
    "Rule",
    "RuleSet",
    "SplitSpec",
    "accuracy",
    "apply_cuts",
    "approximate",
    "auc",
    "classify",
    "classify_table",
    "clip_outliers",
    "confusion",
    "construct_solution",
    "cuts_from_json",
    "cuts_to_json",
    "default_profile",
    "efb_cuts",
    "evaluate_pipeline",
    "evaluate_solution",
    "generate",
    "induce_rules",
    "initial_model",
    "load_csv",
    "load_profile",
    "membership",
    "optimize",
    "partition",
    "percentile_to_cut",
    "percentile_value_grid",
    "profile_from_json",
    "profile_to_json",
    "purity_eta",
    "report_to_json",
    "roc",
    "roc_to_csv",
    "ruleset_from_json",
    "ruleset_to_json",
    "select_next",
    "selection_probabilities",
    "split",
    "update_pheromones",
    "write_csv",
    "write_history_csv",
]

__version__ = "0.1.0"
