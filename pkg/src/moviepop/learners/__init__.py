"""C4.5 trees with reduced-error pruning, PART rule lists and attribute ranking."""

from .core import (
    AttributeRank,
    ClassDistribution,
    LearnerParams,
    Split,
    best_split,
    choose_split,
    entropy,
    holdout_split,
    numeric_split_gain,
    rank_attributes,
)
from .part import Condition, Rule, RuleList, classify_rules, parse_rules, part_learn, render_rules
from .tree import (
    DecisionTree,
    Leaf,
    Node,
    classify_tree,
    grow_tree,
    node_count,
    parse_tree,
    reduced_error_prune,
    render_tree,
    train_c45,
)

__all__ = [
    "AttributeRank",
    "best_split",
    "choose_split",
    "ClassDistribution",
    "classify_rules",
    "classify_tree",
    "Condition",
    "DecisionTree",
    "entropy",
    "grow_tree",
    "holdout_split",
    "Leaf",
    "LearnerParams",
    "Node",
    "node_count",
    "numeric_split_gain",
    "parse_rules",
    "parse_tree",
    "part_learn",
    "rank_attributes",
    "reduced_error_prune",
    "render_rules",
    "render_tree",
    "Rule",
    "RuleList",
    "Split",
    "train_c45",
]
