"""PART: a rule list built from repeatedly grown partial C4.5 trees.

Each round grows a partial tree on the instances not yet covered, turns its
best-covering leaf into a rule and removes what the rule covers. A partial
tree expands children in order of increasing entropy and stops expanding
siblings as soon as one child keeps a subtree; a node whose children all
ended up as leaves is considered for reduced-error replacement.

Rule lists render one rule per line::

    IF director_rank[6] <= 5.25 AND budget[5] > 1200000.0 THEN Poor (14.0/0.9285714285714286)
    DEFAULT Average
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..dataset import Dataset, Instance, PopularityClass, label_from_str
from ..errors import FormatError
from .core import (
    ClassDistribution,
    LearnerParams,
    Split,
    best_split_arrays,
    entropy,
    holdout_split,
)
from .tree import partition


@dataclass(frozen=True)
class Condition:
    attribute: int
    op: str
    threshold: float

    def __post_init__(self):
        if self.op not in ("<=", ">"):
            raise ValueError(f"unknown operator {self.op!r}")

    def holds(self, value) -> bool:
        if value is None or (isinstance(value, float) and np.isnan(value)):
            return False
        return value <= self.threshold if self.op == "<=" else value > self.threshold


@dataclass(frozen=True)
class Rule:
    conditions: tuple[Condition, ...]
    conclusion: PopularityClass
    coverage: float
    accuracy: float

    def __post_init__(self):
        if not 0.0 <= self.accuracy <= 1.0:
            raise ValueError("accuracy must lie in [0, 1]")

    def matches(self, values: Sequence) -> bool:
        return all(c.holds(values[c.attribute]) for c in self.conditions)


@dataclass(frozen=True)
class RuleList:
    rules: tuple[Rule, ...]
    default: PopularityClass

    def __len__(self):
        return len(self.rules)


def classify_rules(rules: RuleList, instance: Instance | Sequence) -> PopularityClass:
    values = instance.values if isinstance(instance, Instance) else instance
    for rule in rules.rules:
        if rule.matches(values):
            return rule.conclusion
    return rules.default


def simplify(conditions: Sequence[Condition]) -> tuple[Condition, ...]:
    """Keep the tightest ``<=`` and ``>`` bound per attribute, in first-seen order."""
    tight: dict[tuple[int, str], float] = {}
    for c in conditions:
        k = (c.attribute, c.op)
        if k not in tight:
            tight[k] = c.threshold
        elif c.op == "<=":
            tight[k] = min(tight[k], c.threshold)
        else:
            tight[k] = max(tight[k], c.threshold)
    return tuple(Condition(a, op, t) for (a, op), t in tight.items())


@dataclass
class _Partial:
    dist: ClassDistribution
    split: Split | None = None
    fallback: str = "low"
    children: list["_Partial"] = field(default_factory=list)
    expanded: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children


def _errors(y_prune: np.ndarray, dist: ClassDistribution) -> int:
    return int(np.count_nonzero(y_prune != dist.majority_index()))


def _route_prune(Xp, split: Split, fallback: str):
    col = Xp[:, split.attribute]
    go_low = np.where(np.isnan(col), fallback == "low", col <= split.threshold)
    return go_low


def _expand(X, y, w, Xp, yp, features, params: LearnerParams, prune: bool) -> _Partial:
    node = _Partial(ClassDistribution.of(y, w))
    if node.dist.total < 2 * params.min_leaf or node.dist.is_pure():
        node.expanded = True
        return node
    split = best_split_arrays(X, y, w, features, params.use_gain_ratio)
    if split is None:
        node.expanded = True
        return node
    low, high, fallback = partition(X, y, w, split)
    go_low = _route_prune(Xp, split, fallback)
    prune_parts = [(Xp[go_low], yp[go_low]), (Xp[~go_low], yp[~go_low])]
    grow_parts = [low, high]
    node.split, node.fallback = split, fallback
    node.children = [_Partial(ClassDistribution.of(part[1], part[2])) for part in grow_parts]
    order = sorted(range(2), key=lambda i: entropy(node.children[i].dist))
    for i in order:
        child = _expand(*grow_parts[i], *prune_parts[i], features, params, prune)
        node.children[i] = child
        if not child.is_leaf:
            break
    if prune and all(c.is_leaf and c.expanded for c in node.children):
        leaf_err = _errors(yp, node.dist)
        sub_err = sum(_errors(p[1], c.dist) for p, c in zip(prune_parts, node.children))
        if leaf_err <= sub_err:
            node.children = []
            node.split = None
            node.expanded = True
    node.expanded = True
    return node


def _final_leaves(node: _Partial, path=()):
    """(conditions, leaf) for every expanded leaf, low branch first."""
    if node.is_leaf:
        if node.expanded:
            yield path, node
        return
    s = node.split
    yield from _final_leaves(node.children[0], path + (Condition(s.attribute, "<=", s.threshold),))
    yield from _final_leaves(node.children[1], path + (Condition(s.attribute, ">", s.threshold),))


def part_learn(train: Dataset, params: LearnerParams = LearnerParams()) -> RuleList:
    if not len(train):
        raise ValueError("cannot learn rules from an empty dataset")
    X, y = train.matrix(), train.labels()
    features = train.feature_indices
    rng = np.random.default_rng(params.seed)
    remaining = np.arange(len(train))
    rules = []
    while remaining.size:
        Xr, yr = X[remaining], y[remaining]
        if params.use_pruning:
            grow, held = holdout_split(yr, params.prune_fraction, rng)
        else:
            grow, held = np.arange(remaining.size), np.arange(0)
        root = _expand(Xr[grow], yr[grow], np.ones(grow.size), Xr[held], yr[held],
                       features, params, params.use_pruning)
        candidates = sorted(_final_leaves(root), key=lambda item: -item[1].dist.total)
        chosen = None
        for conditions, leaf in candidates:
            if not conditions:
                break
            covered = np.array([all(c.holds(row[c.attribute]) for c in conditions) for row in Xr])
            if covered.any():
                chosen = (conditions, leaf, covered)
                break
        if chosen is None:
            break
        conditions, leaf, covered = chosen
        dist = leaf.dist
        rules.append(Rule(simplify(conditions), dist.majority(), dist.total,
                          dist.weights[dist.majority_index()] / dist.total))
        remaining = remaining[~covered]
    source = y[remaining] if remaining.size else y
    default = ClassDistribution.of(source).majority()
    return RuleList(tuple(rules), default)


def _cond_text(c: Condition, names) -> str:
    name = names[c.attribute] if names is not None else f"a{c.attribute}"
    return f"{name}[{c.attribute}] {c.op} {c.threshold!r}"


def render_rules(rules: RuleList, names: Sequence[str] | None = None) -> str:
    lines = []
    for r in rules.rules:
        cond = " AND ".join(_cond_text(c, names) for c in r.conditions) or "TRUE"
        lines.append(f"IF {cond} THEN {r.conclusion.value} ({r.coverage!r}/{r.accuracy!r})")
    lines.append(f"DEFAULT {rules.default.value}")
    return "\n".join(lines) + "\n"


_RULE_RE = re.compile(r"IF (?P<cond>.+) THEN (?P<label>\w+) \((?P<cov>[^/]+)/(?P<acc>[^)]+)\)")
_COND_RE = re.compile(r"\S+\[(?P<attr>\d+)\] (?P<op><=|>) (?P<thr>\S+)")


def parse_rules(text: str) -> RuleList:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[-1].startswith("DEFAULT "):
        raise FormatError("rule list must end with a DEFAULT line")
    rules = []
    try:
        for line in lines[:-1]:
            m = _RULE_RE.fullmatch(line)
            if m is None:
                raise FormatError(f"unrecognised rule line: {line!r}")
            conds = []
            if m["cond"] != "TRUE":
                for part in m["cond"].split(" AND "):
                    cm = _COND_RE.fullmatch(part)
                    if cm is None:
                        raise FormatError(f"unrecognised condition: {part!r}")
                    conds.append(Condition(int(cm["attr"]), cm["op"], float(cm["thr"])))
            rules.append(Rule(tuple(conds), label_from_str(m["label"]), float(m["cov"]), float(m["acc"])))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return RuleList(tuple(rules), label_from_str(lines[-1][len("DEFAULT "):]))
