"""C4.5-style decision trees over numeric features with reduced-error pruning.

Text rendering, one node per line, children indented under their parent
(low branch first)::

    director_rank[6] <= 5.25 (10.0/12.0/30.0/2.0) fallback=high gain=0.61 ratio=0.72
    |   -> Poor (0.0/2.0/28.0/2.0)
    |   -> Average (10.0/10.0/2.0/0.0)

The weights in parentheses are the growing-set class distribution in label
order; ``render_tree`` and ``parse_tree`` round-trip exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..dataset import Dataset, Instance, PopularityClass, label_from_str
from ..errors import FormatError
from .core import (
    ClassDistribution,
    LearnerParams,
    Split,
    best_split_arrays,
    holdout_split,
)


@dataclass(frozen=True)
class Leaf:
    distribution: ClassDistribution

    @property
    def label(self) -> PopularityClass:
        return self.distribution.majority()


@dataclass(frozen=True)
class Node:
    split: Split
    low: "DecisionTree"
    high: "DecisionTree"
    fallback: str
    distribution: ClassDistribution

    def __post_init__(self):
        if self.fallback not in ("low", "high"):
            raise ValueError(f"fallback must be 'low' or 'high', not {self.fallback!r}")

    def child(self, branch: str) -> "DecisionTree":
        return self.low if branch == "low" else self.high


DecisionTree = Union[Leaf, Node]


def route(split: Split, value) -> str | None:
    """Branch for a value at a split; ``None`` when the value is missing."""
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return None
    return "low" if value <= split.threshold else "high"


def partition(X, y, w, split: Split):
    """Split weighted rows in two; missing values go both ways in proportion
    to the known weight on each side. Returns ((low rows), (high rows), fallback)."""
    col = X[:, split.attribute]
    known = ~np.isnan(col)
    low_mask = known & (col <= split.threshold)
    high_mask = known & (col > split.threshold)
    wl, wh = w[low_mask].sum(), w[high_mask].sum()
    p_low = wl / (wl + wh)
    fallback = "low" if wl >= wh else "high"
    parts = []
    for mask, share in ((low_mask, p_low), (high_mask, 1.0 - p_low)):
        rows_w = np.where(mask, w, np.where(known, 0.0, w * share))
        keep = rows_w > 0
        parts.append((X[keep], y[keep], rows_w[keep]))
    return parts[0], parts[1], fallback


def _grow(X, y, w, features, params: LearnerParams) -> DecisionTree:
    dist = ClassDistribution.of(y, w)
    if dist.total < 2 * params.min_leaf or dist.is_pure():
        return Leaf(dist)
    split = best_split_arrays(X, y, w, features, params.use_gain_ratio)
    if split is None:
        return Leaf(dist)
    low, high, fallback = partition(X, y, w, split)
    return Node(split, _grow(*low, features, params), _grow(*high, features, params), fallback, dist)


def grow_tree(train: Dataset, params: LearnerParams = LearnerParams()) -> DecisionTree:
    """Grow an unpruned tree on every instance of ``train``."""
    if not len(train):
        raise ValueError("cannot grow a tree on an empty dataset")
    return _grow(train.matrix(), train.labels(), np.ones(len(train)), train.feature_indices, params)


def _route_rows(node: Node, X, rows: np.ndarray):
    col = X[rows, node.split.attribute]
    missing = np.isnan(col)
    go_low = np.where(missing, node.fallback == "low", col <= node.split.threshold)
    return rows[go_low], rows[~go_low]


def _prune(tree: DecisionTree, X, y, rows) -> tuple[DecisionTree, int]:
    if isinstance(tree, Leaf):
        return tree, int(np.count_nonzero(y[rows] != tree.distribution.majority_index()))
    low_rows, high_rows = _route_rows(tree, X, rows)
    low, low_err = _prune(tree.low, X, y, low_rows)
    high, high_err = _prune(tree.high, X, y, high_rows)
    leaf_err = int(np.count_nonzero(y[rows] != tree.distribution.majority_index()))
    if leaf_err <= low_err + high_err:
        return Leaf(tree.distribution), leaf_err
    return Node(tree.split, low, high, tree.fallback, tree.distribution), low_err + high_err


def reduced_error_prune(tree: DecisionTree, prune_set: Dataset) -> DecisionTree:
    """Bottom-up: a subtree becomes a leaf when that does not raise its error
    count on ``prune_set``. An empty prune set leaves the tree unchanged."""
    if not len(prune_set):
        return tree
    X, y = prune_set.matrix(), prune_set.labels()
    return _prune(tree, X, y, np.arange(len(prune_set)))[0]


def train_c45(train: Dataset, params: LearnerParams = LearnerParams()) -> DecisionTree:
    """Grow on a stratified share of ``train`` and prune on the held-out rest."""
    if not params.use_pruning:
        return grow_tree(train, params)
    rng = np.random.default_rng(params.seed)
    grow_idx, prune_idx = holdout_split(train.labels(), params.prune_fraction, rng)
    tree = grow_tree(train.subset(grow_idx), params)
    return reduced_error_prune(tree, train.subset(prune_idx))


def classify_tree(tree: DecisionTree, instance: Instance | Sequence) -> tuple[PopularityClass, ClassDistribution]:
    values = instance.values if isinstance(instance, Instance) else instance
    while isinstance(tree, Node):
        tree = tree.child(route(tree.split, values[tree.split.attribute]) or tree.fallback)
    return tree.label, tree.distribution


def node_count(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return 1 + node_count(tree.low) + node_count(tree.high)


def depth(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(depth(tree.low), depth(tree.high))


def leaves(tree: DecisionTree) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    return leaves(tree.low) + leaves(tree.high)


def _weights_text(dist: ClassDistribution) -> str:
    return "/".join(repr(w) for w in dist.weights)


def _weights_parse(text: str) -> ClassDistribution:
    return ClassDistribution(tuple(float(t) for t in text.split("/")))


_NODE_RE = re.compile(
    r"(?P<name>\S+)\[(?P<attr>\d+)\] <= (?P<thr>\S+) \((?P<dist>[^)]*)\) "
    r"fallback=(?P<fb>low|high) gain=(?P<gain>\S+) ratio=(?P<ratio>\S+)"
)
_LEAF_RE = re.compile(r"-> (?P<label>\w+) \((?P<dist>[^)]*)\)")
_INDENT = "|   "


def render_tree(tree: DecisionTree, names: Sequence[str] | None = None) -> str:
    lines = []

    def walk(t, level):
        pad = _INDENT * level
        if isinstance(t, Leaf):
            lines.append(f"{pad}-> {t.label.value} ({_weights_text(t.distribution)})")
            return
        s = t.split
        name = names[s.attribute] if names is not None else f"a{s.attribute}"
        lines.append(
            f"{pad}{name}[{s.attribute}] <= {s.threshold!r} ({_weights_text(t.distribution)}) "
            f"fallback={t.fallback} gain={s.gain!r} ratio={s.gain_ratio!r}"
        )
        walk(t.low, level + 1)
        walk(t.high, level + 1)

    walk(tree, 0)
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> DecisionTree:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    pos = 0

    def read(level):
        nonlocal pos
        if pos >= len(lines):
            raise FormatError("tree text ends early")
        line = lines[pos]
        pad = _INDENT * level
        if not line.startswith(pad) or line[len(pad):].startswith(_INDENT):
            raise FormatError(f"bad indentation: {line!r}")
        body = line[len(pad):]
        pos += 1
        if m := _LEAF_RE.fullmatch(body):
            dist = _weights_parse(m["dist"])
            if dist.majority() != label_from_str(m["label"]):
                raise FormatError(f"leaf label disagrees with its weights: {line!r}")
            return Leaf(dist)
        if m := _NODE_RE.fullmatch(body):
            split = Split(int(m["attr"]), float(m["thr"]), float(m["gain"]), float(m["ratio"]))
            low = read(level + 1)
            high = read(level + 1)
            return Node(split, low, high, m["fb"], _weights_parse(m["dist"]))
        raise FormatError(f"unrecognised tree line: {line!r}")

    try:
        tree = read(0)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if pos != len(lines):
        raise FormatError("trailing lines after tree")
    return tree

