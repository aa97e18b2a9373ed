"""Split statistics shared by the tree and rule learners.

All learners treat features as numeric and split them in two at a threshold:
``value <= threshold`` goes low, ``value > threshold`` goes high. Instances
carry weights so that missing values can be routed fractionally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ..dataset import LABELS, Dataset, PopularityClass
from ..errors import DomainError

N_CLASSES = len(LABELS)

# Gains closer than this are ties; gains at or below GAIN_EPS count as zero.
TIE_EPS = 1e-9
GAIN_EPS = 1e-12


@dataclass(frozen=True)
class ClassDistribution:
    """Class weights in ``LABELS`` order."""

    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.weights) != N_CLASSES:
            raise ValueError(f"need {N_CLASSES} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("negative class weight")

    @classmethod
    def of(cls, y, w=None) -> "ClassDistribution":
        w = np.ones(len(y)) if w is None else np.asarray(w, dtype=float)
        counts = np.bincount(np.asarray(y, dtype=np.intp), weights=w, minlength=N_CLASSES)
        return cls(tuple(float(c) for c in counts))

    @classmethod
    def from_mapping(cls, counts) -> "ClassDistribution":
        return cls(tuple(float(counts.get(label, 0)) for label in LABELS))

    @property
    def total(self) -> float:
        return float(sum(self.weights))

    def majority_index(self) -> int:
        # max() keeps the first maximum, i.e. the better class on ties.
        return max(range(N_CLASSES), key=lambda i: self.weights[i])

    def majority(self) -> PopularityClass:
        return LABELS[self.majority_index()]

    def is_pure(self) -> bool:
        return sum(1 for w in self.weights if w > 0) <= 1

    def __getitem__(self, label: PopularityClass) -> float:
        return self.weights[label.index]


def _entropy_rows(counts: np.ndarray) -> np.ndarray:
    """Entropy in bits of each row of a (m, k) weight array; 0 for empty rows."""
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / totals, 0.0)
        logs = np.where(p > 0, np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -(p * logs).sum(axis=1)


def entropy(dist: ClassDistribution | Sequence[float]) -> float:
    """Shannon entropy in bits of a class distribution."""
    weights = np.asarray(dist.weights if isinstance(dist, ClassDistribution) else dist, dtype=float)
    if weights.sum() <= 0:
        raise DomainError("entropy of an empty distribution")
    return max(0.0, float(_entropy_rows(weights[None, :])[0]))


@dataclass(frozen=True)
class Split:
    attribute: int
    threshold: float
    gain: float
    gain_ratio: float


@dataclass(frozen=True)
class LearnerParams:
    min_leaf: int = 2
    prune_fraction: float = 1 / 3
    seed: int = 1
    use_gain_ratio: bool = True
    use_pruning: bool = True

    def __post_init__(self):
        if self.min_leaf < 1:
            raise ValueError("min_leaf must be >= 1")
        if not 0 < self.prune_fraction < 1:
            raise ValueError("prune_fraction must lie strictly between 0 and 1")


def split_on_column(col: np.ndarray, y: np.ndarray, w: np.ndarray, attribute: int) -> Split | None:
    """Best threshold on one numeric column by information gain.

    Candidate thresholds are midpoints between consecutive distinct known
    values. Missing values (NaN) sit out the entropy computation and the
    gain is scaled by the known fraction of the weight. Ties go to the
    smallest threshold.
    """
    known = ~np.isnan(col)
    total_w = w.sum()
    if total_w <= 0 or known.sum() < 2:
        return None
    vals, yk, wk = col[known], y[known], w[known]
    order = np.argsort(vals, kind="stable")
    vals, yk, wk = vals[order], yk[order], wk[order]
    boundaries = np.nonzero(vals[:-1] < vals[1:])[0]
    if boundaries.size == 0:
        return None

    onehot = np.zeros((vals.size, N_CLASSES))
    onehot[np.arange(vals.size), yk] = wk
    cum = np.cumsum(onehot, axis=0)
    known_counts = cum[-1]
    known_w = known_counts.sum()
    if known_w <= 0:
        return None
    left = cum[boundaries]
    right = known_counts - left
    wl, wr = left.sum(axis=1), right.sum(axis=1)
    base = _entropy_rows(known_counts[None, :])[0]
    children = (wl * _entropy_rows(left) + wr * _entropy_rows(right)) / known_w
    gains = (known_w / total_w) * (base - children)

    best = int(np.argmax(gains >= gains.max() - TIE_EPS))
    gain = float(gains[best])
    if gain <= GAIN_EPS:
        return None
    b = boundaries[best]
    threshold = (vals[b] + vals[b + 1]) / 2.0
    split_info = float(_entropy_rows(np.array([[wl[best], wr[best]]]))[0])
    ratio = gain / split_info if split_info > 0 else 0.0
    return Split(attribute, float(threshold), gain, ratio)


def numeric_split_gain(dataset: Dataset, attribute: int) -> Split | None:
    """Best binary split of one feature column of ``dataset``."""
    if dataset.columns[attribute].role != "feature":
        raise ValueError(f"column {dataset.columns[attribute].name!r} is not a feature")
    X = dataset.matrix()
    return split_on_column(X[:, attribute], dataset.labels(), np.ones(len(dataset)), attribute)


def choose_split(candidates: Sequence[Split | None], use_gain_ratio: bool = True) -> Split | None:
    """C4.5 selection: among splits whose gain reaches the mean positive gain,
    take the best gain ratio (or gain); ties go to the lowest attribute index."""
    positive = sorted((s for s in candidates if s is not None and s.gain > GAIN_EPS),
                      key=lambda s: s.attribute)
    if not positive:
        return None
    mean_gain = sum(s.gain for s in positive) / len(positive)
    admissible = [s for s in positive if s.gain >= mean_gain - TIE_EPS]
    score = (lambda s: s.gain_ratio) if use_gain_ratio else (lambda s: s.gain)
    top = max(score(s) for s in admissible)
    return next(s for s in admissible if score(s) >= top - TIE_EPS)


def best_split_arrays(X, y, w, features: Sequence[int], use_gain_ratio: bool = True) -> Split | None:
    return choose_split([split_on_column(X[:, a], y, w, a) for a in features], use_gain_ratio)


def best_split(dataset: Dataset, params: LearnerParams = LearnerParams()) -> Split | None:
    if not len(dataset):
        raise ValueError("best_split needs a non-empty dataset")
    return best_split_arrays(dataset.matrix(), dataset.labels(), np.ones(len(dataset)),
                             dataset.feature_indices, params.use_gain_ratio)


class AttributeRank(NamedTuple):
    name: str
    attribute: int
    gain: float
    percent: float


def rank_attributes(dataset: Dataset) -> list[AttributeRank]:
    """Features by best-threshold information gain, highest first.

    ``percent`` expresses the gain as a share of the class entropy.
    """
    if not len(dataset):
        raise ValueError("cannot rank attributes of an empty dataset")
    X, y = dataset.matrix(), dataset.labels()
    w = np.ones(len(dataset))
    h = entropy(ClassDistribution.of(y))
    ranks = []
    for a in dataset.feature_indices:
        s = split_on_column(X[:, a], y, w, a)
        gain = s.gain if s is not None else 0.0
        ranks.append(AttributeRank(dataset.columns[a].name, a, gain, 100.0 * gain / h if h > 0 else 0.0))
    ranks.sort(key=lambda r: (-r.gain, r.attribute))
    return ranks


def holdout_split(y: np.ndarray, fraction: float, rng: np.random.Generator):
    """Stratified random split of positions ``0..len(y)-1`` into (grow, prune).

    Each class contributes ``round(fraction * n_class)`` instances to the
    prune part. Both parts are returned sorted.
    """
    grow, prune = [], []
    for c in range(N_CLASSES):
        idx = np.nonzero(y == c)[0]
        if idx.size == 0:
            continue
        idx = rng.permutation(idx)
        n_prune = int(np.floor(fraction * idx.size + 0.5))
        prune.extend(idx[:n_prune])
        grow.extend(idx[n_prune:])
    if not grow:
        grow, prune = prune, []
    return np.sort(np.array(grow, dtype=np.intp)), np.sort(np.array(prune, dtype=np.intp))
