"""Stratified k-fold cross-validation and confusion-matrix metrics."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .dataset import LABELS, Dataset, PopularityClass, label_from_str
from .errors import DomainError, FormatError, ParameterError
from .learners import LearnerParams, classify_rules, classify_tree, part_learn, train_c45

log = logging.getLogger(__name__)

LEARNERS = ("c45", "part")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are actual classes, columns predicted, both in ``LABELS`` order."""

    cells: tuple[tuple[int, ...], ...]
    labels: tuple[PopularityClass, ...] = LABELS

    def __post_init__(self):
        k = len(self.labels)
        if len(self.cells) != k or any(len(row) != k for row in self.cells):
            raise ValueError(f"confusion matrix must be {k}x{k}")
        if any(c < 0 for row in self.cells for c in row):
            raise ValueError("negative confusion-matrix cell")

    @classmethod
    def from_array(cls, cells) -> "ConfusionMatrix":
        return cls(tuple(tuple(int(c) for c in row) for row in np.asarray(cells)))

    @classmethod
    def from_predictions(cls, actual: Sequence[int], predicted: Sequence[int]) -> "ConfusionMatrix":
        m = np.zeros((len(LABELS), len(LABELS)), dtype=np.int64)
        np.add.at(m, (np.asarray(actual, dtype=np.intp), np.asarray(predicted, dtype=np.intp)), 1)
        return cls.from_array(m)

    def as_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.int64)

    @property
    def total(self) -> int:
        return sum(map(sum, self.cells))

    @property
    def trace(self) -> int:
        return sum(self.cells[i][i] for i in range(len(self.labels)))

    def row_totals(self) -> list[int]:
        return [sum(row) for row in self.cells]

    def column_totals(self) -> list[int]:
        return [sum(col) for col in zip(*self.cells)]


@dataclass(frozen=True)
class ClassMetrics:
    tp_rate: float
    fp_rate: float
    precision: float
    recall: float


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def metrics_from_matrix(matrix: ConfusionMatrix) -> tuple[dict[PopularityClass, ClassMetrics], float]:
    """Per-class TP rate, FP rate, precision and recall plus overall accuracy.

    Undefined ratios (empty row or column) are reported as 0.
    """
    total = matrix.total
    if total <= 0:
        raise DomainError("metrics of an empty confusion matrix")
    rows, cols = matrix.row_totals(), matrix.column_totals()
    per_class = {}
    for i, label in enumerate(matrix.labels):
        tp = matrix.cells[i][i]
        fn = rows[i] - tp
        fp = cols[i] - tp
        tn = total - tp - fn - fp
        recall = _ratio(tp, tp + fn)
        per_class[label] = ClassMetrics(recall, _ratio(fp, fp + tn), _ratio(tp, tp + fp), recall)
    return per_class, matrix.trace / total


def stratified_folds(labels: Sequence[int], k: int, seed: int) -> list[np.ndarray]:
    """Split positions into ``k`` folds preserving class proportions.

    Each class is shuffled with a seeded generator, the shuffled classes are
    concatenated in label order and dealt round-robin, so per-class counts
    across folds differ by at most one.
    """
    labels = np.asarray(labels, dtype=np.intp)
    n = labels.size
    if k < 2:
        raise ParameterError(f"need at least 2 folds, got {k}")
    if k > n:
        raise ParameterError(f"{k} folds requested for {n} instances")
    rng = np.random.default_rng(seed)
    order = np.concatenate([rng.permutation(np.nonzero(labels == c)[0]) for c in range(len(LABELS))])
    return [np.sort(order[f::k]) for f in range(k)]


@dataclass(frozen=True)
class EvalReport:
    learner: str
    k: int
    seed: int
    params: Mapping[str, object]
    matrix: ConfusionMatrix
    per_class: Mapping[PopularityClass, ClassMetrics]
    accuracy: float
    warnings: tuple[str, ...] = field(default=())


def fold_seeds(seed: int, k: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(k)]


def train_and_predict(learner: str, train: Dataset, test: Dataset, params: LearnerParams) -> list[int]:
    if learner == "c45":
        model = train_c45(train, params)
        return [classify_tree(model, inst)[0].index for inst in test.instances]
    if learner == "part":
        model = part_learn(train, params)
        return [classify_rules(model, inst).index for inst in test.instances]
    raise ParameterError(f"unknown learner {learner!r}; choose from {LEARNERS}")


def cross_validate(
    learner: str, dataset: Dataset, k: int = 10, seed: int = 1, params: LearnerParams = LearnerParams()
) -> EvalReport:
    """Accumulate one prediction per instance over ``k`` stratified folds.

    Each fold trains on the other folds with its own seed derived from
    ``seed``, so the report is a pure function of the arguments.
    """
    if learner not in LEARNERS:
        raise ParameterError(f"unknown learner {learner!r}; choose from {LEARNERS}")
    if not len(dataset):
        raise ParameterError("cannot cross-validate an empty dataset")
    y = dataset.labels()
    folds = stratified_folds(y, k, seed)
    predicted = np.empty(len(dataset), dtype=np.intp)
    warnings = []
    for i, (test_idx, fseed) in enumerate(zip(folds, fold_seeds(seed, k))):
        train_idx = np.setdiff1d(np.arange(len(dataset)), test_idx)
        train_classes = set(y[train_idx].tolist())
        for c in sorted(set(y[test_idx].tolist()) - train_classes):
            msg = f"fold {i}: class {LABELS[c].value} absent from training data"
            log.warning(msg)
            warnings.append(msg)
        predicted[test_idx] = train_and_predict(
            learner, dataset.subset(train_idx), dataset.subset(test_idx), replace(params, seed=fseed)
        )
    matrix = ConfusionMatrix.from_predictions(y, predicted)
    per_class, accuracy = metrics_from_matrix(matrix)
    return EvalReport(learner, k, seed, asdict(params), matrix, per_class, accuracy, tuple(warnings))


def report_to_dict(report: EvalReport) -> dict:
    return {
        "learner": report.learner,
        "k": report.k,
        "seed": report.seed,
        "params": dict(report.params),
        "labels": [label.value for label in report.matrix.labels],
        "matrix": [list(row) for row in report.matrix.cells],
        "per_class": {label.value: asdict(m) for label, m in report.per_class.items()},
        "accuracy": report.accuracy,
        "warnings": list(report.warnings),
    }


def report_from_dict(data: Mapping) -> EvalReport:
    try:
        labels = tuple(label_from_str(t) for t in data["labels"])
        matrix = ConfusionMatrix(tuple(tuple(int(c) for c in row) for row in data["matrix"]), labels)
        per_class = {label_from_str(k): ClassMetrics(**v) for k, v in data["per_class"].items()}
        return EvalReport(data["learner"], int(data["k"]), int(data["seed"]), dict(data["params"]),
                          matrix, per_class, float(data["accuracy"]), tuple(data.get("warnings", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed report: {exc}") from exc


def render_report(report: EvalReport, format: str = "plain") -> str:
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    if format != "plain":
        raise ValueError(f"unknown report format {format!r}")
    m = report.matrix
    names = [label.value for label in m.labels]
    width = max(len(n) for n in names) + 2
    out = [
        f"Learner: {report.learner}   folds: {report.k}   seed: {report.seed}",
        "Params: " + ", ".join(f"{k}={v}" for k, v in sorted(report.params.items())),
        "",
        f"Correctly classified:   {m.trace} ({100 * report.accuracy:.4f} %)",
        f"Incorrectly classified: {m.total - m.trace} ({100 * (1 - report.accuracy):.4f} %)",
        f"Total instances:        {m.total}",
        f"Accuracy: {report.accuracy:.4f}",
        "",
        "Detailed accuracy by class",
        f"{'Class':<{width}}{'TP Rate':>9}{'FP Rate':>9}{'Precision':>11}{'Recall':>9}",
    ]
    for label in m.labels:
        pc = report.per_class[label]
        out.append(f"{label.value:<{width}}{pc.tp_rate:>9.3f}{pc.fp_rate:>9.3f}"
                   f"{pc.precision:>11.3f}{pc.recall:>9.3f}")
    out += ["", "Confusion matrix (rows: actual, columns: classified as)",
            f"{'':<{width}}" + "".join(f"{n:>{width}}" for n in names) + f"{'Total':>{width}}"]
    for name, row in zip(names, m.cells):
        out.append(f"{name:<{width}}" + "".join(f"{c:>{width}}" for c in row) + f"{sum(row):>{width}}")
    out += [f"{'Total':<{width}}" + "".join(f"{c:>{width}}" for c in m.column_totals()) + f"{m.total:>{width}}"]
    if report.warnings:
        out += ["", "Warnings:"] + [f"  {w}" for w in report.warnings]
    return "\n".join(out) + "\n"
