import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from moviepop.dataset import LABELS, Dataset
from moviepop.errors import DomainError, FormatError, ParameterError
from moviepop.evaluation import (
    ConfusionMatrix,
    cross_validate,
    metrics_from_matrix,
    render_report,
    report_from_dict,
    report_to_dict,
    stratified_folds,
)
from moviepop.learners import LearnerParams

import published
from conftest import random_dataset


def oracle_metrics(cells):
    """Per-class metrics straight from the confusion-count definitions."""
    n = sum(map(sum, cells))
    out = {}
    for c in range(4):
        tp = cells[c][c]
        fn = sum(cells[c]) - tp
        fp = sum(row[c] for row in cells) - tp
        tn = n - tp - fn - fp
        out[LABELS[c].value] = (tp / (tp + fn), fp / (fp + tn), tp / (tp + fp), tp / (tp + fn))
    return out


@pytest.mark.parametrize("cells, accuracy, table", [
    (published.C45_MATRIX, published.C45_ACCURACY_PERCENT, published.C45_PER_CLASS),
    (published.PART_MATRIX, published.PART_ACCURACY_PERCENT, published.PART_PER_CLASS),
])
def test_published_matrices(cells, accuracy, table):
    per_class, acc = metrics_from_matrix(ConfusionMatrix.from_array(cells))
    assert round(100 * acc, 4) == accuracy
    oracle = oracle_metrics(cells)
    for label, m in per_class.items():
        got = (m.tp_rate, m.fp_rate, m.precision, m.recall)
        assert got == pytest.approx(oracle[label.value], abs=1e-12)
        assert got == pytest.approx(table[label.value], abs=1e-3)


def test_identity_matrix():
    per_class, acc = metrics_from_matrix(ConfusionMatrix.from_array(np.eye(4, dtype=int)))
    assert acc == 1.0
    for m in per_class.values():
        assert (m.tp_rate, m.fp_rate, m.precision, m.recall) == (1.0, 0.0, 1.0, 1.0)


def test_zero_denominators_report_zero():
    per_class, _ = metrics_from_matrix(ConfusionMatrix.from_array([[3, 0, 0, 0]] + [[0] * 4] * 3))
    assert per_class[LABELS[1]].precision == 0.0 and per_class[LABELS[1]].tp_rate == 0.0


def test_empty_matrix():
    with pytest.raises(DomainError):
        metrics_from_matrix(ConfusionMatrix.from_array(np.zeros((4, 4), dtype=int)))


# --- folds ----------------------------------------------------------------------------

def test_folds_one_of_each_class():
    y = np.repeat(np.arange(4), 5)
    for fold in stratified_folds(y, 5, seed=3):
        assert sorted(y[fold]) == [0, 1, 2, 3]


def test_folds_two_classes_k2():
    y = [0, 0, 1, 1]
    for fold in stratified_folds(y, 2, seed=1):
        assert sorted(np.asarray(y)[fold]) == [0, 1]


def test_folds_deterministic():
    y = np.random.default_rng(0).integers(0, 4, 50)
    a, b = stratified_folds(y, 7, 9), stratified_folds(y, 7, 9)
    assert all(np.array_equal(x, z) for x, z in zip(a, b))


@pytest.mark.parametrize("k", [1, 0, 5])
def test_folds_bad_k(k):
    with pytest.raises(ParameterError):
        stratified_folds([0, 1, 0, 1], k, 1)


@given(st.integers(0, 10_000), st.integers(2, 10))
@settings(max_examples=80)
def test_folds_partition_and_balance(seed, k):
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 4, int(rng.integers(k, 60)))
    folds = stratified_folds(y, k, seed)
    joined = np.concatenate(folds)
    assert sorted(joined.tolist()) == list(range(len(y)))
    for c in range(4):
        per_fold = [int(np.sum(y[f] == c)) for f in folds]
        assert max(per_fold) - min(per_fold) <= 1


# --- cross-validation -----------------------------------------------------------------------

@pytest.mark.parametrize("learner", ["c45", "part"])
def test_cv_separable_accuracy_one(separable, learner):
    report = cross_validate(learner, separable, k=5, seed=1, params=LearnerParams(use_pruning=False))
    assert report.accuracy == 1.0 and report.matrix.total == len(separable)


@pytest.mark.parametrize("learner", ["c45", "part"])
@pytest.mark.parametrize("k", [2, 5, 10])
def test_cv_bookkeeping(learner, k):
    d = random_dataset(np.random.default_rng(k), max_n=40, max_features=3)
    while len(d) < k:
        d = random_dataset(np.random.default_rng(k + 100), max_n=40, max_features=3)
    report = cross_validate(learner, d, k=k, seed=2)
    assert report.matrix.total == len(d)
    assert report.matrix.row_totals() == [Counter(d.labels().tolist())[c] for c in range(4)]
    assert report == cross_validate(learner, d, k=k, seed=2)


def test_cv_missing_class_warns():
    d = Dataset.from_arrays([[1], [2], [3], [4], [5]], [0, 0, 1, 1, 3])
    report = cross_validate("c45", d, k=2, seed=1)
    assert any("Terrible" in w for w in report.warnings)
    assert report.matrix.total == 5


def test_cv_unknown_learner(separable):
    with pytest.raises(ParameterError):
        cross_validate("svm", separable)


def test_cv_echoes_params(separable):
    p = LearnerParams(min_leaf=3)
    report = cross_validate("c45", separable, k=4, seed=8, params=p)
    assert report.params["min_leaf"] == 3 and report.seed == 8 and report.k == 4


# --- rendering ----------------------------------------------------------------------------

@pytest.fixture
def report(separable):
    return cross_validate("part", separable, k=4, seed=5)


def test_json_round_trip(report):
    text = render_report(report, "json")
    assert report_from_dict(json.loads(text)) == report
    assert render_report(report_from_dict(json.loads(text)), "json") == text
    assert report_from_dict(report_to_dict(report)) == report


def test_json_malformed():
    with pytest.raises(FormatError):
        report_from_dict({"learner": "c45"})


def test_plain_layout(report):
    text = render_report(report, "plain")
    lines = text.splitlines()
    assert sum(1 for ln in lines if ln.startswith("Accuracy:")) == 1
    header = lines.index(next(ln for ln in lines if ln.startswith("Class")))
    for i, label in enumerate(LABELS):
        assert lines[header + 1 + i].split()[0] == label.value
    grid = lines[lines.index("Confusion matrix (rows: actual, columns: classified as)") + 2:][:4]
    for row, label, total in zip(grid, LABELS, report.matrix.row_totals()):
        cells = [int(v) for v in row.split()[1:]]
        assert row.split()[0] == label.value
        assert sum(cells[:4]) == cells[4] == total
    assert f"seed: {report.seed}" in text and "min_leaf=" in text


def test_unknown_format(report):
    with pytest.raises(ValueError):
        render_report(report, "xml")
