import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from moviepop.dataset import Dataset
from moviepop.errors import DomainError
from moviepop.learners import (
    ClassDistribution,
    LearnerParams,
    best_split,
    entropy,
    numeric_split_gain,
    rank_attributes,
)

from conftest import random_dataset, rows_of
from oracles import best_per_attribute, entropy_of, exhaustive_best_split, threshold_gain


# --- entropy --------------------------------------------------------------------

@pytest.mark.parametrize("weights, expected", [
    ([2, 2, 0, 0], 1.0),
    ([4, 0, 0, 0], 0.0),
    ([9, 5, 0, 0], entropy_of([9, 5])),
    ([1, 1, 1, 1], 2.0),
])
def test_entropy_examples(weights, expected):
    assert entropy(weights) == pytest.approx(expected, abs=1e-12)


def test_entropy_nine_five_value():
    # -(9/14)log2(9/14) - (5/14)log2(5/14) evaluated by hand is 0.9403
    assert entropy([9, 5, 0, 0]) == pytest.approx(0.940, abs=1e-3)


def test_entropy_empty():
    with pytest.raises(DomainError):
        entropy([0, 0, 0, 0])


counts = st.lists(st.floats(0, 50, allow_nan=False), min_size=4, max_size=4).filter(lambda c: sum(c) > 0)


@given(counts, st.permutations(range(4)))
def test_entropy_permutation_invariant(c, perm):
    assert entropy(c) == pytest.approx(entropy([c[i] for i in perm]), abs=1e-12)


@given(counts)
def test_entropy_bounds(c):
    present = sum(1 for v in c if v > 0)
    h = entropy(ClassDistribution(tuple(c)))
    assert -1e-12 <= h <= math.log2(present) + 1e-9
    if present == 1:
        assert h == 0.0


@given(st.integers(1, 4), st.floats(0.5, 100))
def test_entropy_uniform_is_maximal(k, w):
    assert entropy([w] * k + [0] * (4 - k)) == pytest.approx(math.log2(k), abs=1e-12)


# --- single-attribute splits ----------------------------------------------------------

def ds(values, labels):
    return Dataset.from_arrays(np.array(values, dtype=float)[:, None], labels)


def test_split_perfect_threshold():
    s = numeric_split_gain(ds([1, 2, 3, 4], [0, 0, 1, 1]), 0)
    assert (s.threshold, s.gain, s.gain_ratio) == (2.5, pytest.approx(1.0), pytest.approx(1.0))


def test_split_uninformative_is_none():
    # Each half of the midpoint set holds one instance of each class.
    assert numeric_split_gain(ds([1, 1, 2, 2], [0, 1, 0, 1]), 0) is None


def test_split_alternating_classes_true_gain():
    # Threshold 1.5 isolates one A: gain = 1 - 3/4 * H(1/3, 2/3)
    s = numeric_split_gain(ds([1, 2, 3, 4], [0, 1, 0, 1]), 0)
    expected = threshold_gain([1, 2, 3, 4], [0, 1, 0, 1], 1.5)
    assert expected == pytest.approx(0.311, abs=1e-3)
    assert s.threshold == 1.5
    assert s.gain == pytest.approx(expected, abs=1e-12)


def test_split_single_value():
    assert numeric_split_gain(ds([3, 3, 3], [0, 1, 2]), 0) is None


def test_split_missing_scales_gain():
    full = numeric_split_gain(ds([1, 2, 3, 4], [0, 0, 1, 1]), 0)
    partial = numeric_split_gain(ds([1, 2, 3, 4, float("nan"), float("nan")], [0, 0, 1, 1, 0, 1]), 0)
    assert partial.threshold == full.threshold
    assert partial.gain == pytest.approx(full.gain * 4 / 6)


def test_split_rejects_non_feature():
    from moviepop.dataset import Column, Instance, LABELS
    d = Dataset((Column("id", "identifier"), Column("x")),
                (Instance((1, 1.0), LABELS[0]), Instance((2, 2.0), LABELS[1])))
    with pytest.raises(ValueError):
        numeric_split_gain(d, 0)


@given(st.integers(0, 10_000))
def test_gain_matches_oracle_and_is_nonnegative(seed):
    rng = np.random.default_rng(seed)
    d = random_dataset(rng, missing=0.15)
    rows, y = rows_of(d), list(d.labels())
    best = best_per_attribute(rows, y, d.feature_indices)
    for a in d.feature_indices:
        s = numeric_split_gain(d, a)
        if a not in best:
            assert s is None
            continue
        t, g, r = best[a]
        assert s.gain >= 0
        assert s.threshold == t
        assert s.gain == pytest.approx(g, abs=1e-9)
        assert s.gain_ratio == pytest.approx(r, abs=1e-9)


def test_class_copy_gain_equals_entropy():
    y = np.array([0, 0, 1, 1, 1, 3])
    s = numeric_split_gain(ds(y.astype(float), y), 0)
    # A binary split cannot separate three classes, so use two classes for the law.
    y2 = np.array([0, 0, 1, 1, 1, 1])
    s2 = numeric_split_gain(ds(y2.astype(float), y2), 0)
    assert s2.gain == pytest.approx(entropy_of([2, 4]), abs=1e-12)
    assert s.gain < entropy_of([2, 3, 1])


# --- best_split -----------------------------------------------------------------------

def test_best_split_informative_among_noise():
    rng = np.random.default_rng(3)
    y = np.array([0] * 8 + [2] * 8)
    X = np.column_stack([rng.integers(0, 4, 16), y * 2.0 + 1, rng.integers(0, 4, 16)])
    d = Dataset.from_arrays(X, y)
    s = best_split(d)
    assert s.attribute == 1
    assert exhaustive_best_split(rows_of(d), list(y), [0, 1, 2])[0] == 1


def test_best_split_constant():
    d = Dataset.from_arrays(np.ones((5, 3)), [0, 1, 0, 1, 2])
    assert best_split(d) is None


def test_best_split_tie_lowest_index():
    X = np.array([[1, 1], [2, 2], [3, 3], [4, 4]], dtype=float)
    s = best_split(Dataset.from_arrays(X, [0, 0, 1, 1]))
    assert s.attribute == 0


def test_best_split_empty():
    with pytest.raises(ValueError):
        best_split(Dataset.from_arrays(np.zeros((0, 2)), []))


@pytest.mark.parametrize("use_ratio", [True, False])
def test_best_split_oracle_sweep(use_ratio):
    rng = np.random.default_rng(20110101)
    for _ in range(150):
        d = random_dataset(rng, missing=0.1)
        expected = exhaustive_best_split(rows_of(d), list(d.labels()), d.feature_indices, use_ratio)
        got = best_split(d, LearnerParams(use_gain_ratio=use_ratio))
        if expected is None:
            assert got is None
        else:
            a, t, g, r = expected
            assert (got.attribute, got.threshold) == (a, t)
            assert got.gain == pytest.approx(g, abs=1e-9)


# --- ranking ----------------------------------------------------------------------------

def test_rank_copy_and_constant():
    y = np.array([0, 0, 0, 1, 1, 1])
    X = np.column_stack([np.ones(6), y.astype(float), [1, 2, 1, 2, 1, 2]])
    ranks = rank_attributes(Dataset.from_arrays(X, y, ["const", "copy", "noise"]))
    assert [r.name for r in ranks] == ["copy", "noise", "const"]
    assert ranks[0].gain == pytest.approx(1.0) and ranks[0].percent == pytest.approx(100.0)
    assert ranks[-1].gain == 0.0 and ranks[-1].percent == 0.0


def test_rank_order_matches_oracle():
    rng = np.random.default_rng(11)
    for _ in range(40):
        d = random_dataset(rng, max_features=3)
        best = best_per_attribute(rows_of(d), list(d.labels()), d.feature_indices)
        gains = {a: best[a][1] if a in best else 0.0 for a in d.feature_indices}
        order = sorted(gains, key=lambda a: (-round(gains[a], 9), a))
        got = rank_attributes(d)
        assert [r.gain for r in got] == pytest.approx([gains[a] for a in order], abs=1e-9)
