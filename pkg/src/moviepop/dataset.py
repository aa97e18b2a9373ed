"""Tabular dataset with column roles and a four-valued popularity class.

CSV layout written by :func:`export_dataset`::

    #role:identifier,identifier,feature,...,class
    id,title,year,...,class
    1,Alpha (2003),2003,...,Excellent

``?`` is the only missing-value token. Other ``#`` lines are ignored on load.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, FormatError
from .ingest import TitleKey

ROLES = ("feature", "identifier", "excluded")
MISSING = "?"


class PopularityClass(enum.Enum):
    """Rating bins, declared from best to worst.

    Declaration order is the fixed label order used by confusion matrices and
    by every majority tie-break.
    """

    EXCELLENT = "Excellent"
    AVERAGE = "Average"
    POOR = "Poor"
    TERRIBLE = "Terrible"

    @property
    def index(self) -> int:
        return _LABEL_INDEX[self]

    def __lt__(self, other):
        if not isinstance(other, PopularityClass):
            return NotImplemented
        return self.index > other.index

    def __str__(self):
        return self.value


LABELS: tuple[PopularityClass, ...] = tuple(PopularityClass)
_LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}


def label_from_str(text: str) -> PopularityClass:
    try:
        return PopularityClass(text.strip())
    except ValueError:
        raise FormatError(f"unknown class label {text!r}") from None


def rating_tenths(rating) -> int:
    try:
        d = Decimal(str(rating))
    except InvalidOperation:
        raise DomainError(f"rating {rating!r} is not a number") from None
    if not d.is_finite() or not Decimal("1.0") <= d <= Decimal("10.0"):
        raise DomainError(f"rating {rating!r} outside [1.0, 10.0]")
    return int(d.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP) * 10)


def assign_class(rating: float) -> PopularityClass:
    """Bin a user rating after rounding it half-up to one decimal."""
    t = rating_tenths(rating)
    if t >= 75:
        return PopularityClass.EXCELLENT
    if t >= 50:
        return PopularityClass.AVERAGE
    if t >= 25:
        return PopularityClass.POOR
    return PopularityClass.TERRIBLE


@dataclass(frozen=True)
class Column:
    name: str
    role: str = "feature"

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"column {self.name!r}: unknown role {self.role!r}")


@dataclass(frozen=True)
class Instance:
    values: tuple
    label: PopularityClass
    key: TitleKey | None = None


@dataclass(frozen=True)
class Dataset:
    columns: tuple[Column, ...]
    instances: tuple[Instance, ...] = ()

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate column names in {names}")
        if "class" in names:
            raise ValueError("'class' is reserved for the label column")
        width = len(self.columns)
        for inst in self.instances:
            if len(inst.values) != width:
                raise ValueError(f"instance {inst.key} has {len(inst.values)} values, schema has {width}")
            if not isinstance(inst.label, PopularityClass):
                raise ValueError(f"instance {inst.key} lacks a class label")

    def __len__(self) -> int:
        return len(self.instances)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def feature_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c.role == "feature"]

    def index(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise KeyError(name)

    def column(self, name: str) -> list:
        i = self.index(name)
        return [inst.values[i] for inst in self.instances]

    def labels(self) -> np.ndarray:
        """Class indices in ``LABELS`` order."""
        return np.array([inst.label.index for inst in self.instances], dtype=np.intp)

    def matrix(self) -> np.ndarray:
        """Float view of every column, NaN where missing or non-numeric.

        Columns line up with schema indices so splits can refer to them directly.
        """
        out = np.full((len(self.instances), len(self.columns)), np.nan)
        feats = self.feature_indices
        for r, inst in enumerate(self.instances):
            for c in feats:
                v = inst.values[c]
                if v is not None:
                    out[r, c] = float(v)
        return out

    def subset(self, indices: Iterable[int]) -> "Dataset":
        return replace(self, instances=tuple(self.instances[i] for i in indices))

    def class_counts(self) -> dict[PopularityClass, int]:
        counts = dict.fromkeys(LABELS, 0)
        for inst in self.instances:
            counts[inst.label] += 1
        return counts

    @classmethod
    def from_arrays(cls, X, y, names: Sequence[str] | None = None) -> "Dataset":
        """Build an all-feature dataset from a 2-D array and class indices.

        NaN entries become missing values.
        """
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ValueError("X must be 2-D")
        names = list(names) if names is not None else [f"a{i}" for i in range(X.shape[1])]
        columns = tuple(Column(n) for n in names)
        instances = tuple(
            Instance(tuple(None if math.isnan(v) else float(v) for v in row), LABELS[int(c)])
            for row, c in zip(X, y)
        )
        return cls(columns, instances)


def _cell(value) -> str:
    if value is None:
        return MISSING
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def _parse_cell(text: str):
    if text == MISSING:
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        v = float(text)
    except ValueError:
        return text
    return v if math.isfinite(v) else text


def dumps_dataset(dataset: Dataset, comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    buf.write("#role:" + ",".join([c.role for c in dataset.columns] + ["class"]) + "\n")
    for line in comments:
        buf.write(f"#{line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(dataset.names + ["class"])
    for inst in dataset.instances:
        writer.writerow([_cell(v) for v in inst.values] + [inst.label.value])
    return buf.getvalue()


def loads_dataset(text: str) -> Dataset:
    lines = text.splitlines()
    roles = None
    body = []
    for line in lines:
        if line.startswith("#role:"):
            roles = line[len("#role:"):].strip().split(",")
        elif line.startswith("#"):
            continue
        elif line.strip():
            body.append(line)
    if roles is None:
        raise FormatError("dataset file lacks the '#role:' line")
    rows = list(csv.reader(body))
    if not rows:
        raise FormatError("dataset file lacks a header row")
    header = rows[0]
    if len(header) != len(roles) or header[-1] != "class" or roles[-1] != "class":
        raise FormatError("role line and header disagree or class column missing")
    try:
        columns = tuple(Column(n, r) for n, r in zip(header[:-1], roles[:-1]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    key_col = header.index("title") if "title" in header else None
    instances = []
    for lineno, row in enumerate(rows[1:], 2):
        if len(row) != len(header):
            raise FormatError(f"data row {lineno}: expected {len(header)} cells, got {len(row)}")
        values = tuple(_parse_cell(c) for c in row[:-1])
        key = None
        if key_col is not None and row[key_col] != MISSING:
            try:
                key = TitleKey.parse(row[key_col])
            except ValueError:
                key = None
        instances.append(Instance(values, label_from_str(row[-1]), key))
    return Dataset(columns, tuple(instances))


def export_dataset(dataset: Dataset, path, comments: Sequence[str] = ()) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_dataset(dataset, comments), encoding="utf-8")
    return path


def load_dataset(path) -> Dataset:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read dataset {path}: {exc}") from exc
    return loads_dataset(text)
