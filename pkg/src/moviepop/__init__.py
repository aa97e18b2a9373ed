"""Movie popularity classification from IMDB-style list files.

Pipeline: :mod:`moviepop.ingest` parses list files, :mod:`moviepop.store`
links them, :mod:`moviepop.builder` derives the pre-release and
post-release datasets, :mod:`moviepop.learners` holds the C4.5 and PART
learners, :mod:`moviepop.evaluation` cross-validates them and
:mod:`moviepop.correlation` relates budget to box-office earnings.
"""

from .builder import Filters, balance_average, build_dataset1, build_dataset2, filter_candidates, person_ranks
from .correlation import PairedSeries, correlate_dataset2, pearson, scatter_plot, trend_line
from .dataset import LABELS, Dataset, PopularityClass, assign_class, export_dataset, load_dataset
from .evaluation import ConfusionMatrix, cross_validate, metrics_from_matrix, render_report, stratified_folds
from .ingest import TitleKey, extract_amount
from .learners import LearnerParams, classify_rules, classify_tree, part_learn, rank_attributes, train_c45
from .store import MovieStore, build_store, read_store, write_store

__version__ = "0.1.0"

__all__ = [
    "assign_class",
    "balance_average",
    "build_dataset1",
    "build_dataset2",
    "build_store",
    "classify_rules",
    "classify_tree",
    "ConfusionMatrix",
    "correlate_dataset2",
    "cross_validate",
    "Dataset",
    "export_dataset",
    "extract_amount",
    "filter_candidates",
    "Filters",
    "LABELS",
    "LearnerParams",
    "load_dataset",
    "metrics_from_matrix",
    "MovieStore",
    "PairedSeries",
    "part_learn",
    "pearson",
    "person_ranks",
    "PopularityClass",
    "rank_attributes",
    "read_store",
    "render_report",
    "scatter_plot",
    "stratified_folds",
    "TitleKey",
    "train_c45",
    "trend_line",
    "write_store",
]
