"""Turn a :class:`MovieStore` into the pre-release and post-release datasets."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from statistics import fmean
from typing import Iterable, Mapping, NamedTuple

from .dataset import Column, Dataset, Instance, PopularityClass, rating_tenths, assign_class
from .errors import ExtractionError
from .ingest import TitleKey, extract_amount
from .store import MovieStore

log = logging.getLogger(__name__)

BALANCE_CAP = 10

DATASET1_COLUMNS = (
    Column("id", "identifier"),
    Column("title", "identifier"),
    Column("year", "feature"),
    Column("language", "excluded"),
    Column("country", "excluded"),
    Column("budget", "feature"),
    Column("director_rank", "feature"),
    Column("male_cast_rank", "feature"),
    Column("female_cast_rank", "feature"),
    Column("votes", "excluded"),
    Column("rating", "excluded"),
)

DATASET2_COLUMNS = (
    Column("id", "identifier"),
    Column("title", "identifier"),
    Column("budget", "feature"),
    Column("domestic", "feature"),
    Column("foreign", "feature"),
    Column("worldwide", "feature"),
    Column("votes", "excluded"),
    Column("rating", "excluded"),
)


@dataclass(frozen=True)
class Filters:
    """Candidate predicates; both year bounds are exclusive."""

    year_after: int = 2000
    year_before: int = 2011
    country: str = "USA"
    language: str = "English"
    min_votes: int = 1000


@dataclass(frozen=True)
class PersonRank:
    person: str
    role: str
    rank: float
    support: int


class Features(NamedTuple):
    director_rank: float | None
    male_cast_rank: float | None
    female_cast_rank: float | None
    budget: int | None


def filter_candidates(store: MovieStore, filters: Filters = Filters()) -> frozenset[TitleKey]:
    keep = set()
    for key, movie in store.movies.items():
        if movie.kind != "movie" or key.year is None:
            continue
        if not filters.year_after < key.year < filters.year_before:
            continue
        rating = store.ratings.get(key)
        if rating is None or rating.votes < filters.min_votes:
            continue
        if filters.language not in store.attribute_values(key, "language"):
            continue
        if filters.country not in store.attribute_values(key, "country"):
            continue
        keep.add(key)
    return frozenset(keep)


def person_ranks(
    store: MovieStore, role: str, universe: Iterable[TitleKey] | None = None
) -> dict[str, PersonRank]:
    """Mean rating over each person's rated movies.

    By default every rated movie in the store counts; pass ``universe`` to
    restrict the movies that contribute.
    """
    allowed = None if universe is None else set(universe)
    ratings = defaultdict(list)
    for c in store.credits:
        if c.role != role or (allowed is not None and c.key not in allowed):
            continue
        r = store.ratings.get(c.key)
        if r is not None:
            ratings[c.person].append(r.rating)
    return {p: PersonRank(p, role, fmean(rs), len(rs)) for p, rs in ratings.items()}


def first_usd_budget(store: MovieStore, key: TitleKey) -> int | None:
    for raw in store.attribute_values(key, "budget-line"):
        try:
            money = extract_amount(raw)
        except ExtractionError:
            continue
        if money.currency == "USD":
            return money.amount
    return None


def derive_features(
    key: TitleKey, store: MovieStore, ranks: Mapping[str, Mapping[str, PersonRank]]
) -> Features:
    """``ranks`` maps a credit role to that role's person ranks."""

    def role_ranks(role):
        table = ranks.get(role, {})
        return [table[c.person].rank for c in store.credits_for(key, role) if c.person in table]

    directors = role_ranks("director")
    return Features(
        director_rank=fmean(directors) if directors else None,
        male_cast_rank=float(sum(role_ranks("actor"))),
        female_cast_rank=float(sum(role_ranks("actress"))),
        budget=first_usd_budget(store, key),
    )


def balance_average(dataset: Dataset, cap: int = BALANCE_CAP) -> Dataset:
    """Keep at most ``cap`` Average instances per 0.1 rating step, preferring
    the most voted (ties by title key). Other classes pass through untouched
    and instance order is preserved."""
    ri, vi = dataset.index("rating"), dataset.index("votes")
    by_step = defaultdict(list)
    for pos, inst in enumerate(dataset.instances):
        if inst.label is PopularityClass.AVERAGE:
            by_step[rating_tenths(inst.values[ri])].append(pos)
    kept = set()
    for step, positions in by_step.items():
        positions.sort(key=lambda p: (-(dataset.instances[p].values[vi] or 0),
                                      _key_text(dataset.instances[p])))
        kept.update(positions[:cap])
    return dataset.subset(
        p for p, inst in enumerate(dataset.instances)
        if inst.label is not PopularityClass.AVERAGE or p in kept
    )


def _key_text(inst: Instance) -> str:
    return inst.key.render() if inst.key is not None else ""


def _movie_ids(store: MovieStore) -> dict[TitleKey, int]:
    # Stable ids: 1-based position among all store movies in key order.
    return {k: i for i, k in enumerate(sorted(store.movies), 1)}


def build_dataset1(
    store: MovieStore, filters: Filters = Filters(), rank_universe: str = "all"
) -> Dataset:
    """Pre-release dataset: cast/director ranks and budget, Average balanced.

    ``rank_universe`` is ``"all"`` (career ranks over every rated movie) or
    ``"candidates"`` (ranks over filtered movies only).
    """
    candidates = sorted(filter_candidates(store, filters))
    if rank_universe not in ("all", "candidates"):
        raise ValueError(f"unknown rank universe {rank_universe!r}")
    universe = None if rank_universe == "all" else candidates
    ranks = {role: person_ranks(store, role, universe) for role in ("director", "actor", "actress")}
    ids = _movie_ids(store)
    instances = []
    dropped = 0
    for key in candidates:
        feats = derive_features(key, store, ranks)
        if feats.director_rank is None or feats.budget is None:
            dropped += 1
            continue
        rating = store.ratings[key]
        instances.append(Instance(
            (ids[key], key.render(), key.year, filters.language, filters.country,
             feats.budget, feats.director_rank, feats.male_cast_rank, feats.female_cast_rank,
             rating.votes, rating.rating),
            assign_class(rating.rating),
            key,
        ))
    if dropped:
        log.info("dataset 1: dropped %d candidates lacking director rank or USD budget", dropped)
    return balance_average(Dataset(DATASET1_COLUMNS, tuple(instances)))


def build_dataset2(store: MovieStore, filters: Filters = Filters()) -> Dataset:
    """Post-release dataset: candidates with complete USD box-office figures."""
    ids = _movie_ids(store)
    instances = []
    for key in sorted(filter_candidates(store, filters)):
        fin = store.finances.get(key)
        if fin is None:
            continue
        money = (fin.budget, fin.domestic, fin.foreign, fin.worldwide)
        if any(m is None or m.currency != "USD" for m in money):
            continue
        rating = store.ratings[key]
        instances.append(Instance(
            (ids[key], key.render(), *(m.amount for m in money), rating.votes, rating.rating),
            assign_class(rating.rating),
            key,
        ))
    return Dataset(DATASET2_COLUMNS, tuple(instances))
