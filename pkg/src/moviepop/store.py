"""The in-memory relational store built from parsed list files.

``build_store`` links all tables on :class:`TitleKey`, drops dangling rows and
duplicate credits, and returns an immutable :class:`MovieStore`. The store can
be written to / read from a directory of TSV tables.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import FormatError
from .ingest import (
    AttributeRecord,
    CreditRecord,
    FinanceRecord,
    MovieRecord,
    Money,
    RatingRecord,
    TitleKey,
    extract_amount,
)

STORE_TABLES = ("movies", "ratings", "credits", "attributes", "finances")

_COLUMNS = {
    "movies": ["key", "kind"],
    "ratings": ["key", "votes", "rating"],
    "credits": ["person", "role", "key"],
    "attributes": ["key", "kind", "value"],
    "finances": ["key", "budget", "domestic", "foreign", "worldwide"],
}


@dataclass(frozen=True)
class MovieStore:
    movies: Mapping[TitleKey, MovieRecord]
    ratings: Mapping[TitleKey, RatingRecord]
    credits: tuple[CreditRecord, ...]
    attributes: tuple[AttributeRecord, ...]
    finances: Mapping[TitleKey, FinanceRecord]
    dropped: Mapping[str, int] = field(default_factory=dict)
    _credits_by_key: Mapping = field(default=None, repr=False, compare=False)
    _attrs_by_key: Mapping = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        by_credit = defaultdict(list)
        for c in self.credits:
            by_credit[c.key].append(c)
        by_attr = defaultdict(list)
        for a in self.attributes:
            by_attr[a.key].append(a)
        object.__setattr__(self, "_credits_by_key", MappingProxyType(dict(by_credit)))
        object.__setattr__(self, "_attrs_by_key", MappingProxyType(dict(by_attr)))

    def credits_for(self, key: TitleKey, role: str | None = None) -> list[CreditRecord]:
        return [c for c in self._credits_by_key.get(key, ()) if role is None or c.role == role]

    def attribute_values(self, key: TitleKey, kind: str) -> list[str]:
        """Values of one attribute kind for ``key``, in file order."""
        return [a.value for a in self._attrs_by_key.get(key, ()) if a.kind == kind]

    def counts(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in STORE_TABLES}


def build_store(
    movies: Iterable[MovieRecord],
    ratings: Iterable[RatingRecord] = (),
    credits: Iterable[CreditRecord] = (),
    attributes: Iterable[AttributeRecord] = (),
    finances: Iterable[FinanceRecord] = (),
) -> MovieStore:
    """Link parsed tables into a store.

    Records whose key has no movie are dropped and counted per table in
    ``store.dropped``; so are repeated keys (first one wins) and repeated
    ``(person, role, key)`` credits.
    """
    dropped = dict.fromkeys(STORE_TABLES, 0)

    movie_map: dict[TitleKey, MovieRecord] = {}
    for m in movies:
        if m.key in movie_map:
            dropped["movies"] += 1
        else:
            movie_map[m.key] = m

    def keyed(records, table):
        out = {}
        for r in records:
            if r.key not in movie_map or r.key in out:
                dropped[table] += 1
            else:
                out[r.key] = r
        return out

    rating_map = keyed(ratings, "ratings")
    finance_map = keyed(finances, "finances")

    seen = set()
    credit_list = []
    for c in credits:
        ident = (c.person, c.role, c.key)
        if c.key not in movie_map or ident in seen:
            dropped["credits"] += 1
            continue
        seen.add(ident)
        credit_list.append(c)

    attr_list = []
    for a in attributes:
        if a.key not in movie_map:
            dropped["attributes"] += 1
        else:
            attr_list.append(a)

    return MovieStore(
        movies=MappingProxyType(movie_map),
        ratings=MappingProxyType(rating_map),
        credits=tuple(credit_list),
        attributes=tuple(attr_list),
        finances=MappingProxyType(finance_map),
        dropped=MappingProxyType(dropped),
    )


def _money_cell(m: Money | None) -> str:
    return "" if m is None else f"{m.currency} {m.amount}"


def _money_from_cell(cell: str) -> Money | None:
    return extract_amount(cell) if cell else None


def write_store(store: MovieStore, directory) -> Path:
    """Write one TSV per table. Keyed tables are sorted; credits and
    attributes keep input order (budget precedence depends on it)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rows = {
        "movies": [[m.key.render(), m.kind] for _, m in sorted(store.movies.items())],
        "ratings": [
            [r.key.render(), str(r.votes), f"{r.rating:.1f}"] for _, r in sorted(store.ratings.items())
        ],
        "credits": [[c.person, c.role, c.key.render()] for c in store.credits],
        "attributes": [[a.key.render(), a.kind, a.value] for a in store.attributes],
        "finances": [
            [f.key.render()] + [_money_cell(getattr(f, n)) for n in _COLUMNS["finances"][1:]]
            for _, f in sorted(store.finances.items())
        ],
    }
    for name in STORE_TABLES:
        with open(directory / f"{name}.tsv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
            writer.writerow(_COLUMNS[name])
            writer.writerows(rows[name])
    return directory


def read_store(directory) -> MovieStore:
    directory = Path(directory)
    tables = {}
    for name in STORE_TABLES:
        path = directory / f"{name}.tsv"
        if not path.exists():
            raise FormatError(f"store table missing: {path}")
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh, delimiter="\t")
            header = next(reader, None)
            if header != _COLUMNS[name]:
                raise FormatError(f"{path}: unexpected header {header}")
            tables[name] = list(reader)
    try:
        return build_store(
            movies=[MovieRecord(TitleKey.parse(k), kind) for k, kind in tables["movies"]],
            ratings=[RatingRecord(TitleKey.parse(k), int(v), float(r)) for k, v, r in tables["ratings"]],
            credits=[CreditRecord(p, role, TitleKey.parse(k)) for p, role, k in tables["credits"]],
            attributes=[AttributeRecord(TitleKey.parse(k), kind, v) for k, kind, v in tables["attributes"]],
            finances=[
                FinanceRecord(TitleKey.parse(k), *(_money_from_cell(c) for c in cells))
                for k, *cells in tables["finances"]
            ],
        )
    except ValueError as exc:
        raise FormatError(f"{directory}: corrupt store table: {exc}") from exc
