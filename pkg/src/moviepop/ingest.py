"""Parsers for IMDB-style plain-text list files and the box-office CSV feed.

Each parser is a pure function of its input text and returns a
:class:`ParseResult` carrying the records together with the number of
candidate lines seen and the number skipped as malformed, so that
``len(records) + skipped == candidates`` always holds.

Grammar summary (TAB or runs of spaces separate fields, ``#`` starts a
comment line)::

    movies      Title (YYYY[/II]) [(TV)|(V)|(VG)|{(mini)}] [YYYY[-YYYY]]
    ratings     <votes> <rating> Title (YYYY)
    credits     Person<TAB>Title (YYYY)
                <TAB>Title (YYYY)            continuation, blank line ends block
    countries   Title (YYYY)<TAB>USA
    business    MV: Title (YYYY)
                BT: USD 10,000,000 (estimated)
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Generic, Iterable, Iterator, TextIO, TypeVar

from .errors import ExtractionError, FormatError, IngestError

YEAR_MIN, YEAR_MAX = 1870, 2100
MALFORMED_LIMIT = 0.5

MOVIE_KINDS = ("movie", "tv-series", "tv-movie", "video", "video-game", "mini-series")
CREDIT_ROLES = ("director", "actor", "actress")
ATTRIBUTE_KINDS = ("country", "language", "budget-line")
BOXOFFICE_HEADER = ["title", "year", "budget", "domestic", "foreign", "worldwide"]

_KEY_RE = re.compile(
    r"(?P<title>\S.*?) \((?P<year>\d{4}|\?{4})(?:/(?P<roman>[IVXLCDM]+))?\)"
)
_SUFFIX_KINDS = {"(TV)": "tv-movie", "(V)": "video", "(VG)": "video-game"}
_MINI_MARKERS = {"(mini)", "{(mini)}"}
_YEAR_COLUMN_RE = re.compile(r"\d{4}(?:-(?:\d{4}|\?{4}))?|\?{4}")
_RATING_RE = re.compile(r"\d{1,2}\.\d")
_AMOUNT_RE = re.compile(r"\b([A-Z]{3})\s*(\d[\d,]*)")
_SEPARATORS = re.compile(r"\t+| {2,}")
_TAG_RE = re.compile(r"([A-Z]{2}):\s?(.*)")


@total_ordering
@dataclass(frozen=True)
class TitleKey:
    """``Title (YYYY)`` or ``Title (YYYY/II)``; ``year=None`` renders ``????``."""

    title: str
    year: int | None
    roman: str | None = None

    def __post_init__(self):
        if not self.title or self.title != self.title.strip():
            raise ValueError(f"bad title {self.title!r}")
        if self.year is not None and not YEAR_MIN <= self.year <= YEAR_MAX:
            raise ValueError(f"year {self.year} outside [{YEAR_MIN}, {YEAR_MAX}]")

    def render(self) -> str:
        year = "????" if self.year is None else f"{self.year:04d}"
        if self.roman:
            year = f"{year}/{self.roman}"
        return f"{self.title} ({year})"

    __str__ = render

    def __lt__(self, other):
        if not isinstance(other, TitleKey):
            return NotImplemented
        return self.render() < other.render()

    @classmethod
    def parse(cls, text: str) -> "TitleKey":
        key, rest = split_title_key(text.strip())
        if rest:
            raise ValueError(f"trailing text after title key: {rest!r}")
        return key


def split_title_key(text: str) -> tuple[TitleKey, str]:
    """Parse a title key at the start of ``text``; return it with the remainder."""
    m = _KEY_RE.match(text)
    if m is None:
        raise ValueError(f"no title key in {text!r}")
    year = None if m["year"] == "????" else int(m["year"])
    key = TitleKey(m["title"], year, m["roman"])
    return key, text[m.end():].strip()


@dataclass(frozen=True)
class MovieRecord:
    key: TitleKey
    kind: str = "movie"


@dataclass(frozen=True)
class RatingRecord:
    key: TitleKey
    votes: int
    rating: float


@dataclass(frozen=True)
class CreditRecord:
    person: str
    role: str
    key: TitleKey


@dataclass(frozen=True)
class AttributeRecord:
    key: TitleKey
    kind: str
    value: str


@dataclass(frozen=True)
class Money:
    amount: int
    currency: str = "USD"

    def __post_init__(self):
        if self.amount < 0:
            raise ValueError("negative amount")
        if len(self.currency) != 3 or not self.currency.isalpha() or not self.currency.isupper():
            raise ValueError(f"bad currency code {self.currency!r}")

    def render(self) -> str:
        return f"{self.currency} {self.amount:,}"

    __str__ = render


@dataclass(frozen=True)
class FinanceRecord:
    key: TitleKey
    budget: Money | None = None
    domestic: Money | None = None
    foreign: Money | None = None
    worldwide: Money | None = None

    def __post_init__(self):
        d, f, w = self.domestic, self.foreign, self.worldwide
        if d and f and w and d.currency == f.currency == w.currency:
            if w.amount < max(d.amount, f.amount):
                raise ValueError(f"{self.key}: worldwide below domestic/foreign")


R = TypeVar("R")


@dataclass
class ParseResult(Generic[R]):
    records: list[R] = field(default_factory=list)
    candidates: int = 0
    skipped: int = 0

    def __iter__(self) -> Iterator[R]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def _skip(self):
        self.candidates += 1
        self.skipped += 1

    def _keep(self, record: R):
        self.candidates += 1
        self.records.append(record)

    def _check(self, what: str) -> "ParseResult[R]":
        if self.candidates and self.skipped / self.candidates > MALFORMED_LIMIT:
            raise FormatError(
                f"{what}: {self.skipped} of {self.candidates} lines malformed; wrong file?"
            )
        return self


def _read_lines(source: str | TextIO | Iterable[str]) -> list[str]:
    try:
        if isinstance(source, str):
            text = source
        elif hasattr(source, "read"):
            text = source.read()
        else:
            text = "".join(source)
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestError(f"cannot read input: {exc}") from exc
    if not isinstance(text, str):
        raise IngestError("input stream must yield text, not bytes")
    return text.splitlines()


def _is_comment(line: str) -> bool:
    return line.lstrip().startswith("#")


def parse_movies(list_text) -> ParseResult[MovieRecord]:
    result: ParseResult[MovieRecord] = ParseResult()
    for line in _read_lines(list_text):
        if not line.strip() or _is_comment(line):
            continue
        try:
            key, rest = split_title_key(line.strip())
        except ValueError:
            result._skip()
            continue
        kind = _movie_kind(key, rest.split())
        if kind is None:
            result._skip()
        else:
            result._keep(MovieRecord(key, kind))
    return result._check("movies list")


def _movie_kind(key: TitleKey, markers: list[str]) -> str | None:
    suffix = None
    mini = False
    for tok in markers:
        if tok in _SUFFIX_KINDS and suffix is None:
            suffix = _SUFFIX_KINDS[tok]
        elif tok in _MINI_MARKERS:
            mini = True
        elif _YEAR_COLUMN_RE.fullmatch(tok):
            continue
        else:
            return None
    if mini:
        return "mini-series"
    if key.title.startswith('"') and key.title.endswith('"') and len(key.title) > 1:
        return "tv-series"
    return suffix or "movie"


def parse_ratings(list_text) -> ParseResult[RatingRecord]:
    result: ParseResult[RatingRecord] = ParseResult()
    for line in _read_lines(list_text):
        if not line.strip() or _is_comment(line):
            continue
        parts = line.split(None, 2)
        if len(parts) < 3 or not parts[0].isdigit() or not _RATING_RE.fullmatch(parts[1]):
            result._skip()
            continue
        rating = float(parts[1])
        if not 1.0 <= rating <= 10.0:
            result._skip()
            continue
        try:
            key, _ = split_title_key(parts[2].strip())
        except ValueError:
            result._skip()
            continue
        result._keep(RatingRecord(key, int(parts[0]), rating))
    return result._check("ratings list")


def parse_credits(list_text, role: str) -> ParseResult[CreditRecord]:
    if role not in CREDIT_ROLES:
        raise ValueError(f"unknown credit role {role!r}")
    result: ParseResult[CreditRecord] = ParseResult()
    person = None
    for lineno, line in enumerate(_read_lines(list_text), 1):
        if not line.strip():
            person = None
            continue
        if _is_comment(line):
            continue
        if line[0] in " \t":
            if person is None:
                raise FormatError(f"line {lineno}: continuation line outside a person block")
            title_text = line.strip()
        else:
            fields = line.split("\t", 1)
            if len(fields) != 2 or not fields[0].strip():
                person = None
                result._skip()
                continue
            person = fields[0].strip()
            title_text = fields[1].strip()
        try:
            key, _ = split_title_key(title_text)
        except ValueError:
            result._skip()
            continue
        result._keep(CreditRecord(person, role, key))
    return result._check(f"{role} credits list")


def parse_attributes(list_text, kind: str) -> ParseResult[AttributeRecord]:
    if kind not in ATTRIBUTE_KINDS:
        raise ValueError(f"unknown attribute kind {kind!r}")
    if kind == "budget-line":
        return _parse_business(list_text)
    result: ParseResult[AttributeRecord] = ParseResult()
    for line in _read_lines(list_text):
        if not line.strip() or _is_comment(line):
            continue
        if "\t" not in line:
            result._skip()
            continue
        key_text, value = line.split("\t", 1)
        value = value.strip()
        try:
            key = TitleKey.parse(key_text)
        except ValueError:
            result._skip()
            continue
        if not value:
            result._skip()
            continue
        result._keep(AttributeRecord(key, kind, value))
    return result._check(f"{kind} list")


def _parse_business(list_text) -> ParseResult[AttributeRecord]:
    # Only BT lines are candidates; MV opens a block, other tags are ignored.
    result: ParseResult[AttributeRecord] = ParseResult()
    current = None
    for line in _read_lines(list_text):
        stripped = line.strip()
        if not stripped or _is_comment(line) or set(stripped) <= {"-", "="}:
            continue
        m = _TAG_RE.fullmatch(stripped)
        if m is None:
            result._skip()
            continue
        tag, body = m.groups()
        if tag == "MV":
            try:
                current = TitleKey.parse(body)
            except ValueError:
                current = None
        elif tag == "BT":
            if current is None or not body.strip():
                result._skip()
            else:
                result._keep(AttributeRecord(current, "budget-line", body.strip()))
    return result._check("business list")


def extract_amount(raw: str) -> Money:
    """``"USD 102,000,000 (estimated)"`` -> ``Money(102000000, "USD")``."""
    m = _AMOUNT_RE.search(raw)
    if m is None:
        raise ExtractionError(f"no currency amount in {raw!r}")
    return Money(int(m[2].replace(",", "")), m[1])


def parse_boxoffice_csv(csv_text) -> ParseResult[FinanceRecord]:
    lines = _read_lines(csv_text)
    rows = csv.reader(io.StringIO("\n".join(lines)))
    header = next(rows, None)
    if header is None or [h.strip().lower() for h in header] != BOXOFFICE_HEADER:
        raise FormatError(f"box-office CSV header must be {','.join(BOXOFFICE_HEADER)}")
    result: ParseResult[FinanceRecord] = ParseResult()
    for lineno, row in enumerate(rows, 2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) != len(BOXOFFICE_HEADER):
            raise FormatError(f"line {lineno}: expected 6 columns, got {len(row)}")
        title, year, *amounts = (cell.strip() for cell in row)
        try:
            key = TitleKey(title, int(year) if year not in ("", "????") else None)
            money = [Money(int(a), "USD") if a else None for a in amounts]
            result._keep(FinanceRecord(key, *money))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    return result
