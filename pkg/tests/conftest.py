import numpy as np
import pytest

from moviepop.dataset import Dataset


def random_dataset(rng, max_n=16, max_features=4, missing=0.0, levels=5):
    """Small all-numeric dataset with coarse values so ties are common."""
    n = int(rng.integers(2, max_n + 1))
    m = int(rng.integers(1, max_features + 1))
    X = rng.integers(0, levels, size=(n, m)).astype(float)
    if missing:
        X[rng.random((n, m)) < missing] = np.nan
    y = rng.integers(0, int(rng.integers(1, 5)), size=n)
    return Dataset.from_arrays(X, y)


def rows_of(dataset):
    return [list(inst.values) for inst in dataset.instances]


@pytest.fixture
def separable():
    """Twenty instances cleanly separated by feature 0; feature 1 is noise."""
    rng = np.random.default_rng(7)
    y = np.repeat(np.arange(4), 5)
    x0 = y * 10.0 + rng.integers(0, 5, size=20)
    x1 = rng.integers(0, 3, size=20).astype(float)
    return Dataset.from_arrays(np.column_stack([x0, x1]), y, ["signal", "noise"])


def make_store(specs):
    """Store from a list of movie dicts with keys ``title``, ``year`` and any of
    ``votes``, ``rating``, ``country``, ``language``, ``budget`` (list of raw
    budget lines), ``directors``, ``actors``, ``actresses``, ``finance``
    (budget, domestic, foreign, worldwide; ``None`` for missing)."""
    from moviepop.ingest import (AttributeRecord, CreditRecord, FinanceRecord, Money,
                                 MovieRecord, RatingRecord, TitleKey)
    from moviepop.store import build_store

    movies, ratings, credits, attrs, fins = [], [], [], [], []
    for s in specs:
        key = TitleKey(s["title"], s["year"])
        movies.append(MovieRecord(key, s.get("kind", "movie")))
        if "rating" in s:
            ratings.append(RatingRecord(key, s.get("votes", 5000), s["rating"]))
        for kind, field_ in (("country", "country"), ("language", "language")):
            attrs.append(AttributeRecord(key, kind, s.get(field_, {"country": "USA", "language": "English"}[kind])))
        for line in s.get("budget", ["USD 1,000,000"]):
            attrs.append(AttributeRecord(key, "budget-line", line))
        for role, field_ in (("director", "directors"), ("actor", "actors"), ("actress", "actresses")):
            credits.extend(CreditRecord(p, role, key) for p in s.get(field_, []))
        if "finance" in s:
            fins.append(FinanceRecord(key, *(None if v is None else Money(v) for v in s["finance"])))
    return build_store(movies, ratings, credits, attrs, fins)


def balance_fixture(per_step=12, steps=range(50, 75), extra=()):
    """Average-class rows: ``per_step`` instances at each rating step (tenths)
    with distinct vote counts, plus ``extra`` (rating, votes) rows."""
    from moviepop.dataset import Column, Instance, assign_class
    from moviepop.ingest import TitleKey

    rows = [(t / 10, 1000 + 7 * i + t) for t in steps for i in range(per_step)] + list(extra)
    cols = (Column("title", "identifier"), Column("votes", "excluded"), Column("rating", "excluded"))
    insts = []
    for n, (rating, votes) in enumerate(rows):
        key = TitleKey(f"Movie {n}", 2005)
        insts.append(Instance((key.render(), votes, rating), assign_class(rating), key))
    return Dataset(cols, tuple(insts))


PIPELINE = (
    ["ingest"],
    ["build", "--dataset", "1"],
    ["evaluate", "--learner", "c45"],
    ["evaluate", "--learner", "part"],
    ["rank"],
    ["build", "--dataset", "2"],
    ["correlate"],
)


def run_pipeline(out, config=None):
    """Run every pipeline step through the CLI entry point; return exit codes."""
    from moviepop.cli import main
    from moviepop.fixtures import bundled_corpus

    config = config or bundled_corpus() / "corpus.ini"
    return [main(step + ["--config", str(config), "--out", str(out)]) for step in PIPELINE]


def snapshot(directory):
    return {str(p.relative_to(directory)): p.read_bytes() for p in sorted(directory.rglob("*")) if p.is_file()}


ACCEPTANCE_RESULTS = {}


def pytest_runtest_makereport(item, call):
    crit = item.get_closest_marker("criterion")
    if crit is None or call.when != "call":
        return
    number, title, limit = crit.args
    ok = call.excinfo is None and call.duration < limit
    detail = f"{call.duration:.2f}s (limit {limit:g}s)"
    if call.excinfo is not None:
        detail += f"; {call.excinfo.typename}: {str(call.excinfo.value).splitlines()[0][:120]}"
    ACCEPTANCE_RESULTS[number] = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[n])
