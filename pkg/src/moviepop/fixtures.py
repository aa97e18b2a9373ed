"""Seeded generator for a small IMDB-style list-file corpus.

The corpus is synthetic: movie ratings are driven mostly by a latent
director quality and only weakly by budget, and box-office earnings scale
with budget. A copy generated with the default seed ships in
``moviepop/data/corpus`` and can be found with :func:`bundled_corpus`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

DEFAULT_SEED = 2011

_ADJECTIVES = (
    "Silent", "Broken", "Golden", "Last", "Hidden", "Crimson", "Electric", "Lonely", "Frozen",
    "Burning", "Secret", "Wild", "Hollow", "Midnight", "Paper", "Iron", "Velvet", "Distant",
    "Savage", "Quiet", "Lucky", "Twisted", "Bright", "Dark",
)
_NOUNS = (
    "River", "Empire", "Garden", "Signal", "Harbor", "Witness", "Machine", "Summer", "Frontier",
    "Orchard", "Protocol", "Kingdom", "Mirror", "Highway", "Circus", "Verdict", "Horizon",
    "Lantern", "Promise", "Station", "Tide", "Canyon", "Diary", "Engine",
)
_FIRST_M = ("John", "Michael", "David", "James", "Robert", "Daniel", "Paul", "Mark", "Steven",
            "Thomas", "Peter", "Kevin", "Brian", "Jason", "Eric", "Adam", "Sam", "Luke")
_FIRST_F = ("Mary", "Anna", "Laura", "Sarah", "Emma", "Julia", "Claire", "Rachel", "Nina",
            "Grace", "Helen", "Kate", "Lucy", "Olivia", "Ruth", "Sofia", "Vera", "Zoe")
_LAST = ("Smith", "Jones", "Brown", "Miller", "Davis", "Wilson", "Moore", "Taylor", "Clark",
         "Lewis", "Walker", "Hall", "Young", "King", "Wright", "Scott", "Green", "Baker",
         "Adams", "Nelson", "Hill", "Campbell", "Mitchell", "Roberts", "Carter", "Turner")

CORPUS_FILES = {
    "movies": "movies.list",
    "ratings": "ratings.list",
    "directors": "directors.list",
    "actors": "actors.list",
    "actresses": "actresses.list",
    "countries": "countries.list",
    "languages": "language.list",
    "business": "business.list",
    "boxoffice": "boxoffice.csv",
}


@dataclass
class _Movie:
    key: str
    year: int
    kind_suffix: str = ""
    rating: float | None = None
    votes: int = 0
    countries: list[str] = field(default_factory=list)
    languages: list[str] = field(default_factory=list)
    budget_lines: list[str] = field(default_factory=list)
    directors: list[str] = field(default_factory=list)
    actors: list[str] = field(default_factory=list)
    actresses: list[str] = field(default_factory=list)
    boxoffice: tuple | None = None


def _people(rng, first, n, used):
    names = []
    while len(names) < n:
        name = f"{rng.choice(_LAST)}, {rng.choice(first)}"
        if name in used:
            name = f"{name} ({len(used) + 1})"
        used.add(name)
        names.append(name)
    return names


def generate_corpus(seed: int = DEFAULT_SEED, n_movies: int = 240) -> dict[str, str]:
    """Return ``{file name: text}`` for a complete corpus."""
    rng = np.random.default_rng(seed)
    used = set()
    directors = _people(rng, _FIRST_M + _FIRST_F, max(8, n_movies // 3), used)
    actors = _people(rng, _FIRST_M, max(12, n_movies // 2), used)
    actresses = _people(rng, _FIRST_F, max(10, n_movies // 3), used)

    # Director quality tiers chosen so every popularity class is populated.
    tiers = rng.choice(4, size=len(directors), p=[0.28, 0.36, 0.28, 0.08])
    centre = np.array([8.3, 6.2, 3.7, 1.8])
    quality = np.clip(centre[tiers] + rng.normal(0, 0.35, len(directors)), 1.2, 9.6)

    movies: list[_Movie] = []
    seen_keys = set()
    for i in range(n_movies):
        year = int(rng.integers(2001, 2011))
        title = f"{rng.choice(_ADJECTIVES)} {rng.choice(_NOUNS)}"
        key = f"{title} ({year})"
        if key in seen_keys:
            key = f"{title} ({year}/II)"
        if key in seen_keys:
            continue
        seen_keys.add(key)
        m = _Movie(key, year, countries=["USA"], languages=["English"])
        d = [int(rng.integers(len(directors)))]
        if rng.random() < 0.15:
            d.append(int(rng.integers(len(directors))))
        m.directors = sorted({directors[j] for j in d})
        m.actors = sorted({actors[j] for j in rng.choice(len(actors), size=int(rng.integers(1, 5)), replace=False)})
        m.actresses = sorted({actresses[j] for j in
                              rng.choice(len(actresses), size=int(rng.integers(0, 4)), replace=False)})
        log_budget = rng.normal(np.log(3e7), 0.9)
        budget = int(round(float(np.exp(np.clip(log_budget, np.log(5e5), np.log(2.5e8)))), -4))
        budget_z = (log_budget - np.log(3e7)) / 0.9
        q = float(np.mean([quality[j] for j in d]))
        rating = q + 0.15 * budget_z + rng.normal(0, 0.2)
        m.rating = float(np.clip(round(rating, 1), 1.0, 10.0))
        m.votes = int(np.clip(rng.lognormal(np.log(20000), 1.2), 1000, 900000))
        if rng.random() < 0.08:
            m.budget_lines = [f"EUR {budget:,}"]
        elif rng.random() < 0.1:
            m.budget_lines = [f"GBP {int(budget * 0.6):,}", f"USD {budget:,} (estimated)"]
        elif rng.random() < 0.05:
            m.budget_lines = []
        else:
            m.budget_lines = [f"USD {budget:,}" + (" (estimated)" if rng.random() < 0.3 else "")]
        if rng.random() < 0.9:
            domestic = int(budget * np.exp(rng.normal(0.1, 0.45)))
            foreign = int(budget * np.exp(rng.normal(-0.1, 0.5)))
            worldwide = domestic + foreign
            if rng.random() < 0.08:
                foreign, worldwide = None, None
            m.boxoffice = (budget, domestic, foreign, worldwide)
        movies.append(m)

    # Distractors that the filters must reject.
    extra = [
        _Movie("Godzilla (1998)", 1998, rating=5.4, votes=80000),
        _Movie("Old Harbor (2000)", 2000, rating=6.1, votes=5000),
        _Movie("Next Decade (2011)", 2011, rating=6.5, votes=4000),
        _Movie("Small Release (2005)", 2005, rating=7.0, votes=999),
        _Movie("Le Jardin Secret (2006)", 2006, rating=7.2, votes=3000),
        _Movie("London Tide (2007)", 2007, rating=6.8, votes=12000),
        _Movie('"Some Show" (2004)', 2004, rating=8.1, votes=30000),
        _Movie('"Long Story" (2008)', 2008, "{(mini)}", rating=7.9, votes=9000),
        _Movie("Straight to Disc (2005)", 2005, "(V)", rating=4.2, votes=1500),
        _Movie("Holiday Special (2003)", 2003, "(TV)", rating=5.5, votes=2000),
        _Movie("Pixel Quest (2009)", 2009, "(VG)", rating=8.0, votes=7000),
        _Movie("Lost Reel (????)", 0, rating=6.0, votes=1200),
    ]
    for m in extra:
        m.countries = ["USA"] if "London" not in m.key else ["UK"]
        m.languages = ["French"] if "Jardin" in m.key else ["English"]
        m.directors = [directors[int(rng.integers(len(directors)))]]
        m.actors = [actors[int(rng.integers(len(actors)))]]
        m.budget_lines = [f"USD {int(rng.integers(1, 90)) * 1_000_000:,}"]
    movies.extend(extra)
    return _render(movies, seed)


def _render(movies: list[_Movie], seed: int) -> dict[str, str]:
    header = f"# synthetic corpus, seed {seed}\n"
    by_key = sorted(movies, key=lambda m: m.key)

    lines = [header]
    for m in by_key:
        suffix = f" {m.kind_suffix}" if m.kind_suffix else ""
        year_col = str(m.year) if m.year else "????"
        lines.append(f"{m.key}{suffix}\t\t\t{year_col}\n")
    lines.append("this line is not a title\n")
    movies_txt = "".join(lines)

    ratings_txt = header + "".join(
        f"{m.votes:>8}  {m.rating:.1f}  {m.key}{' ' + m.kind_suffix if m.kind_suffix else ''}\n"
        for m in by_key if m.rating is not None
    ) + "    1200   7.1  Unlisted Movie (2004)\n    oops  7.1  Broken Line (2004)\n"

    def credits(attr):
        people: dict[str, list[str]] = {}
        for m in by_key:
            for p in getattr(m, attr):
                people.setdefault(p, []).append(m.key)
        blocks = []
        for p in sorted(people):
            first, *rest = people[p]
            blocks.append(f"{p}\t\t\t{first}\n" + "".join(f"\t\t\t{k}\n" for k in rest))
        return header + "\n".join(blocks)

    countries_txt = header + "".join(f"{m.key}\t\t\t{c}\n" for m in by_key for c in m.countries)
    languages_txt = header + "".join(f"{m.key}\t\t\t{c}\n" for m in by_key for c in m.languages)

    biz = [header]
    for m in by_key:
        if not m.budget_lines:
            continue
        biz.append("-------------------------------------------------------------------------------\n")
        biz.append(f"MV: {m.key}\n\n")
        biz.extend(f"BT: {b}\n" for b in m.budget_lines)
        biz.append("\n")
    business_txt = "".join(biz)

    def cell(v):
        return "" if v is None else str(v)

    box = ["title,year,budget,domestic,foreign,worldwide\n"]
    for m in by_key:
        if m.boxoffice is None or "/" in m.key:
            continue
        title = m.key[: m.key.rindex(" (")]
        box.append(",".join([title, str(m.year)] + [cell(v) for v in m.boxoffice]) + "\n")
    box.append("Phantom Picture,2006,1000000,2000000,1000000,3000000\n")

    return {
        CORPUS_FILES["movies"]: movies_txt,
        CORPUS_FILES["ratings"]: ratings_txt,
        CORPUS_FILES["directors"]: credits("directors"),
        CORPUS_FILES["actors"]: credits("actors"),
        CORPUS_FILES["actresses"]: credits("actresses"),
        CORPUS_FILES["countries"]: countries_txt,
        CORPUS_FILES["languages"]: languages_txt,
        CORPUS_FILES["business"]: business_txt,
        CORPUS_FILES["boxoffice"]: "".join(box),
        "corpus.ini": _config_text(),
    }


def _config_text() -> str:
    lines = ["# Run configuration for the bundled synthetic corpus; paths are relative to this file."]
    lines += [f"{name} = {fname}" for name, fname in CORPUS_FILES.items()]
    return "\n".join(lines) + "\n"


def write_corpus(directory, seed: int = DEFAULT_SEED, n_movies: int = 240) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in generate_corpus(seed, n_movies).items():
        (directory / name).write_text(text, encoding="utf-8")
    return directory


def bundled_corpus() -> Path:
    """Directory of the corpus shipped with the package."""
    return Path(str(resources.files("moviepop") / "data" / "corpus"))
